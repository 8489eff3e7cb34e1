#pragma once

#include <cstdint>

#include "flatfront/frame.hpp"
#include "flatfront/grid.hpp"
#include "flatfront/potential.hpp"

namespace flatfront {

// Singularity threshold: flag where the front fails to immerse
// (min(sqrt E, sqrt G) below this).  Fronts stay Legendre-regular there;
// only the projection to H^3 degenerates.
constexpr double kSingularEps = 1e-3;

// Region gate used by the flatness checks: keep points with
// min(sqrt E, sqrt G) above this.
constexpr double kFlatnessGate = 0.1;

/// Flat front sampled over a grid: position f on the upper hyperboloid,
/// unit normal t, diagonal metric coefficients and principal curvatures.
struct FrontGrid {
  GridDomain dom;
  double lambda = 0.0;
  Grid<SigVec> f, t;  // R31
  Grid<double> E, G, k1, k2;
  Grid<uint8_t> singular;
  // Tangent frame carried along when the front came from integrate_frame.
  Grid<SigVec> e1, e2;
  bool has_frame = false;
};

/// f = (h+ - h-)/2, t = (h+ + h-)/2; metric and curvatures filled by
/// finite differences.
FrontGrid front_from_frame(const FrameGrid& fg);

/// Fill E, G, k1, k2 and the singular flags from finite differences of f, t:
/// E = <f_u,f_u>, G = <f_v,f_v>, k1 = -<t_u,f_u>/E, k2 = -<t_v,f_v>/G.
///
/// fd_order selects the stencil family (2 or 4).  The quotient for k2 is
/// amplified by 1/G, so meeting the stated k1 k2 = 1 tolerance up to the
/// sqrt(G) = 0.1 contour needs the fourth-order stencils; the second-order
/// family remains available as the estimator whose convergence order the
/// validation suite pins at two.
void metric_and_curvatures(FrontGrid& front, int fd_order = 4);

/// Pointwise match of the lambda = 0 front against the closed forms
/// E = cosh^2 phi, G = sinh^2 phi, k1 = tanh phi, k2 = coth phi
/// (k2 only where the flatness gate holds).  Max absolute deviations.
struct MetricDeviation {
  double e_dev = 0.0, g_dev = 0.0, k1_dev = 0.0, k2_dev = 0.0;
};
MetricDeviation metric_reference_deviation(const FrontGrid& front, const HarmonicPotential& phi);

/// Front at constant normal geodesic distance t_param:
/// f_t = cosh(t) f + sinh(t) t, t_t = sinh(t) f + cosh(t) t.
FrontGrid parallel_front(const FrontGrid& front, double t_param);

/// Max violation of |f|^2 = -1, |t|^2 = 1, <f,t> = 0 over the grid.
double max_front_invariant_violation(const FrontGrid& front);

/// Max |k1 k2 - 1| over gated (non-degenerate) points.
double flatness_deviation(const FrontGrid& front);

}  // namespace flatfront
