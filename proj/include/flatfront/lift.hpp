#pragma once

#include <vector>

#include "flatfront/front.hpp"
#include "flatfront/grid.hpp"
#include "flatfront/skew.hpp"

namespace flatfront {

/// Legendre lift: the contact element span{q + f, p + t} at every gridpoint
/// (s1 = q + f, s2 = p + t).
struct ContactGrid {
  GridDomain dom;
  Grid<ContactElement> elements;
};
ContactGrid legendre_lift(const FrontGrid& front, const AmbientSplit& split);

/// Curvature spheres with the Moutard-normalized lifts
///   s1 = cosh(phi)(p+t) + sinh(phi)(q+f),
///   s2 = sinh(phi)(p+t) + cosh(phi)(q+f),
/// and the isothermic pair s± = s1 ± s2 = e^{±phi}(p ± q + t ± f).
struct SphereCongruenceGrid {
  GridDomain dom;
  Grid<SigVec> s1, s2, sp, sm;
  // Finite-difference check of s1_u || s2 and s2_v || s1.
  double parallelism_residual = 0.0;
};
SphereCongruenceGrid curvature_spheres(const FrontGrid& front, const HarmonicPotential& phi);

struct ResidualGrid {
  Grid<double> r;
  double max_abs = 0.0;
  int skipped = 0;  // umbilic / gated-out samples
};

/// Central-difference evaluation of the surface invariant
///   (sqrt(E/G) k1_u / (k1 - k2))_v + (sqrt(G/E) k2_v / (k1 - k2))_u
/// over interior, non-umbilic points with min(sqrt E, sqrt G) > gate.
/// Refinement studies use a stricter gate so the evaluation region keeps a
/// uniform distance from the singular curve across levels.
ResidualGrid omega_residual(const Grid<double>& E, const Grid<double>& G,
                            const Grid<double>& k1, const Grid<double>& k2,
                            const GridDomain& dom, const Grid<uint8_t>* exclude = nullptr,
                            double gate = kFlatnessGate);

/// Size of the component of s_uv transverse to s (coordinatewise orthogonal
/// complement; the ambient metric is degenerate on null lifts), normalized by
/// the grid-wide scale of s_uv.  The pointwise ratio would be 0/0 noise along
/// the curves where the Moutard factor vanishes.
struct MoutardResiduals {
  ResidualGrid plus, minus;
};
MoutardResiduals moutard_residual(const SphereCongruenceGrid& sc);
ResidualGrid moutard_residual_single(const Grid<SigVec>& s, const GridDomain& dom);

/// Connection form as sums of plane rotations per coordinate direction.
struct ConnectionFormGrid {
  GridDomain dom;
  Grid<std::vector<SkewEndo>> tau_u, tau_v;

  Mat6 mat_u(int i, int j) const;
  Mat6 mat_v(int i, int j) const;
};

/// tau = -(p+t) ^ dt + (q+f) ^ df with the differentials taken by central
/// differences of the front samples.
ConnectionFormGrid tau_form(const FrontGrid& front);

/// Same form evaluated through the structure equations
///   df = cosh(phi) e1 du - sinh(phi) e2 dv,
///   dt = -sinh(phi) e1 du + cosh(phi) e2 dv,
/// exact in the frame samples; usable on refined grids so one-step methods
/// can sample mid-edge values.  Requires a lambda = 0 frame.
ConnectionFormGrid tau_form_exact(const FrameGrid& frame, const HarmonicPotential& phi);

/// tau± = s± ^ star d s± with star du = du, star dv = -dv.
struct TauPair {
  ConnectionFormGrid plus, minus;
};
TauPair tau_pm_form(const SphereCongruenceGrid& sc);
TauPair tau_pm_form_exact(const FrameGrid& frame, const HarmonicPotential& phi);

/// Probe mask for refinement studies: points min(sqrt E, sqrt G) > gate whose
/// 3x3 neighborhood also passes, at least `margin` cells from the boundary.
/// Evaluating residual maxima on the probe points of the coarsest level keeps
/// the evaluation set fixed across refinements, so the measured orders are
/// those of the operator and not of the moving region edge.
Grid<uint8_t> refinement_probe_mask(const FrontGrid& front, double gate, int margin);

/// Max of |values| over the probe points of a coarser nested grid; `values`
/// lives on the factor-2^k refinement of the probe's grid.
double subsampled_max(const Grid<double>& values, int factor, const Grid<uint8_t>& probe);

/// Max deviation of tau± + 1/2 d(s± ^ s∓) from tau over interior points,
/// relative to the local scale of tau.
double tau_alignment_residual(const ConnectionFormGrid& tau, const TauPair& taupm,
                              const SphereCongruenceGrid& sc);

/// Invert the lift: recover (f, t) from the sphere congruences and the two
/// fixed spheres.  q± are rescaled internally so <q+,q-> = -2; gridpoints
/// where s± hits the point sphere complex are flagged singular.
FrontGrid reconstruct_front(const SphereCongruenceGrid& sc, SigVec qplus, SigVec qminus);

}  // namespace flatfront
