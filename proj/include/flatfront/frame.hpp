#pragma once

#include "flatfront/grid.hpp"
#include "flatfront/potential.hpp"
#include "flatfront/sigvec.hpp"

namespace flatfront {

/// Canonical frame at the base point, shared by every lambda:
///   f0 = y0, t0 = y3, e1 = y1, e2 = y2, h± = t0 ± f0.
struct BaseFrame {
  SigVec f0, t0, e1, e2, hplus, hminus;
};

/// Throws DegenerateParameter for lambda == 1/2.
BaseFrame initial_frame(double lambda);

struct IntegrateOptions {
  int substeps = 2;             // RK4 substeps per grid step
  bool transposed_path = false; // integrate base column first, then rows
  bool reproject = false;       // project back onto the constraint manifold each step
};

/// Moving frame (e1, e2, h+, h-) of the deformation family at parameter
/// lambda, integrated over a grid.  Pointwise Gram matrix (the FrameGrid
/// invariants): |e1|^2 = |e2|^2 = 1, <e1,e2> = 0, |h±|^2 = 0, <h+,h-> = 2,
/// <ei,h±> = 0.
struct FrameGrid {
  GridDomain dom;
  double lambda = 0.0;
  Grid<SigVec> e1, e2, hp, hm;  // R31 vectors

  /// Max pointwise violation of the Gram invariants.
  double max_invariant_violation() const;
};

/// Integrate the frame system of the deformation family:
///   with mu = sqrt(|1-2 lambda|), eps = sign(1-2 lambda),
///   d h+ = eps mu e^{-phi} ( e1 du + e2 dv)
///   d h- =     mu e^{+phi} (-e1 du + e2 dv)
///   d e1 = (phi_v du - phi_u dv) e2 + (mu/2)(e^{phi} h+ - eps e^{-phi} h-) du
///   d e2 = (-phi_v du + phi_u dv) e1 - (mu/2)(e^{phi} h+ + eps e^{-phi} h-) dv
/// which preserves the FrameGrid Gram matrix exactly and is integrable iff
/// phi_uu + phi_vv = 0.  Classical RK4, base row first then columns
/// (transposed order under opts.transposed_path).
FrameGrid integrate_frame(const HarmonicPotential& phi, const GridDomain& dom, double lambda,
                          const IntegrateOptions& opts = {});

/// Far-corner disagreement between the two axis-ordered integration paths,
/// measured in plain coordinates.  Decays with the discretization exactly
/// when the system is integrable, i.e. when phi is harmonic.
double path_dependence_residual(const HarmonicPotential& phi, const GridDomain& dom,
                                double lambda, const IntegrateOptions& opts = {});

}  // namespace flatfront
