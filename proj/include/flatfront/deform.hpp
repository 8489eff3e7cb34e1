#pragma once

#include "flatfront/front.hpp"
#include "flatfront/lift.hpp"
#include "flatfront/transport.hpp"

namespace flatfront {

struct DeformOptions {
  int substeps = 2;  // frame-integration substeps (both pipelines)
  bool with_pipeline_b = true;
};

/// Deformed flat front at parameter lambda, computed two independent ways:
///   A (reduced):  integrate the frame system at lambda, read the front off
///                 the frame fields.
///   B (ambient):  transport h±(lambda) = -lambda(p±q) + (1-lambda)(t±f) by
///                 T(lambda), rotate the conserved directions onto q±,
///                 project to {q+,q-}^perp == R31, normalize by the branch
///                 rule, align the base frame with pipeline A's.
/// Their pointwise agreement is the structural cross-check of the whole
/// deformation machinery.
struct DeformResult {
  FrontGrid front;  // pipeline A output (the product)
  DeformationState state;
  double pipeline_agreement = 0.0;  // max pointwise |A - B| over f and t
  double conservation = 0.0;        // drift of T p±
};

/// Throws DegenerateParameter at lambda = 1/2.
DeformResult deform_front(const HarmonicPotential& phi, const GridDomain& dom, double lambda,
                          const DeformOptions& opts = {});

/// Base-front artifacts shared across a lambda sweep: the lambda = 0 frame
/// and front plus the connection sampled on the refined grid.
struct BaseBundle {
  GridDomain dom;
  FrameGrid frame0;
  FrontGrid front0;
  ConnectionFormGrid tau;
};
BaseBundle make_base_bundle(const HarmonicPotential& phi, const GridDomain& dom,
                            const DeformOptions& opts = {});
DeformResult deform_with_base(const BaseBundle& base, const HarmonicPotential& phi,
                              double lambda, const DeformOptions& opts = {});

/// Constant O(4,2) element mapping the conserved null directions P± to
/// multiples of q± (completed on the orthogonal complement).
Mat6 build_base_rotation(const SigVec& pplus, const SigVec& pminus);

}  // namespace flatfront
