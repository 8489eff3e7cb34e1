#pragma once

#include "flatfront/front.hpp"
#include "flatfront/grid.hpp"
#include "flatfront/lift.hpp"
#include "flatfront/linalg.hpp"

namespace flatfront {

struct TransportOptions {
  double divergence_ceiling = 1e-3;  // hard cap on ||T^t eta T - eta||
};

/// Calapso transport T with dT = T (lambda tau), T = identity at the base
/// point, integrated along the base row then up/down the columns.
///
/// The connection may be sampled on the transport grid itself or on a
/// refinement of it (factor 2 or 4 per axis); refined samples give the
/// one-step method exact mid-edge values, otherwise midpoints are
/// interpolated from the available samples.
struct DeformationState {
  double lambda = 0.0;
  double mu2 = 1.0;  // 1 - 2 lambda
  bool supercritical = false;
  GridDomain dom;
  Grid<Mat6> T;
  Mat6 base_rotation = Mat6::identity();
  double max_orthogonality_drift = 0.0;
};

DeformationState calapso_transport(const ConnectionFormGrid& tau, double lambda,
                                   const GridDomain& dom, const TransportOptions& opts = {});

/// Discrete holonomy: per plaquette, the four edge transports composed,
/// measured against the identity in Frobenius norm.
struct HolonomyResult {
  Grid<double> residual;
  double max_abs = 0.0;
};
HolonomyResult holonomy_residual(const ConnectionFormGrid& tau, double lambda,
                                 const GridDomain& dom);

/// Linear conserved quantities p±(lambda) = (1-lambda)(p±q) - lambda(t±f).
struct ConservedQuantityGrid {
  GridDomain dom;
  Grid<SigVec> pp, pm;  // R42
};
ConservedQuantityGrid conserved_quantity(const FrontGrid& front, double lambda);

/// Max over the grid of |T p±(lambda) - (T p±)(base)|, relative to the
/// base-value scale.  Zero analytically: d(T p±) = 0.
double conservation_drift(const DeformationState& state, const ConservedQuantityGrid& cq);

/// Gauge relation between the three transports:
///   T±(lambda) (1 + (lambda/2) s± ^ s∓) = T(lambda)
/// up to the constant right factor coming from starting T± at the identity;
/// that constant is removed before measuring.  Also checks the lemma that
/// T± and T act identically on the contact plane span{s+, s-} via principal
/// angles.
struct GaugeRelationResult {
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double max_principal_angle = 0.0;
};
GaugeRelationResult gauge_relation_residual(const DeformationState& state,
                                            const DeformationState& state_plus,
                                            const DeformationState& state_minus,
                                            const SphereCongruenceGrid& sc, double lambda);

}  // namespace flatfront
