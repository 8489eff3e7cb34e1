#include "flatfront/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flatfront {

namespace {

// Sampler for lambda * tau_dir along one grid line, able to produce mid-edge
// values either from refined samples or by interpolation.
struct TauSampler {
  const ConnectionFormGrid* tau;
  double lambda;
  int refine = 1;  // tau resolution factor relative to the transport grid

  // Connection at transport-grid point (i, j), direction dir (0: u, 1: v).
  Mat6 at(int i, int j, int dir) const {
    return lambda * (dir == 0 ? tau->mat_u(i * refine, j * refine)
                              : tau->mat_v(i * refine, j * refine));
  }

  // Connection at the midpoint of the edge (i,j) -> (i+di, j+dj), where
  // (di, dj) = (±1, 0) or (0, ±1).
  Mat6 mid(int i, int j, int di, int dj, int dir) const {
    if (refine % 2 == 0) {
      const int fi = i * refine + di * (refine / 2);
      const int fj = j * refine + dj * (refine / 2);
      return lambda * (dir == 0 ? tau->mat_u(fi, fj) : tau->mat_v(fi, fj));
    }
    // Interpolate the matrix samples along the edge direction.
    auto sample = [&](int k) {
      const int si = i + di * k, sj = j + dj * k;
      return dir == 0 ? tau->mat_u(si, sj) : tau->mat_v(si, sj);
    };
    const int n = di != 0 ? tau->dom.nu : tau->dom.nv;
    const int pos = di != 0 ? i : j;
    const int step = di + dj;  // ±1
    const bool room_behind = pos - step >= 0 && pos - step < n;
    const bool room_ahead2 = pos + 2 * step >= 0 && pos + 2 * step < n;
    if (room_behind && room_ahead2)
      return lambda * ((1.0 / 16.0) *
                       (-1.0 * sample(-1) + 9.0 * sample(0) + 9.0 * sample(1) - sample(2)));
    if (room_ahead2)
      return lambda * ((1.0 / 8.0) * (3.0 * sample(0) + 6.0 * sample(1) - sample(2)));
    if (room_behind)
      return lambda * ((1.0 / 8.0) * (3.0 * sample(1) + 6.0 * sample(0) - sample(-1)));
    return lambda * (0.5 * (sample(0) + sample(1)));
  }
};

// One RK4 increment S for dS = S M over an edge of signed length h:
// T_next = T_cur * S.
Mat6 edge_increment(const TauSampler& ts, int i, int j, int di, int dj, double h) {
  const int dir = di != 0 ? 0 : 1;
  const Mat6 m0 = ts.at(i, j, dir);
  const Mat6 mm = ts.mid(i, j, di, dj, dir);
  const Mat6 m1 = ts.at(i + di, j + dj, dir);

  const Mat6 eye = Mat6::identity();
  const Mat6 k1 = m0;
  const Mat6 k2 = (eye + (h / 2.0) * k1) * mm;
  const Mat6 k3 = (eye + (h / 2.0) * k2) * mm;
  const Mat6 k4 = (eye + h * k3) * m1;
  return eye + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

int refinement_factor(const GridDomain& tau_dom, const GridDomain& dom) {
  auto factor_1d = [](int n_tau, int n) -> int {
    if (n == 1) return 1;
    if ((n_tau - 1) % (n - 1) != 0) return 0;
    return (n_tau - 1) / (n - 1);
  };
  const int ru = factor_1d(tau_dom.nu, dom.nu);
  const int rv = factor_1d(tau_dom.nv, dom.nv);
  const int r = std::max(ru, rv);
  if (ru == 0 || rv == 0 || (dom.nu > 1 && dom.nv > 1 && ru != rv) ||
      (r != 1 && r != 2 && r != 4))
    fail(Errc::DegenerateConfiguration,
         "calapso_transport: connection grid is not a 1/2/4-fold refinement of the domain");
  return r;
}

}  // namespace

DeformationState calapso_transport(const ConnectionFormGrid& tau, double lambda,
                                   const GridDomain& dom, const TransportOptions& opts) {
  dom.validate();
  TauSampler ts{&tau, lambda, refinement_factor(tau.dom, dom)};

  DeformationState st;
  st.lambda = lambda;
  st.mu2 = 1.0 - 2.0 * lambda;
  st.supercritical = st.mu2 < 0.0;
  st.dom = dom;
  st.T = Grid<Mat6>(dom.nu, dom.nv, Mat6::identity());

  const int bi = dom.bi(), bj = dom.bj();
  // Base row, then columns; increments multiply on the right (dT = T M).
  for (int i = bi; i + 1 < dom.nu; ++i)
    st.T.at(i + 1, bj) = st.T.at(i, bj) * edge_increment(ts, i, bj, 1, 0, dom.hu());
  for (int i = bi; i - 1 >= 0; --i)
    st.T.at(i - 1, bj) = st.T.at(i, bj) * edge_increment(ts, i, bj, -1, 0, -dom.hu());
  for (int i = 0; i < dom.nu; ++i) {
    for (int j = bj; j + 1 < dom.nv; ++j)
      st.T.at(i, j + 1) = st.T.at(i, j) * edge_increment(ts, i, j, 0, 1, dom.hv());
    for (int j = bj; j - 1 >= 0; --j)
      st.T.at(i, j - 1) = st.T.at(i, j) * edge_increment(ts, i, j, 0, -1, -dom.hv());
  }

  double drift = 0.0;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      drift = std::max(drift, orthogonality_defect(st.T.at(i, j)));
  st.max_orthogonality_drift = drift;
  if (drift > opts.divergence_ceiling)
    fail(Errc::TransportDiverged, "calapso_transport: orthogonality drift " +
                                      std::to_string(drift) + " exceeds ceiling at lambda = " +
                                      std::to_string(lambda));
  return st;
}

HolonomyResult holonomy_residual(const ConnectionFormGrid& tau, double lambda,
                                 const GridDomain& dom) {
  TauSampler ts{&tau, lambda, refinement_factor(tau.dom, dom)};
  HolonomyResult out;
  out.residual = Grid<double>(std::max(1, dom.nu - 1), std::max(1, dom.nv - 1), 0.0);
  const Mat6 eye = Mat6::identity();
  for (int j = 0; j + 1 < dom.nv; ++j)
    for (int i = 0; i + 1 < dom.nu; ++i) {
      const Mat6 bottom = edge_increment(ts, i, j, 1, 0, dom.hu());
      const Mat6 right = edge_increment(ts, i + 1, j, 0, 1, dom.hv());
      const Mat6 top = edge_increment(ts, i, j + 1, 1, 0, dom.hu());
      const Mat6 left = edge_increment(ts, i, j, 0, 1, dom.hv());
      const Mat6 hol = bottom * right * top.inverse() * left.inverse();
      const double res = (hol - eye).frobenius();
      out.residual.at(i, j) = res;
      out.max_abs = std::max(out.max_abs, res);
    }
  return out;
}

ConservedQuantityGrid conserved_quantity(const FrontGrid& front, double lambda) {
  const AmbientSplit split = AmbientSplit::standard();
  ConservedQuantityGrid cq;
  cq.dom = front.dom;
  cq.pp = Grid<SigVec>(front.dom.nu, front.dom.nv, SigVec(Sig::R42));
  cq.pm = Grid<SigVec>(front.dom.nu, front.dom.nv, SigVec(Sig::R42));
  for (int j = 0; j < front.dom.nv; ++j)
    for (int i = 0; i < front.dom.nu; ++i) {
      const SigVec f = embed_r42(front.f.at(i, j));
      const SigVec t = embed_r42(front.t.at(i, j));
      cq.pp.at(i, j) = (1.0 - lambda) * (split.p + split.q) - lambda * (t + f);
      cq.pm.at(i, j) = (1.0 - lambda) * (split.p - split.q) - lambda * (t - f);
    }
  return cq;
}

double conservation_drift(const DeformationState& state, const ConservedQuantityGrid& cq) {
  const GridDomain& dom = state.dom;
  if (!(cq.dom == dom))
    fail(Errc::DegenerateConfiguration, "conservation_drift: mismatched grids");
  const int bi = dom.bi(), bj = dom.bj();
  double worst = 0.0;
  for (const Grid<SigVec>* pk : {&cq.pp, &cq.pm}) {
    const SigVec ref = apply(state.T.at(bi, bj), pk->at(bi, bj));
    const double scale = std::max(1.0, euclid_norm(ref));
    for (int j = 0; j < dom.nv; ++j)
      for (int i = 0; i < dom.nu; ++i) {
        const SigVec val = apply(state.T.at(i, j), pk->at(i, j));
        worst = std::max(worst, euclid_norm(val - ref) / scale);
      }
  }
  return worst;
}

namespace {

// Largest principal angle between the planes span{a1,a2} and span{b1,b2},
// through the sine (residual after projecting one orthonormal basis onto the
// other plane) so small angles are measured at full precision.
double max_principal_angle(const SigVec& a1, const SigVec& a2, const SigVec& b1,
                           const SigVec& b2) {
  auto orthonormalize = [](SigVec x, SigVec y) {
    x = x * (1.0 / euclid_norm(x));
    y -= euclid_dot(x, y) * x;
    y = y * (1.0 / euclid_norm(y));
    return std::pair<SigVec, SigVec>(x, y);
  };
  auto [qa1, qa2] = orthonormalize(a1, a2);
  auto [qb1, qb2] = orthonormalize(b1, b2);
  auto project_off = [&](const SigVec& x) {
    return x - euclid_dot(qb1, x) * qb1 - euclid_dot(qb2, x) * qb2;
  };
  const SigVec r1 = project_off(qa1);
  const SigVec r2 = project_off(qa2);
  // sin(theta_max) = largest singular value of the 6x2 residual [r1 r2].
  const double g11 = euclid_dot(r1, r1), g12 = euclid_dot(r1, r2), g22 = euclid_dot(r2, r2);
  const double tr = g11 + g22;
  const double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4.0 * g12 * g12));
  const double smax = std::sqrt(std::max(0.0, (tr + disc) / 2.0));
  return std::asin(std::min(1.0, smax));
}

}  // namespace

GaugeRelationResult gauge_relation_residual(const DeformationState& state,
                                            const DeformationState& state_plus,
                                            const DeformationState& state_minus,
                                            const SphereCongruenceGrid& sc, double lambda) {
  const GridDomain& dom = state.dom;
  const int bi = dom.bi(), bj = dom.bj();

  GaugeRelationResult out;
  const Mat6 wp_base = to_matrix(SkewEndo(sc.sp.at(bi, bj), sc.sm.at(bi, bj)));
  // (1 + c W)^{-1} = 1 - c W: the plane wedge is nilpotent of order two.
  const Mat6 cp_inv = Mat6::identity() - (lambda / 2.0) * wp_base;
  const Mat6 cm_inv = Mat6::identity() + (lambda / 2.0) * wp_base;

  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const Mat6& t = state.T.at(i, j);
      const double scale = std::max(1.0, t.frobenius());
      const Mat6 w = to_matrix(SkewEndo(sc.sp.at(i, j), sc.sm.at(i, j)));
      const Mat6 xp = cp_inv * state_plus.T.at(i, j) * (Mat6::identity() + (lambda / 2.0) * w);
      const Mat6 xm = cm_inv * state_minus.T.at(i, j) * (Mat6::identity() - (lambda / 2.0) * w);
      out.residual_plus = std::max(out.residual_plus, (xp - t).frobenius() / scale);
      out.residual_minus = std::max(out.residual_minus, (xm - t).frobenius() / scale);

      const SigVec tp_sp = apply(cp_inv * state_plus.T.at(i, j), sc.sp.at(i, j));
      const SigVec tp_sm = apply(cp_inv * state_plus.T.at(i, j), sc.sm.at(i, j));
      const SigVec t_sp = apply(t, sc.sp.at(i, j));
      const SigVec t_sm = apply(t, sc.sm.at(i, j));
      out.max_principal_angle =
          std::max(out.max_principal_angle, max_principal_angle(tp_sp, tp_sm, t_sp, t_sm));
    }
  return out;
}

}  // namespace flatfront
