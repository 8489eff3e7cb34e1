#include "flatfront/lift.hpp"

#include <algorithm>
#include <cmath>

#include "flatfront/fd.hpp"

namespace flatfront {

namespace {

Grid<SigVec> r42_grid(const GridDomain& dom) {
  return Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R42));
}

Mat6 terms_to_matrix(const std::vector<SkewEndo>& terms) {
  Mat6 out;
  for (const SkewEndo& e : terms) out += to_matrix(e);
  return out;
}

}  // namespace

Mat6 ConnectionFormGrid::mat_u(int i, int j) const { return terms_to_matrix(tau_u.at(i, j)); }
Mat6 ConnectionFormGrid::mat_v(int i, int j) const { return terms_to_matrix(tau_v.at(i, j)); }

ContactGrid legendre_lift(const FrontGrid& front, const AmbientSplit& split) {
  ContactGrid out;
  out.dom = front.dom;
  out.elements = Grid<ContactElement>(front.dom.nu, front.dom.nv);
  for (int j = 0; j < front.dom.nv; ++j)
    for (int i = 0; i < front.dom.nu; ++i) {
      out.elements.at(i, j).s1 = split.q + embed_r42(front.f.at(i, j));
      out.elements.at(i, j).s2 = split.p + embed_r42(front.t.at(i, j));
    }
  return out;
}

SphereCongruenceGrid curvature_spheres(const FrontGrid& front, const HarmonicPotential& phi) {
  const GridDomain& dom = front.dom;
  SphereCongruenceGrid sc;
  sc.dom = dom;
  sc.s1 = r42_grid(dom);
  sc.s2 = r42_grid(dom);
  sc.sp = r42_grid(dom);
  sc.sm = r42_grid(dom);

  const AmbientSplit split = AmbientSplit::standard();
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double ph = phi.eval(dom.u(i), dom.v(j)).phi;
      const SigVec pt = split.p + embed_r42(front.t.at(i, j));
      const SigVec qf = split.q + embed_r42(front.f.at(i, j));
      sc.s1.at(i, j) = std::cosh(ph) * pt + std::sinh(ph) * qf;
      sc.s2.at(i, j) = std::sinh(ph) * pt + std::cosh(ph) * qf;
      sc.sp.at(i, j) = sc.s1.at(i, j) + sc.s2.at(i, j);
      sc.sm.at(i, j) = sc.s1.at(i, j) - sc.s2.at(i, j);
    }

  // s1_u = phi_u s2 and s2_v = phi_v s1: measure the transverse remainder.
  double worst = 0.0;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const PotentialJet jet = phi.eval(dom.u(i), dom.v(j));
      const SigVec d1 = fd_deriv_u(sc.s1, i, j, dom.hu()) - jet.phi_u * sc.s2.at(i, j);
      const SigVec d2 = fd_deriv_v(sc.s2, i, j, dom.hv()) - jet.phi_v * sc.s1.at(i, j);
      const double scale1 = std::max(1.0, euclid_norm(sc.s2.at(i, j)));
      const double scale2 = std::max(1.0, euclid_norm(sc.s1.at(i, j)));
      worst = std::max(worst, euclid_norm(d1) / scale1);
      worst = std::max(worst, euclid_norm(d2) / scale2);
    }
  sc.parallelism_residual = worst;
  return sc;
}

ResidualGrid omega_residual(const Grid<double>& E, const Grid<double>& G,
                            const Grid<double>& k1, const Grid<double>& k2,
                            const GridDomain& dom, const Grid<uint8_t>* exclude, double gate) {
  constexpr double kUmbilicTol = 1e-9;

  // Inner quantities A = sqrt(E/G) k1_u/(k1-k2), B = sqrt(G/E) k2_v/(k1-k2).
  Grid<double> A(dom.nu, dom.nv, 0.0), B(dom.nu, dom.nv, 0.0);
  Grid<uint8_t> bad(dom.nu, dom.nv, 0);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double e = E.at(i, j), g = G.at(i, j);
      const double dk = k1.at(i, j) - k2.at(i, j);
      const bool gated = std::sqrt(std::max(0.0, std::min(e, g))) > gate;
      if (!gated || (exclude && exclude->at(i, j))) {
        bad.at(i, j) = 1;
        continue;
      }
      if (std::abs(dk) < kUmbilicTol) {
        bad.at(i, j) = 2;  // UmbilicEncountered: flagged, skipped
        continue;
      }
      A.at(i, j) = std::sqrt(e / g) * fd_deriv_u(k1, i, j, dom.hu()) / dk;
      B.at(i, j) = std::sqrt(g / e) * fd_deriv_v(k2, i, j, dom.hv()) / dk;
    }

  ResidualGrid out;
  out.r = Grid<double>(dom.nu, dom.nv, 0.0);
  for (int j = 1; j + 1 < dom.nv; ++j)
    for (int i = 1; i + 1 < dom.nu; ++i) {
      bool usable = true;
      for (int dj = -1; dj <= 1 && usable; ++dj)
        for (int di = -1; di <= 1 && usable; ++di)
          if (bad.at(i + di, j + dj)) usable = false;
      if (!usable) {
        ++out.skipped;
        continue;
      }
      const double res = fd_deriv_v(A, i, j, dom.hv()) + fd_deriv_u(B, i, j, dom.hu());
      out.r.at(i, j) = res;
      out.max_abs = std::max(out.max_abs, std::abs(res));
    }
  return out;
}

ResidualGrid moutard_residual_single(const Grid<SigVec>& s, const GridDomain& dom) {
  Grid<SigVec> transverse(dom.nu, dom.nv, SigVec(Sig::R42));
  double scale = 0.0;
  for (int j = 1; j + 1 < dom.nv; ++j)
    for (int i = 1; i + 1 < dom.nu; ++i) {
      const SigVec suv = fd_deriv_uv(s, i, j, dom.hu(), dom.hv());
      scale = std::max(scale, euclid_norm(suv));
      const SigVec& s0 = s.at(i, j);
      const double ns = euclid_dot(s0, s0);
      transverse.at(i, j) = ns > 0.0 ? suv - (euclid_dot(suv, s0) / ns) * s0 : suv;
    }

  ResidualGrid out;
  out.r = Grid<double>(dom.nu, dom.nv, 0.0);
  if (scale == 0.0) return out;  // constant congruence: exactly Moutard
  for (int j = 1; j + 1 < dom.nv; ++j)
    for (int i = 1; i + 1 < dom.nu; ++i) {
      const double res = euclid_norm(transverse.at(i, j)) / scale;
      out.r.at(i, j) = res;
      out.max_abs = std::max(out.max_abs, res);
    }
  return out;
}

MoutardResiduals moutard_residual(const SphereCongruenceGrid& sc) {
  return MoutardResiduals{moutard_residual_single(sc.sp, sc.dom),
                          moutard_residual_single(sc.sm, sc.dom)};
}

ConnectionFormGrid tau_form(const FrontGrid& front) {
  const GridDomain& dom = front.dom;
  const AmbientSplit split = AmbientSplit::standard();
  ConnectionFormGrid out;
  out.dom = dom;
  out.tau_u = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  out.tau_v = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec pt = split.p + embed_r42(front.t.at(i, j));
      const SigVec qf = split.q + embed_r42(front.f.at(i, j));
      const SigVec fu = embed_r42(fd_deriv_u(front.f, i, j, dom.hu()));
      const SigVec fv = embed_r42(fd_deriv_v(front.f, i, j, dom.hv()));
      const SigVec tu = embed_r42(fd_deriv_u(front.t, i, j, dom.hu()));
      const SigVec tv = embed_r42(fd_deriv_v(front.t, i, j, dom.hv()));
      out.tau_u.at(i, j) = {SkewEndo(-1.0 * pt, tu), SkewEndo(qf, fu)};
      out.tau_v.at(i, j) = {SkewEndo(-1.0 * pt, tv), SkewEndo(qf, fv)};
    }
  return out;
}

ConnectionFormGrid tau_form_exact(const FrameGrid& frame, const HarmonicPotential& phi) {
  if (frame.lambda != 0.0)
    fail(Errc::DegenerateConfiguration, "tau_form_exact: needs the lambda = 0 frame");
  const GridDomain& dom = frame.dom;
  const AmbientSplit split = AmbientSplit::standard();
  ConnectionFormGrid out;
  out.dom = dom;
  out.tau_u = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  out.tau_v = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double ph = phi.eval(dom.u(i), dom.v(j)).phi;
      const double ch = std::cosh(ph), sh = std::sinh(ph);
      const SigVec f = 0.5 * (frame.hp.at(i, j) - frame.hm.at(i, j));
      const SigVec t = 0.5 * (frame.hp.at(i, j) + frame.hm.at(i, j));
      const SigVec pt = split.p + embed_r42(t);
      const SigVec qf = split.q + embed_r42(f);
      const SigVec e1 = embed_r42(frame.e1.at(i, j));
      const SigVec e2 = embed_r42(frame.e2.at(i, j));
      // tau_u = sinh(phi) (p+t)^e1 + cosh(phi) (q+f)^e1
      // tau_v = -cosh(phi) (p+t)^e2 - sinh(phi) (q+f)^e2
      out.tau_u.at(i, j) = {SkewEndo(sh * pt, e1), SkewEndo(ch * qf, e1)};
      out.tau_v.at(i, j) = {SkewEndo(-ch * pt, e2), SkewEndo(-sh * qf, e2)};
    }
  return out;
}

TauPair tau_pm_form(const SphereCongruenceGrid& sc) {
  const GridDomain& dom = sc.dom;
  TauPair out;
  for (ConnectionFormGrid* g : {&out.plus, &out.minus}) {
    g->dom = dom;
    g->tau_u = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
    g->tau_v = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  }
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      out.plus.tau_u.at(i, j) = {SkewEndo(sc.sp.at(i, j), fd_deriv_u(sc.sp, i, j, dom.hu()))};
      out.plus.tau_v.at(i, j) = {
          SkewEndo(-1.0 * sc.sp.at(i, j), fd_deriv_v(sc.sp, i, j, dom.hv()))};
      out.minus.tau_u.at(i, j) = {SkewEndo(sc.sm.at(i, j), fd_deriv_u(sc.sm, i, j, dom.hu()))};
      out.minus.tau_v.at(i, j) = {
          SkewEndo(-1.0 * sc.sm.at(i, j), fd_deriv_v(sc.sm, i, j, dom.hv()))};
    }
  return out;
}

TauPair tau_pm_form_exact(const FrameGrid& frame, const HarmonicPotential& phi) {
  if (frame.lambda != 0.0)
    fail(Errc::DegenerateConfiguration, "tau_pm_form_exact: needs the lambda = 0 frame");
  const GridDomain& dom = frame.dom;
  const AmbientSplit split = AmbientSplit::standard();
  TauPair out;
  for (ConnectionFormGrid* g : {&out.plus, &out.minus}) {
    g->dom = dom;
    g->tau_u = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
    g->tau_v = Grid<std::vector<SkewEndo>>(dom.nu, dom.nv);
  }
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double ph = phi.eval(dom.u(i), dom.v(j)).phi;
      const SigVec f = 0.5 * (frame.hp.at(i, j) - frame.hm.at(i, j));
      const SigVec t = 0.5 * (frame.hp.at(i, j) + frame.hm.at(i, j));
      const SigVec e1 = embed_r42(frame.e1.at(i, j));
      const SigVec e2 = embed_r42(frame.e2.at(i, j));
      const SigVec sp = std::exp(ph) * (split.p + split.q + embed_r42(t) + embed_r42(f));
      const SigVec sm = std::exp(-ph) * (split.p - split.q + embed_r42(t) - embed_r42(f));
      // s+_u = phi_u s+ + e1  =>  s+ ^ s+_u = s+ ^ e1; likewise below.
      out.plus.tau_u.at(i, j) = {SkewEndo(sp, e1)};
      out.plus.tau_v.at(i, j) = {SkewEndo(-1.0 * sp, e2)};
      out.minus.tau_u.at(i, j) = {SkewEndo(-1.0 * sm, e1)};
      out.minus.tau_v.at(i, j) = {SkewEndo(-1.0 * sm, e2)};
    }
  return out;
}

Grid<uint8_t> refinement_probe_mask(const FrontGrid& front, double gate, int margin) {
  const GridDomain& dom = front.dom;
  Grid<uint8_t> good(dom.nu, dom.nv, 0);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double s =
          std::sqrt(std::max(0.0, std::min(front.E.at(i, j), front.G.at(i, j))));
      good.at(i, j) = s > gate ? 1 : 0;
    }
  Grid<uint8_t> probe(dom.nu, dom.nv, 0);
  for (int j = margin; j < dom.nv - margin; ++j)
    for (int i = margin; i < dom.nu - margin; ++i) {
      bool ok = true;
      for (int dj = -1; dj <= 1 && ok; ++dj)
        for (int di = -1; di <= 1 && ok; ++di)
          if (!good.at(i + di, j + dj)) ok = false;
      probe.at(i, j) = ok ? 1 : 0;
    }
  return probe;
}

double subsampled_max(const Grid<double>& values, int factor, const Grid<uint8_t>& probe) {
  double worst = 0.0;
  for (int j = 0; j < probe.nv; ++j)
    for (int i = 0; i < probe.nu; ++i)
      if (probe.at(i, j)) worst = std::max(worst, std::abs(values.at(i * factor, j * factor)));
  return worst;
}

double tau_alignment_residual(const ConnectionFormGrid& tau, const TauPair& taupm,
                              const SphereCongruenceGrid& sc) {
  const GridDomain& dom = tau.dom;
  double worst = 0.0;
  for (int j = 1; j + 1 < dom.nv; ++j)
    for (int i = 1; i + 1 < dom.nu; ++i) {
      const SigVec sp = sc.sp.at(i, j), sm = sc.sm.at(i, j);
      const SigVec spu = fd_deriv_u(sc.sp, i, j, dom.hu());
      const SigVec spv = fd_deriv_v(sc.sp, i, j, dom.hv());
      const SigVec smu = fd_deriv_u(sc.sm, i, j, dom.hu());
      const SigVec smv = fd_deriv_v(sc.sm, i, j, dom.hv());

      // d(s+ ^ s-) componentwise (no Hodge star here).
      const Mat6 dw_u = to_matrix(SkewEndo(spu, sm)) + to_matrix(SkewEndo(sp, smu));
      const Mat6 dw_v = to_matrix(SkewEndo(spv, sm)) + to_matrix(SkewEndo(sp, smv));

      const Mat6 tu = tau.mat_u(i, j), tv = tau.mat_v(i, j);
      const double scale = std::max(1.0, std::max(tu.frobenius(), tv.frobenius()));

      const Mat6 rp_u = taupm.plus.mat_u(i, j) + 0.5 * dw_u - tu;
      const Mat6 rp_v = taupm.plus.mat_v(i, j) + 0.5 * dw_v - tv;
      const Mat6 rm_u = taupm.minus.mat_u(i, j) - 0.5 * dw_u - tu;
      const Mat6 rm_v = taupm.minus.mat_v(i, j) - 0.5 * dw_v - tv;
      for (const Mat6* r : {&rp_u, &rp_v, &rm_u, &rm_v})
        worst = std::max(worst, r->frobenius() / scale);
    }
  return worst;
}

FrontGrid reconstruct_front(const SphereCongruenceGrid& sc, SigVec qplus, SigVec qminus) {
  const double pairing = inner(qplus, qminus);
  const double scale = euclid_norm(qplus) * euclid_norm(qminus);
  if (std::abs(pairing) < 1e-12 * std::max(1.0, scale))
    fail(Errc::ContactSpanDegenerate, "reconstruct_front: q+ and q- span a contact element");
  // The output is projected onto the fixed R31 block, so the fixed spheres
  // must span the standard R11 complement (scalings of p ± q qualify).
  for (const SigVec* qv : {&qplus, &qminus}) {
    double ytail = 0.0;
    for (int k = 2; k < 6; ++k) ytail += (*qv)[k] * (*qv)[k];
    if (std::sqrt(ytail) > 1e-12 * std::max(1.0, euclid_norm(*qv)))
      fail(Errc::DegenerateConfiguration,
           "reconstruct_front: fixed spheres must lie in the span of p and q");
  }

  // Normalize <q+,q-> to -2, rescaling both fixed spheres symmetrically.
  const double s = std::sqrt(2.0 / std::abs(pairing));
  qplus *= s;
  qminus *= s;
  if (pairing > 0.0) qminus *= -1.0;

  const GridDomain& dom = sc.dom;
  FrontGrid out;
  out.dom = dom;
  out.f = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));
  out.t = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));
  out.singular = Grid<uint8_t>(dom.nu, dom.nv, 0);
  out.has_frame = false;

  Grid<uint8_t> point_sphere(dom.nu, dom.nv, 0);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec& sp = sc.sp.at(i, j);
      const SigVec& sm = sc.sm.at(i, j);
      const double dp = inner(sp, qminus);
      const double dm = inner(sm, qplus);
      const double sp_scale = euclid_norm(sp), sm_scale = euclid_norm(sm);
      if (std::abs(dp) < 1e-12 * std::max(1.0, sp_scale) ||
          std::abs(dm) < 1e-12 * std::max(1.0, sm_scale)) {
        point_sphere.at(i, j) = 1;
        continue;
      }
      const SigVec a = 0.5 * qplus + sp / dp;
      const SigVec b = 0.5 * qminus + sm / dm;
      out.f.at(i, j) = r31_part(-1.0 * a + b);
      out.t.at(i, j) = r31_part(-1.0 * a - b);
    }

  metric_and_curvatures(out);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      if (point_sphere.at(i, j)) out.singular.at(i, j) = 1;
  return out;
}

}  // namespace flatfront
