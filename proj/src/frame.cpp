#include "flatfront/frame.hpp"

#include <algorithm>
#include <cmath>

namespace flatfront {

namespace {

constexpr double kOverflowPhi = 700.0;  // e^{|phi|} would overflow past this

struct FrameState {
  SigVec e1{Sig::R31}, e2{Sig::R31}, hp{Sig::R31}, hm{Sig::R31};

  FrameState& axpy(double s, const FrameState& o) {
    e1 += s * o.e1;
    e2 += s * o.e2;
    hp += s * o.hp;
    hm += s * o.hm;
    return *this;
  }
};

FrameState scaled_sum(const FrameState& base, double s, const FrameState& d) {
  FrameState out = base;
  out.axpy(s, d);
  return out;
}

struct SystemCoeffs {
  double mu, eps;
};

SystemCoeffs coeffs_for(double lambda) {
  const double m2 = 1.0 - 2.0 * lambda;
  return SystemCoeffs{std::sqrt(std::abs(m2)), m2 >= 0.0 ? 1.0 : -1.0};
}

// dir: 0 = d/du, 1 = d/dv
FrameState rhs(const PotentialJet& jet, const FrameState& s, const SystemCoeffs& cf, int dir) {
  const double ep = std::exp(jet.phi);
  const double em = std::exp(-jet.phi);
  FrameState d;
  if (dir == 0) {
    d.e1 = jet.phi_v * s.e2 + (cf.mu / 2.0) * (ep * s.hp - cf.eps * em * s.hm);
    d.e2 = -jet.phi_v * s.e1;
    d.hp = (cf.eps * cf.mu * em) * s.e1;
    d.hm = (-cf.mu * ep) * s.e1;
  } else {
    d.e1 = -jet.phi_u * s.e2;
    d.e2 = jet.phi_u * s.e1 - (cf.mu / 2.0) * (ep * s.hp + cf.eps * em * s.hm);
    d.hp = (cf.eps * cf.mu * em) * s.e2;
    d.hm = (cf.mu * ep) * s.e2;
  }
  return d;
}

void check_overflow(const PotentialJet& jet, double u, double v) {
  if (std::abs(jet.phi) > kOverflowPhi)
    fail(Errc::PotentialOverflow, "e^|phi| overflows at u=" + std::to_string(u) +
                                      ", v=" + std::to_string(v));
}

// One RK4 step from coordinate x along direction dir; the other coordinate
// is held at `other`.
FrameState rk4_step(const HarmonicPotential& phi, const FrameState& s, double x, double h,
                    double other, const SystemCoeffs& cf, int dir) {
  auto jet_at = [&](double t) {
    const double u = dir == 0 ? t : other;
    const double v = dir == 0 ? other : t;
    PotentialJet jet = phi.eval(u, v);
    check_overflow(jet, u, v);
    return jet;
  };
  const PotentialJet j0 = jet_at(x);
  const PotentialJet jm = jet_at(x + h / 2.0);
  const PotentialJet j1 = jet_at(x + h);

  const FrameState k1 = rhs(j0, s, cf, dir);
  const FrameState k2 = rhs(jm, scaled_sum(s, h / 2.0, k1), cf, dir);
  const FrameState k3 = rhs(jm, scaled_sum(s, h / 2.0, k2), cf, dir);
  const FrameState k4 = rhs(j1, scaled_sum(s, h, k3), cf, dir);

  FrameState out = s;
  out.axpy(h / 6.0, k1);
  out.axpy(h / 3.0, k2);
  out.axpy(h / 3.0, k3);
  out.axpy(h / 6.0, k4);
  return out;
}

FrameState advance(const HarmonicPotential& phi, FrameState s, double x, double h, double other,
                   const SystemCoeffs& cf, int dir, int substeps) {
  const double hs = h / substeps;
  for (int k = 0; k < substeps; ++k) s = rk4_step(phi, s, x + k * hs, hs, other, cf, dir);
  return s;
}

// Pull the state back onto the constraint manifold: orthonormalize the
// tangent pair, strip their components from h±, restore the null/pairing
// normalization through the (f, t) decomposition.
FrameState project_to_manifold(const FrameState& s) {
  FrameState out = s;
  out.e1 = out.e1 / std::sqrt(inner(out.e1, out.e1));
  out.e2 -= inner(out.e1, out.e2) * out.e1;
  out.e2 = out.e2 / std::sqrt(inner(out.e2, out.e2));

  auto strip_tangent = [&](SigVec x) {
    x -= inner(x, out.e1) * out.e1;
    x -= inner(x, out.e2) * out.e2;
    return x;
  };
  SigVec f = strip_tangent(0.5 * (out.hp - out.hm));
  SigVec t = strip_tangent(0.5 * (out.hp + out.hm));
  f = f / std::sqrt(-inner(f, f));
  t += inner(t, f) * f;  // |f|^2 = -1, so this removes the f-component
  t = t / std::sqrt(inner(t, t));
  out.hp = t + f;
  out.hm = t - f;
  return out;
}

}  // namespace

BaseFrame initial_frame(double lambda) {
  if (lambda == 0.5)
    fail(Errc::DegenerateParameter, "lambda = 1/2 is degenerate: (p+,p-)(lambda) = 0");
  BaseFrame bf;
  bf.f0 = SigVec::r31(1, 0, 0, 0);
  bf.t0 = SigVec::r31(0, 0, 0, 1);
  bf.e1 = SigVec::r31(0, 1, 0, 0);
  bf.e2 = SigVec::r31(0, 0, 1, 0);
  bf.hplus = bf.t0 + bf.f0;
  bf.hminus = bf.t0 - bf.f0;
  return bf;
}

double FrameGrid::max_invariant_violation() const {
  double worst = 0.0;
  auto chk = [&worst](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec& a = e1.at(i, j);
      const SigVec& b = e2.at(i, j);
      const SigVec& p = hp.at(i, j);
      const SigVec& m = hm.at(i, j);
      chk(inner(a, a), 1.0);
      chk(inner(b, b), 1.0);
      chk(inner(a, b), 0.0);
      chk(inner(p, p), 0.0);
      chk(inner(m, m), 0.0);
      chk(inner(p, m), 2.0);
      chk(inner(a, p), 0.0);
      chk(inner(a, m), 0.0);
      chk(inner(b, p), 0.0);
      chk(inner(b, m), 0.0);
    }
  return worst;
}

FrameGrid integrate_frame(const HarmonicPotential& phi, const GridDomain& dom, double lambda,
                          const IntegrateOptions& opts) {
  dom.validate();
  if (lambda == 0.5)
    fail(Errc::DegenerateParameter, "lambda = 1/2 is degenerate: (p+,p-)(lambda) = 0");

  // Admissibility gate over the whole grid (the residual is analytic, so the
  // gridpoints are a sufficient probe set for polynomial-type terms).
  {
    std::vector<std::pair<double, double>> probes;
    probes.reserve(static_cast<size_t>(dom.nu) * dom.nv);
    for (int j = 0; j < dom.nv; ++j)
      for (int i = 0; i < dom.nu; ++i) probes.emplace_back(dom.u(i), dom.v(j));
    phi.require_admissible(probes);
  }

  const SystemCoeffs cf = coeffs_for(lambda);
  const BaseFrame bf = initial_frame(lambda);

  FrameGrid fg;
  fg.dom = dom;
  fg.lambda = lambda;
  fg.e1 = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));
  fg.e2 = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));
  fg.hp = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));
  fg.hm = Grid<SigVec>(dom.nu, dom.nv, SigVec(Sig::R31));

  Grid<FrameState> st(dom.nu, dom.nv);
  const int bi = dom.bi(), bj = dom.bj();
  st.at(bi, bj) = FrameState{bf.e1, bf.e2, bf.hplus, bf.hminus};

  auto sweep_u = [&](int j) {
    const double v = dom.v(j);
    for (int i = bi; i + 1 < dom.nu; ++i) {
      FrameState s = advance(phi, st.at(i, j), dom.u(i), dom.hu(), v, cf, 0, opts.substeps);
      st.at(i + 1, j) = opts.reproject ? project_to_manifold(s) : s;
    }
    for (int i = bi; i - 1 >= 0; --i) {
      FrameState s = advance(phi, st.at(i, j), dom.u(i), -dom.hu(), v, cf, 0, opts.substeps);
      st.at(i - 1, j) = opts.reproject ? project_to_manifold(s) : s;
    }
  };
  auto sweep_v = [&](int i) {
    const double u = dom.u(i);
    for (int j = bj; j + 1 < dom.nv; ++j) {
      FrameState s = advance(phi, st.at(i, j), dom.v(j), dom.hv(), u, cf, 1, opts.substeps);
      st.at(i, j + 1) = opts.reproject ? project_to_manifold(s) : s;
    }
    for (int j = bj; j - 1 >= 0; --j) {
      FrameState s = advance(phi, st.at(i, j), dom.v(j), -dom.hv(), u, cf, 1, opts.substeps);
      st.at(i, j - 1) = opts.reproject ? project_to_manifold(s) : s;
    }
  };

  if (!opts.transposed_path) {
    sweep_u(bj);
    for (int i = 0; i < dom.nu; ++i) sweep_v(i);
  } else {
    sweep_v(bi);
    for (int j = 0; j < dom.nv; ++j) sweep_u(j);
  }

  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const FrameState& s = st.at(i, j);
      fg.e1.at(i, j) = s.e1;
      fg.e2.at(i, j) = s.e2;
      fg.hp.at(i, j) = s.hp;
      fg.hm.at(i, j) = s.hm;
    }
  return fg;
}

double path_dependence_residual(const HarmonicPotential& phi, const GridDomain& dom,
                                double lambda, const IntegrateOptions& opts) {
  IntegrateOptions a = opts;
  a.transposed_path = false;
  IntegrateOptions b = opts;
  b.transposed_path = true;
  const FrameGrid fa = integrate_frame(phi, dom, lambda, a);
  const FrameGrid fb = integrate_frame(phi, dom, lambda, b);
  const int i = dom.nu - 1, j = dom.nv - 1;
  double worst = 0.0;
  worst = std::max(worst, euclid_norm(fa.e1.at(i, j) - fb.e1.at(i, j)));
  worst = std::max(worst, euclid_norm(fa.e2.at(i, j) - fb.e2.at(i, j)));
  worst = std::max(worst, euclid_norm(fa.hp.at(i, j) - fb.hp.at(i, j)));
  worst = std::max(worst, euclid_norm(fa.hm.at(i, j) - fb.hm.at(i, j)));
  return worst;
}

}  // namespace flatfront
