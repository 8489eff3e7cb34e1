#include <cmath>
#include <random>

#include "doctest.h"
#include "flatfront/cross_ratio.hpp"
#include "flatfront/fd.hpp"
#include "flatfront/lift.hpp"

using namespace flatfront;

namespace {

GridDomain square(int n) {
  GridDomain d;
  d.nu = d.nv = n;
  return d;
}

HarmonicPotential phi_default() {
  return HarmonicPotential::parse({"linear_u:1.0", "re_poly:0.3:2"});
}

FrontGrid exact_front(const HarmonicPotential& phi, int n, double lambda = 0.0) {
  IntegrateOptions opts;
  opts.reproject = true;  // pin the pointwise constraints to roundoff
  return front_from_frame(integrate_frame(phi, square(n), lambda, opts));
}

}  // namespace

TEST_CASE("legendre lift generators") {
  const FrontGrid fr = exact_front(phi_default(), 17);
  const ContactGrid lift = legendre_lift(fr, AmbientSplit::standard());
  for (int j = 0; j < 17; j += 4)
    for (int i = 0; i < 17; i += 4)
      CHECK(lift.elements.at(i, j).max_invariant_violation() < 1e-12);
  // canonical base point: span{(0,1,1,0,0,0), (1,0,0,0,0,1)}
  const int bi = fr.dom.bi(), bj = fr.dom.bj();
  CHECK(euclid_norm(lift.elements.at(bi, bj).s1 - SigVec::r42(0, 1, 1, 0, 0, 0)) < 1e-12);
  CHECK(euclid_norm(lift.elements.at(bi, bj).s2 - SigVec::r42(1, 0, 0, 0, 0, 1)) < 1e-12);
}

TEST_CASE("curvature spheres: normalization and tangency") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 33);
  const SphereCongruenceGrid sc = curvature_spheres(fr, phi);
  const AmbientSplit split = AmbientSplit::standard();

  for (int j = 0; j < 33; j += 8)
    for (int i = 0; i < 33; i += 8) {
      CHECK(std::abs(inner(sc.s1.at(i, j), sc.s1.at(i, j))) < 1e-12);
      CHECK(std::abs(inner(sc.s2.at(i, j), sc.s2.at(i, j))) < 1e-12);
      CHECK(std::abs(inner(sc.s1.at(i, j), sc.s2.at(i, j))) < 1e-12);
      CHECK(std::abs(inner(sc.sp.at(i, j), split.qplus)) < 1e-12);
      CHECK(std::abs(inner(sc.sm.at(i, j), split.qminus)) < 1e-12);

      // s+ = e^{phi}(p + q + t + f)
      const double ph = phi.eval(fr.dom.u(i), fr.dom.v(j)).phi;
      const SigVec expect = std::exp(ph) * (split.p + split.q + embed_r42(fr.t.at(i, j)) +
                                            embed_r42(fr.f.at(i, j)));
      CHECK(euclid_norm(sc.sp.at(i, j) - expect) < 1e-12);

      // harmonic separation of the curvature spheres
      CHECK(cross_ratio(sc.sp.at(i, j), sc.sm.at(i, j), sc.s1.at(i, j), sc.s2.at(i, j)) ==
            doctest::Approx(-1.0).epsilon(1e-12));
    }

  // derivative conditions s1_u = phi_u s2, s2_v = phi_v s1 (finite differences)
  CHECK(sc.parallelism_residual < 0.05);
}

TEST_CASE("phi = 0 collapses the spheres onto the lift generators") {
  const HarmonicPotential zero = HarmonicPotential::parse({"constant:0.0"});
  const FrontGrid fr = exact_front(zero, 9);
  const SphereCongruenceGrid sc = curvature_spheres(fr, zero);
  const AmbientSplit split = AmbientSplit::standard();
  const SigVec pt = split.p + embed_r42(fr.t.at(4, 4));
  const SigVec qf = split.q + embed_r42(fr.f.at(4, 4));
  CHECK(euclid_norm(sc.s1.at(4, 4) - pt) < 1e-13);
  CHECK(euclid_norm(sc.s2.at(4, 4) - qf) < 1e-13);
}

TEST_CASE("omega residual decays on flat-front data and not on synthetic data") {
  const HarmonicPotential phi = phi_default();
  // fixed probe set from the coarsest level, so the order is the operator's
  const Grid<uint8_t> probe = refinement_probe_mask(exact_front(phi, 17), 0.3, 2);
  double prev = -1.0;
  int factor = 1;
  for (int n : {17, 33, 65}) {
    const FrontGrid fr = exact_front(phi, n);
    const ResidualGrid res = omega_residual(fr.E, fr.G, fr.k1, fr.k2, fr.dom, &fr.singular, 0.1);
    const double m = subsampled_max(res.r, factor, probe);
    if (prev > 0.0) CHECK(std::log2(prev / m) > 1.5);
    prev = m;
    factor *= 2;
  }

  // Negative control: k1 = u + v^2 + 4, k2 = v, E = G = 1 does not satisfy
  // the surface invariant (its value is -2v/(k1-k2)^2).  Note that fully
  // separable data k1(u), k2(v) with E = G would satisfy it identically.
  prev = -1.0;
  for (int n : {17, 33}) {
    const GridDomain dom = square(n);
    Grid<double> e(n, n, 1.0), g(n, n, 1.0), k1(n, n), k2(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        k1.at(i, j) = dom.u(i) + dom.v(j) * dom.v(j) + 4.0;
        k2.at(i, j) = dom.v(j);
      }
    const ResidualGrid res = omega_residual(e, g, k1, k2, dom, nullptr);
    if (prev > 0.0) CHECK(prev / res.max_abs < 1.5);  // no decay
    prev = res.max_abs;
    CHECK(res.max_abs > 0.01);
  }

  // constant curvatures: residual exactly zero
  {
    const GridDomain dom = square(9);
    Grid<double> e(9, 9, 1.0), g(9, 9, 1.0), k1(9, 9, 2.0), k2(9, 9, 0.5);
    const ResidualGrid res = omega_residual(e, g, k1, k2, dom, nullptr);
    CHECK(res.max_abs == 0.0);
  }
}

TEST_CASE("moutard residual decays for the lifts and detects broken scalings") {
  const HarmonicPotential phi = phi_default();
  const Grid<uint8_t> probe = refinement_probe_mask(exact_front(phi, 17), 0.0, 2);
  double prev_p = -1.0, prev_m = -1.0;
  int factor = 1;
  for (int n : {17, 33, 65}) {
    const FrontGrid fr = exact_front(phi, n);
    const SphereCongruenceGrid sc = curvature_spheres(fr, phi);
    const MoutardResiduals mr = moutard_residual(sc);
    const double mp = subsampled_max(mr.plus.r, factor, probe);
    const double mm = subsampled_max(mr.minus.r, factor, probe);
    if (prev_p > 0.0) {
      CHECK(prev_p / mp > 2.5);
      CHECK(prev_m / mm > 2.5);
    }
    prev_p = mp;
    prev_m = mm;
    factor *= 2;
  }

  // separable rescaling g(u) h(v) breaks the Moutard property
  prev_p = -1.0;
  for (int n : {17, 33}) {
    const FrontGrid fr = exact_front(phi, n);
    SphereCongruenceGrid sc = curvature_spheres(fr, phi);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double g = 1.0 + 0.4 * fr.dom.u(i);
        const double h = 1.0 - 0.3 * fr.dom.v(j);
        sc.sp.at(i, j) *= g * h;
      }
    const ResidualGrid res = moutard_residual_single(sc.sp, sc.dom);
    CHECK(res.max_abs > 0.05);
    if (prev_p > 0.0) CHECK(prev_p / res.max_abs < 1.5);
    prev_p = res.max_abs;
  }

  // constant congruence: residual exactly zero
  {
    Grid<SigVec> s(9, 9, SigVec::r42(1, 2, 3, 4, 5, 6));
    const ResidualGrid res = moutard_residual_single(s, square(9));
    CHECK(res.max_abs == 0.0);
  }
}

TEST_CASE("tau: skewness and the kernel of tau±") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 17);
  const ConnectionFormGrid tau = tau_form(fr);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    const int i = 1 + k, j = 2 + k;
    const SigVec x = SigVec::r42(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    const SigVec y = SigVec::r42(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    const Mat6 mu = tau.mat_u(i, j);
    const SigVec mux = apply(mu, x);
    const SigVec muy = apply(mu, y);
    CHECK(inner(mux, y) + inner(x, muy) == doctest::Approx(0.0).epsilon(1e-10));
  }

  // (tau+)_u s+ = 0 pointwise: exact for the structure-equation route (both
  // inner products vanish for a null lift) ...
  IntegrateOptions opts;
  opts.reproject = true;
  const FrameGrid frame = integrate_frame(phi, square(17), 0.0, opts);
  const FrontGrid fre = front_from_frame(frame);
  const SphereCongruenceGrid sc = curvature_spheres(fre, phi);
  const TauPair tpe = tau_pm_form_exact(frame, phi);
  for (int i = 2; i < 15; i += 4) {
    const SigVec r = apply(tpe.plus.mat_u(i, 7), sc.sp.at(i, 7));
    CHECK(euclid_norm(r) < 1e-10);
  }
  // ... and second-order small for the finite-difference route.
  const TauPair tp = tau_pm_form(sc);
  for (int i = 2; i < 15; i += 4) {
    const SigVec r = apply(tp.plus.mat_u(i, 7), sc.sp.at(i, 7));
    CHECK(euclid_norm(r) < 1e-3);
  }
}

TEST_CASE("u-v swap flips the sign of the v-component of tau±") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 17);
  SphereCongruenceGrid sc = curvature_spheres(fr, phi);

  // transpose the congruence grid
  SphereCongruenceGrid scT;
  scT.dom = sc.dom;
  std::swap(scT.dom.nu, scT.dom.nv);
  std::swap(scT.dom.u_min, scT.dom.v_min);
  std::swap(scT.dom.u_max, scT.dom.v_max);
  scT.s1 = Grid<SigVec>(scT.dom.nu, scT.dom.nv, SigVec(Sig::R42));
  scT.s2 = scT.s1;
  scT.sp = scT.s1;
  scT.sm = scT.s1;
  for (int j = 0; j < sc.dom.nv; ++j)
    for (int i = 0; i < sc.dom.nu; ++i) {
      scT.sp.at(j, i) = sc.sp.at(i, j);
      scT.sm.at(j, i) = sc.sm.at(i, j);
      scT.s1.at(j, i) = sc.s1.at(i, j);
      scT.s2.at(j, i) = sc.s2.at(i, j);
    }

  const TauPair tp = tau_pm_form(sc);
  const TauPair tpT = tau_pm_form(scT);
  const int i = 5, j = 9;
  // new u-component == minus old v-component; new v == minus old u
  CHECK((tpT.plus.mat_u(j, i) + tp.plus.mat_v(i, j)).max_abs() < 1e-11);
  CHECK((tpT.plus.mat_v(j, i) + tp.plus.mat_u(i, j)).max_abs() < 1e-11);
}

TEST_CASE("alignment of tau± with tau decays at second order") {
  const HarmonicPotential phi = phi_default();
  double prev = -1.0;
  for (int n : {17, 33}) {
    const FrontGrid fr = exact_front(phi, n);
    const SphereCongruenceGrid sc = curvature_spheres(fr, phi);
    const double res = tau_alignment_residual(tau_form(fr), tau_pm_form(sc), sc);
    if (prev > 0.0) CHECK(prev / res > 3.0);
    prev = res;
  }
}

TEST_CASE("exact tau agrees with the finite-difference route at second order") {
  const HarmonicPotential phi = phi_default();
  double prev = -1.0;
  for (int n : {17, 33}) {
    const FrameGrid frame = integrate_frame(phi, square(n), 0.0);
    const FrontGrid fr = front_from_frame(frame);
    const ConnectionFormGrid fd = tau_form(fr);
    const ConnectionFormGrid exact = tau_form_exact(frame, phi);
    double worst = 0.0;
    for (int j = 1; j + 1 < n; ++j)
      for (int i = 1; i + 1 < n; ++i) {
        worst = std::max(worst, (fd.mat_u(i, j) - exact.mat_u(i, j)).max_abs());
        worst = std::max(worst, (fd.mat_v(i, j) - exact.mat_v(i, j)).max_abs());
      }
    if (prev > 0.0) CHECK(prev / worst > 3.0);
    prev = worst;
    CHECK(worst < 0.1);
  }
}

TEST_CASE("reconstruction round trip and scale invariance") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 17);
  SphereCongruenceGrid sc = curvature_spheres(fr, phi);
  const AmbientSplit split = AmbientSplit::standard();

  const FrontGrid rec = reconstruct_front(sc, split.qplus, split.qminus);
  double worst = 0.0;
  for (int j = 0; j < 17; ++j)
    for (int i = 0; i < 17; ++i) {
      worst = std::max(worst, euclid_norm(rec.f.at(i, j) - fr.f.at(i, j)));
      worst = std::max(worst, euclid_norm(rec.t.at(i, j) - fr.t.at(i, j)));
    }
  CHECK(worst < 1e-10);
  CHECK(max_front_invariant_violation(rec) < 1e-12);

  // reconstruct is insensitive to positive pointwise rescalings of s±
  for (int j = 0; j < 17; ++j)
    for (int i = 0; i < 17; ++i) {
      sc.sp.at(i, j) *= 1.0 + 0.5 * std::abs(std::sin(i + 2.0 * j));
      sc.sm.at(i, j) *= 2.0 + std::cos(3.0 * i - j);
    }
  const FrontGrid rec2 = reconstruct_front(sc, split.qplus, split.qminus);
  worst = 0.0;
  for (int j = 0; j < 17; ++j)
    for (int i = 0; i < 17; ++i)
      worst = std::max(worst, euclid_norm(rec2.f.at(i, j) - fr.f.at(i, j)));
  CHECK(worst < 1e-10);
}

TEST_CASE("rescaled fixed spheres reconstruct the parallel front") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 9);
  const SphereCongruenceGrid sc = curvature_spheres(fr, phi);
  const AmbientSplit split = AmbientSplit::standard();
  for (double t : {0.3, -0.7}) {
    const FrontGrid via_q = reconstruct_front(sc, std::exp(t) * split.qplus,
                                              std::exp(-t) * split.qminus);
    const FrontGrid via_formula = parallel_front(fr, t);
    double worst = 0.0;
    for (int j = 0; j < 9; ++j)
      for (int i = 0; i < 9; ++i) {
        worst = std::max(worst, euclid_norm(via_q.f.at(i, j) - via_formula.f.at(i, j)));
        worst = std::max(worst, euclid_norm(via_q.t.at(i, j) - via_formula.t.at(i, j)));
      }
    CAPTURE(t);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("reconstruction error paths") {
  const HarmonicPotential phi = phi_default();
  const FrontGrid fr = exact_front(phi, 9);
  const SphereCongruenceGrid sc = curvature_spheres(fr, phi);
  const AmbientSplit split = AmbientSplit::standard();

  CHECK_THROWS_AS((void)reconstruct_front(sc, split.qplus, split.qplus), Error);
  try {
    (void)reconstruct_front(sc, split.qplus, 2.0 * split.qplus);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ContactSpanDegenerate);
  }

  // a congruence hitting the point sphere complex gets flagged
  SphereCongruenceGrid bad = sc;
  bad.sp.at(4, 4) = SigVec::r42(0, 0, 1, 1, 0, 0);  // null, orthogonal to p
  const FrontGrid rec = reconstruct_front(bad, split.qplus, split.qminus);
  CHECK(int(rec.singular.at(4, 4)) == 1);
}
