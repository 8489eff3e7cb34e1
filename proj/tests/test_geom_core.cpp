#include <cmath>
#include <random>

#include "doctest.h"
#include "flatfront/cross_ratio.hpp"
#include "flatfront/linalg.hpp"
#include "flatfront/sigvec.hpp"
#include "flatfront/skew.hpp"

using namespace flatfront;

namespace {

SigVec random_r42(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return SigVec::r42(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("inner products of the fixed basis") {
  const AmbientSplit s = AmbientSplit::standard();
  CHECK(inner(s.p, s.p) == -1.0);          // point sphere complex
  CHECK(inner(s.q, s.q) == 1.0);
  CHECK(inner(s.p, s.q) == 0.0);
  CHECK(inner(s.qplus, s.qminus) == -2.0);
  CHECK(inner(s.qplus, s.qplus) == 0.0);
  CHECK(inner(s.qminus, s.qminus) == 0.0);
  CHECK(inner(basis::y(1), basis::y(2)) == 0.0);
  CHECK(inner(basis::y(0), basis::y(0)) == -1.0);
}

TEST_CASE("inner rejects mismatched signatures") {
  CHECK_THROWS_AS((void)inner(basis::p(), SigVec::r31(1, 0, 0, 0)), Error);
  try {
    (void)inner(basis::p(), SigVec::r31(1, 0, 0, 0));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SignatureMismatch);
  }
}

TEST_CASE("inner is symmetric and bilinear") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 64; ++k) {
    const SigVec x = random_r42(rng), y = random_r42(rng), z = random_r42(rng);
    const double a = d(rng), b = d(rng);
    CHECK(inner(x, y) == doctest::Approx(inner(y, x)).epsilon(1e-14));
    CHECK(inner(a * x + b * y, z) ==
          doctest::Approx(a * inner(x, z) + b * inner(y, z)).epsilon(1e-12));
  }
}

TEST_CASE("R31 embeds into the {q+,q-} orthogonal complement") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 16; ++k) {
    const SigVec x31 = SigVec::r31(d(rng), d(rng), d(rng), d(rng));
    const SigVec x = embed_r42(x31);
    CHECK(inner(x, basis::qplus()) == 0.0);
    CHECK(inner(x, basis::qminus()) == 0.0);
    CHECK(inner(x, x) == doctest::Approx(inner(x31, x31)).epsilon(1e-15));
    const SigVec back = r31_part(x);
    for (int i = 0; i < 4; ++i) CHECK(back[i] == x31[i]);
  }
}

TEST_CASE("wedge action convention") {
  const SigVec p = basis::p(), q = basis::q();
  // (p ^ q) p = <p,p> q - <q,p> p = -q
  const SigVec r = wedge_apply(SkewEndo(p, q), p);
  CHECK(euclid_norm(r + q) == doctest::Approx(0.0));

  std::mt19937 rng(3);
  const SigVec a = random_r42(rng), b = random_r42(rng);
  // kernel: z orthogonal to both a and b
  SigVec z = random_r42(rng);
  // project z off a, b using the indefinite metric via a small Gram solve
  {
    const double gaa = inner(a, a), gab = inner(a, b), gbb = inner(b, b);
    const double det = gaa * gbb - gab * gab;
    const double za = inner(a, z), zb = inner(b, z);
    const double ca = (gbb * za - gab * zb) / det;
    const double cb = (gaa * zb - gab * za) / det;
    z -= ca * a + cb * b;
  }
  CHECK(euclid_norm(wedge_apply(SkewEndo(a, b), z)) < 1e-12);
  CHECK(euclid_norm(wedge_apply(SkewEndo(a, a), random_r42(rng))) < 1e-12);
}

TEST_CASE("wedge endomorphisms are skew-adjoint") {
  std::mt19937 rng(11);
  for (int k = 0; k < 32; ++k) {
    const SkewEndo e(random_r42(rng), random_r42(rng));
    const SigVec x = random_r42(rng), y = random_r42(rng);
    CHECK(inner(wedge_apply(e, x), y) + inner(x, wedge_apply(e, y)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // matrix form agrees with the action
    const SigVec mx = apply(to_matrix(e), x);
    CHECK(euclid_norm(mx - wedge_apply(e, x)) < 1e-12);
  }
}

TEST_CASE("cross ratio: harmonic separation of s1 ± s2") {
  std::mt19937 rng(5);
  const SigVec a = random_r42(rng), b = random_r42(rng);
  const SigVec c = a + b, d = a - b;
  CHECK(cross_ratio(a, b, c, d) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cross ratio from principal curvature values") {
  // (k1-1)/(k1+1) * (k2+1)/(k2-1) at k1 = tanh 1, k2 = coth 1
  const double k1 = std::tanh(1.0), k2 = 1.0 / std::tanh(1.0);
  const double cr = (k1 - 1.0) / (k1 + 1.0) * (k2 + 1.0) / (k2 - 1.0);
  CHECK(std::abs(cr + 1.0) < 1e-12);

  // the same configuration through the curvature-sphere parametrization
  std::mt19937 rng(6);
  const SigVec sp = random_r42(rng), sm = random_r42(rng);
  const SigVec s1 = -(1.0 + k1) * sp - (1.0 - k1) * sm;
  const SigVec s2 = -(1.0 + k2) * sp - (1.0 - k2) * sm;
  CHECK(cross_ratio(sp, sm, s1, s2) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cross ratio edge cases") {
  std::mt19937 rng(9);
  const SigVec a = random_r42(rng), b = random_r42(rng);
  const SigVec c = 0.3 * a + 1.7 * b;
  CHECK(cross_ratio(a, b, c, c) == doctest::Approx(1.0).epsilon(1e-12));

  // independent rescaling of each argument
  const SigVec d = 2.0 * a - 0.5 * b;
  const double cr = cross_ratio(a, b, c, d);
  CHECK(cross_ratio(3.0 * a, -2.0 * b, 0.7 * c, 5.0 * d) == doctest::Approx(cr).epsilon(1e-12));

  // swap of the last pair inverts the value
  CHECK(cross_ratio(a, b, c, d) * cross_ratio(a, b, d, c) == doctest::Approx(1.0).epsilon(1e-12));

  // off-line point
  SigVec off = random_r42(rng);
  CHECK_THROWS_AS((void)cross_ratio(a, b, off, d), Error);

  // dependent a, b
  CHECK_THROWS_AS((void)cross_ratio(a, 2.0 * a, c, d), Error);
}

TEST_CASE("contact with the fixed spheres") {
  const AmbientSplit s = AmbientSplit::standard();
  // s± at the canonical base point, phi = 1
  const double phi = 1.0;
  const SigVec f0 = embed_r42(SigVec::r31(1, 0, 0, 0));
  const SigVec t0 = embed_r42(SigVec::r31(0, 0, 0, 1));
  const SigVec s1 = std::cosh(phi) * (s.p + t0) + std::sinh(phi) * (s.q + f0);
  const SigVec splus = std::exp(phi) * (s.p + s.q + t0 + f0);
  CHECK(check_contact(splus, s.qplus) == doctest::Approx(0.0));
  CHECK(check_contact(s.qplus, s.qplus) == 0.0);
  CHECK(check_contact(s1, s.qplus) == doctest::Approx(-std::exp(-phi)).epsilon(1e-14));
}
