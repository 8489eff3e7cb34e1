#pragma once

#include <array>
#include <cmath>

#include "flatfront/errors.hpp"

namespace flatfront {

// The three indefinite inner-product spaces in play.  Basis conventions:
//   R42 : (p, q, y0, y1, y2, y3), weights (-1, +1, -1, +1, +1, +1)
//   R31 : (y0, y1, y2, y3),       weights (-1, +1, +1, +1)
//   R11 : (p, q),                 weights (-1, +1)
// R31 is exactly the {q+, q-}-orthogonal block of R42, with q± = p ± q.
enum class Sig : int { R42 = 0, R31 = 1, R11 = 2 };

constexpr int sig_dim(Sig s) { return s == Sig::R42 ? 6 : (s == Sig::R31 ? 4 : 2); }

struct SigVec {
  Sig sig = Sig::R42;
  std::array<double, 6> c{};  // only the first sig_dim(sig) entries are active

  SigVec() = default;
  explicit SigVec(Sig s) : sig(s) {}
  SigVec(Sig s, std::array<double, 6> coords) : sig(s), c(coords) {}

  static SigVec r42(double p, double q, double y0, double y1, double y2, double y3) {
    return SigVec(Sig::R42, {p, q, y0, y1, y2, y3});
  }
  static SigVec r31(double y0, double y1, double y2, double y3) {
    return SigVec(Sig::R31, {y0, y1, y2, y3, 0, 0});
  }
  static SigVec r11(double p, double q) { return SigVec(Sig::R11, {p, q, 0, 0, 0, 0}); }

  int dim() const { return sig_dim(sig); }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }
  double& operator[](int i) { return c[static_cast<size_t>(i)]; }

  SigVec& operator+=(const SigVec& o) {
    if (sig != o.sig) fail(Errc::SignatureMismatch, "SigVec +: mismatched signature tags");
    for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
    return *this;
  }
  SigVec& operator-=(const SigVec& o) {
    if (sig != o.sig) fail(Errc::SignatureMismatch, "SigVec -: mismatched signature tags");
    for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
    return *this;
  }
  SigVec& operator*=(double s) {
    for (int i = 0; i < dim(); ++i) c[i] *= s;
    return *this;
  }

  friend SigVec operator+(SigVec a, const SigVec& b) { return a += b; }
  friend SigVec operator-(SigVec a, const SigVec& b) { return a -= b; }
  friend SigVec operator*(double s, SigVec a) { return a *= s; }
  friend SigVec operator*(SigVec a, double s) { return a *= s; }
  friend SigVec operator/(SigVec a, double s) { return a *= (1.0 / s); }
  friend SigVec operator-(SigVec a) { return a *= -1.0; }
};

namespace detail {
inline const double* metric_weights(Sig s) {
  static const double w42[6] = {-1, 1, -1, 1, 1, 1};
  static const double w31[6] = {-1, 1, 1, 1, 0, 0};
  static const double w11[6] = {-1, 1, 0, 0, 0, 0};
  switch (s) {
    case Sig::R42: return w42;
    case Sig::R31: return w31;
    default: return w11;
  }
}
}  // namespace detail

/// Signature-weighted dot product.  Both arguments must carry the same tag.
inline double inner(const SigVec& x, const SigVec& y) {
  if (x.sig != y.sig)
    fail(Errc::SignatureMismatch, "inner: mismatched signature tags");
  const double* w = detail::metric_weights(x.sig);
  double acc = 0.0;
  for (int i = 0; i < x.dim(); ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

inline double norm2(const SigVec& x) { return inner(x, x); }

/// Plain coordinate dot product (used for least squares and residual measures,
/// where the indefinite metric is the wrong tool).
inline double euclid_dot(const SigVec& x, const SigVec& y) {
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += x.c[i] * y.c[i];
  return acc;
}

inline double euclid_norm(const SigVec& x) { return std::sqrt(euclid_dot(x, x)); }

/// Embed R31 (or R11) into R42 by zero-padding the complementary block.
inline SigVec embed_r42(const SigVec& x) {
  switch (x.sig) {
    case Sig::R42: return x;
    case Sig::R31: return SigVec::r42(0, 0, x[0], x[1], x[2], x[3]);
    default: return SigVec::r42(x[0], x[1], 0, 0, 0, 0);
  }
}

/// Extract the R31 block of an R42 vector.
inline SigVec r31_part(const SigVec& x) {
  if (x.sig != Sig::R42) fail(Errc::SignatureMismatch, "r31_part: expected R42");
  return SigVec::r31(x[2], x[3], x[4], x[5]);
}

/// Extract the R11 block of an R42 vector.
inline SigVec r11_part(const SigVec& x) {
  if (x.sig != Sig::R42) fail(Errc::SignatureMismatch, "r11_part: expected R42");
  return SigVec::r11(x[0], x[1]);
}

namespace basis {
inline SigVec p() { return SigVec::r42(1, 0, 0, 0, 0, 0); }
inline SigVec q() { return SigVec::r42(0, 1, 0, 0, 0, 0); }
inline SigVec qplus() { return SigVec::r42(1, 1, 0, 0, 0, 0); }
inline SigVec qminus() { return SigVec::r42(1, -1, 0, 0, 0, 0); }
inline SigVec y(int i) {
  SigVec out(Sig::R42);
  out[2 + i] = 1.0;
  return out;
}
}  // namespace basis

/// The fixed orthogonal splitting R42 = R11 + R31 with its distinguished
/// point sphere complex p and the two infinity spheres q± = p ± q.
struct AmbientSplit {
  SigVec p, q, qplus, qminus;

  static AmbientSplit standard() {
    return AmbientSplit{basis::p(), basis::q(), basis::qplus(), basis::qminus()};
  }
};

/// Oriented-contact pairing of two sphere vectors; zero means the spheres
/// touch with matching orientation.
inline double check_contact(const SigVec& s, const SigVec& q) { return inner(s, q); }

/// Null 2-plane in R42: a contact element of Lie sphere geometry, spanned by
/// two null, mutually orthogonal generators.
struct ContactElement {
  SigVec s1{Sig::R42}, s2{Sig::R42};

  double max_invariant_violation() const {
    double worst = std::abs(inner(s1, s1));
    worst = std::max(worst, std::abs(inner(s2, s2)));
    return std::max(worst, std::abs(inner(s1, s2)));
  }
};

}  // namespace flatfront
