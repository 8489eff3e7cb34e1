#pragma once

#include "flatfront/linalg.hpp"
#include "flatfront/sigvec.hpp"

namespace flatfront {

/// Rank-two skew endomorphism a ^ b with the action convention
///   (a ^ b) z = <a,z> b - <b,z> a.
/// The sign of the convention is pinned by the conservation identity
/// d(T p±) = 0, which the transport tests check.
struct SkewEndo {
  SigVec a, b;

  SkewEndo() : a(Sig::R42), b(Sig::R42) {}
  SkewEndo(SigVec a_, SigVec b_) : a(std::move(a_)), b(std::move(b_)) {}
};

inline SigVec wedge_apply(const SkewEndo& e, const SigVec& z) {
  return inner(e.a, z) * e.b - inner(e.b, z) * e.a;
}

/// Matrix of a ^ b acting on R42 coordinates: b (eta a)^t - a (eta b)^t.
inline Mat6 to_matrix(const SkewEndo& e) {
  const double* w = detail::metric_weights(Sig::R42);
  Mat6 out;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out(r, c) = e.b[r] * w[c] * e.a[c] - e.a[r] * w[c] * e.b[c];
  return out;
}

}  // namespace flatfront
