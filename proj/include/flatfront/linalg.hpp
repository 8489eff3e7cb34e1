#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

#include "flatfront/errors.hpp"
#include "flatfront/sigvec.hpp"

namespace flatfront {

/// Dense fixed-size square matrix, row major.  Big enough for the 6x6
/// pseudo-orthogonal transports and the 4x4 frame alignments used here.
template <int N>
struct Mat {
  std::array<double, static_cast<size_t>(N) * N> m{};

  static Mat identity() {
    Mat out;
    for (int i = 0; i < N; ++i) out(i, i) = 1.0;
    return out;
  }

  double operator()(int r, int c) const { return m[static_cast<size_t>(r) * N + c]; }
  double& operator()(int r, int c) { return m[static_cast<size_t>(r) * N + c]; }

  Mat& operator+=(const Mat& o) {
    for (size_t i = 0; i < m.size(); ++i) m[i] += o.m[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (size_t i = 0; i < m.size(); ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat& operator*=(double s) {
    for (double& x : m) x *= s;
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(double s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat out;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::array<double, N> apply(const std::array<double, N>& x) const {
    std::array<double, N> out{};
    for (int i = 0; i < N; ++i) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) acc += (*this)(i, j) * x[j];
      out[i] = acc;
    }
    return out;
  }

  Mat transposed() const {
    Mat out;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double frobenius() const {
    double acc = 0.0;
    for (double x : m) acc += x * x;
    return std::sqrt(acc);
  }

  double max_abs() const {
    double acc = 0.0;
    for (double x : m) acc = std::max(acc, std::abs(x));
    return acc;
  }

  /// Gauss-Jordan with partial pivoting.
  Mat inverse() const {
    Mat a = *this;
    Mat inv = identity();
    for (int col = 0; col < N; ++col) {
      int piv = col;
      for (int r = col + 1; r < N; ++r)
        if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
      if (std::abs(a(piv, col)) < 1e-14)
        fail(Errc::DegenerateConfiguration, "Mat::inverse: singular matrix");
      if (piv != col)
        for (int j = 0; j < N; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      const double d = 1.0 / a(col, col);
      for (int j = 0; j < N; ++j) {
        a(col, j) *= d;
        inv(col, j) *= d;
      }
      for (int r = 0; r < N; ++r) {
        if (r == col) continue;
        const double f = a(r, col);
        if (f == 0.0) continue;
        for (int j = 0; j < N; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }
};

using Mat4 = Mat<4>;
using Mat6 = Mat<6>;

/// Metric matrix of R42 in the (p, q, y0..y3) basis.
inline Mat6 eta42() {
  Mat6 out;
  const double w[6] = {-1, 1, -1, 1, 1, 1};
  for (int i = 0; i < 6; ++i) out(i, i) = w[i];
  return out;
}

inline SigVec apply(const Mat6& m, const SigVec& x) {
  if (x.sig != Sig::R42) fail(Errc::SignatureMismatch, "Mat6 apply: expected R42");
  SigVec out(Sig::R42);
  for (int i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

inline SigVec apply(const Mat4& m, const SigVec& x) {
  if (x.sig != Sig::R31) fail(Errc::SignatureMismatch, "Mat4 apply: expected R31");
  SigVec out(Sig::R31);
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

/// Deviation of T from O(4,2): ||T^t eta T - eta||_F.
inline double orthogonality_defect(const Mat6& t) {
  const Mat6 eta = eta42();
  return (t.transposed() * eta * t - eta).frobenius();
}

}  // namespace flatfront
