#pragma once

#include "flatfront/grid.hpp"
#include "flatfront/sigvec.hpp"

namespace flatfront {

// Second-order finite differences on grids: central in the interior,
// one-sided three-point at the boundary.

template <class T>
T fd_deriv_u(const Grid<T>& g, int i, int j, double hu) {
  if (g.nu == 1) return g.at(i, j) * 0.0;
  if (i == 0) return (-3.0 * g.at(0, j) + 4.0 * g.at(1, j) - g.at(2, j)) * (0.5 / hu);
  if (i == g.nu - 1)
    return (3.0 * g.at(i, j) - 4.0 * g.at(i - 1, j) + g.at(i - 2, j)) * (0.5 / hu);
  return (g.at(i + 1, j) - g.at(i - 1, j)) * (0.5 / hu);
}

template <class T>
T fd_deriv_v(const Grid<T>& g, int i, int j, double hv) {
  if (g.nv == 1) return g.at(i, j) * 0.0;
  if (j == 0) return (-3.0 * g.at(i, 0) + 4.0 * g.at(i, 1) - g.at(i, 2)) * (0.5 / hv);
  if (j == g.nv - 1)
    return (3.0 * g.at(i, j) - 4.0 * g.at(i, j - 1) + g.at(i, j - 2)) * (0.5 / hv);
  return (g.at(i, j + 1) - g.at(i, j - 1)) * (0.5 / hv);
}

/// Symmetric four-point stencil for the mixed derivative; interior only.
template <class T>
T fd_deriv_uv(const Grid<T>& g, int i, int j, double hu, double hv) {
  return (g.at(i + 1, j + 1) - g.at(i + 1, j - 1) - g.at(i - 1, j + 1) + g.at(i - 1, j - 1)) *
         (0.25 / (hu * hv));
}

// Fourth-order five-point first derivatives (central where possible, offset
// and one-sided inside the two boundary layers).  Falls back to the
// second-order stencils on grids too small to host five points.

template <class T>
T fd4_line(const Grid<T>& g, int i, int j, double h, int n, bool along_u) {
  auto at = [&](int k) -> const T& { return along_u ? g.at(k, j) : g.at(i, k); };
  const int p = along_u ? i : j;
  if (n < 5) return along_u ? fd_deriv_u(g, i, j, h) : fd_deriv_v(g, i, j, h);
  const double s = 1.0 / (12.0 * h);
  if (p >= 2 && p <= n - 3)
    return (at(p - 2) - 8.0 * at(p - 1) + 8.0 * at(p + 1) - at(p + 2)) * s;
  if (p == 0)
    return (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * s;
  if (p == 1)
    return (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * s;
  if (p == n - 2)
    return (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) -
            at(n - 5)) * s;
  return (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) +
          3.0 * at(n - 5)) * s;
}

template <class T>
T fd4_deriv_u(const Grid<T>& g, int i, int j, double hu) {
  if (g.nu == 1) return g.at(i, j) * 0.0;
  return fd4_line(g, i, j, hu, g.nu, true);
}

template <class T>
T fd4_deriv_v(const Grid<T>& g, int i, int j, double hv) {
  if (g.nv == 1) return g.at(i, j) * 0.0;
  return fd4_line(g, i, j, hv, g.nv, false);
}

inline SigVec fd_zero_like(const SigVec& x) { return SigVec(x.sig); }

}  // namespace flatfront
