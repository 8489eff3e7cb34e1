#pragma once

#include <vector>

#include "flatfront/errors.hpp"

namespace flatfront {

/// Rectangular curvature-line coordinate patch.  nu == 1 (with u_min == u_max)
/// degenerates to a single coordinate line, in which case only the
/// v-direction is integrated; same for nv.
struct GridDomain {
  double u_min = -1.0, u_max = 1.0;
  double v_min = -1.0, v_max = 1.0;
  int nu = 65, nv = 65;
  int base_i = -1, base_j = -1;  // -1: center of the grid

  double hu() const { return nu > 1 ? (u_max - u_min) / (nu - 1) : 0.0; }
  double hv() const { return nv > 1 ? (v_max - v_min) / (nv - 1) : 0.0; }
  double u(int i) const { return u_min + hu() * i; }
  double v(int j) const { return v_min + hv() * j; }
  int bi() const { return base_i >= 0 ? base_i : (nu - 1) / 2; }
  int bj() const { return base_j >= 0 ? base_j : (nv - 1) / 2; }

  void validate() const {
    if (nu < 1 || nv < 1) fail(Errc::DegenerateConfiguration, "grid: nu, nv must be >= 1");
    if (nu >= 2 && !(u_max > u_min))
      fail(Errc::DegenerateConfiguration, "grid: u_max must exceed u_min");
    if (nv >= 2 && !(v_max > v_min))
      fail(Errc::DegenerateConfiguration, "grid: v_max must exceed v_min");
    if (nu == 1 && u_min != u_max)
      fail(Errc::DegenerateConfiguration, "grid: nu == 1 requires u_min == u_max");
    if (nv == 1 && v_min != v_max)
      fail(Errc::DegenerateConfiguration, "grid: nv == 1 requires v_min == v_max");
    if (bi() < 0 || bi() >= nu || bj() < 0 || bj() >= nv)
      fail(Errc::DegenerateConfiguration, "grid: base index outside the grid");
  }

  /// Same patch with halved step (2n - 1 points per axis).
  GridDomain refined() const {
    GridDomain out = *this;
    if (nu > 1) out.nu = 2 * nu - 1;
    if (nv > 1) out.nv = 2 * nv - 1;
    out.base_i = base_i >= 0 ? 2 * base_i : -1;
    out.base_j = base_j >= 0 ? 2 * base_j : -1;
    return out;
  }

  bool operator==(const GridDomain&) const = default;
};

template <class T>
struct Grid {
  int nu = 0, nv = 0;
  std::vector<T> cells;

  Grid() = default;
  Grid(int nu_, int nv_, const T& init = T{})
      : nu(nu_), nv(nv_), cells(static_cast<size_t>(nu_) * nv_, init) {}

  T& at(int i, int j) { return cells[static_cast<size_t>(j) * nu + i]; }
  const T& at(int i, int j) const { return cells[static_cast<size_t>(j) * nu + i]; }
};

}  // namespace flatfront
