#include "flatfront/front.hpp"

#include <algorithm>
#include <cmath>

#include "flatfront/fd.hpp"

namespace flatfront {

FrontGrid front_from_frame(const FrameGrid& fg) {
  FrontGrid fr;
  fr.dom = fg.dom;
  fr.lambda = fg.lambda;
  fr.f = Grid<SigVec>(fg.dom.nu, fg.dom.nv, SigVec(Sig::R31));
  fr.t = Grid<SigVec>(fg.dom.nu, fg.dom.nv, SigVec(Sig::R31));
  fr.e1 = fg.e1;
  fr.e2 = fg.e2;
  fr.has_frame = true;
  for (int j = 0; j < fg.dom.nv; ++j)
    for (int i = 0; i < fg.dom.nu; ++i) {
      fr.f.at(i, j) = 0.5 * (fg.hp.at(i, j) - fg.hm.at(i, j));
      fr.t.at(i, j) = 0.5 * (fg.hp.at(i, j) + fg.hm.at(i, j));
    }
  metric_and_curvatures(fr);
  return fr;
}

void metric_and_curvatures(FrontGrid& front, int fd_order) {
  const GridDomain& dom = front.dom;
  front.E = Grid<double>(dom.nu, dom.nv);
  front.G = Grid<double>(dom.nu, dom.nv);
  front.k1 = Grid<double>(dom.nu, dom.nv);
  front.k2 = Grid<double>(dom.nu, dom.nv);
  front.singular = Grid<uint8_t>(dom.nu, dom.nv, 0);
  const bool fourth = fd_order >= 4;

  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const SigVec fu = fourth ? fd4_deriv_u(front.f, i, j, dom.hu())
                               : fd_deriv_u(front.f, i, j, dom.hu());
      const SigVec fv = fourth ? fd4_deriv_v(front.f, i, j, dom.hv())
                               : fd_deriv_v(front.f, i, j, dom.hv());
      const SigVec tu = fourth ? fd4_deriv_u(front.t, i, j, dom.hu())
                               : fd_deriv_u(front.t, i, j, dom.hu());
      const SigVec tv = fourth ? fd4_deriv_v(front.t, i, j, dom.hv())
                               : fd_deriv_v(front.t, i, j, dom.hv());
      const double e = inner(fu, fu);
      const double g = inner(fv, fv);
      front.E.at(i, j) = e;
      front.G.at(i, j) = g;
      front.k1.at(i, j) = e > 0.0 ? -inner(tu, fu) / e : 0.0;
      front.k2.at(i, j) = g > 0.0 ? -inner(tv, fv) / g : 0.0;
      const double immersion = std::sqrt(std::max(0.0, std::min(e, g)));
      if (immersion < kSingularEps) front.singular.at(i, j) = 1;
    }
}

MetricDeviation metric_reference_deviation(const FrontGrid& front, const HarmonicPotential& phi) {
  MetricDeviation dev;
  const GridDomain& dom = front.dom;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double ph = phi.eval(dom.u(i), dom.v(j)).phi;
      const double ch = std::cosh(ph), sh = std::sinh(ph);
      dev.e_dev = std::max(dev.e_dev, std::abs(front.E.at(i, j) - ch * ch));
      dev.g_dev = std::max(dev.g_dev, std::abs(front.G.at(i, j) - sh * sh));
      dev.k1_dev = std::max(dev.k1_dev, std::abs(front.k1.at(i, j) - std::tanh(ph)));
      const bool gated = std::sqrt(std::max(0.0, std::min(front.E.at(i, j), front.G.at(i, j)))) >
                         kFlatnessGate;
      if (gated) dev.k2_dev = std::max(dev.k2_dev, std::abs(front.k2.at(i, j) - 1.0 / std::tanh(ph)));
    }
  return dev;
}

FrontGrid parallel_front(const FrontGrid& front, double t_param) {
  const double ch = std::cosh(t_param), sh = std::sinh(t_param);
  FrontGrid out;
  out.dom = front.dom;
  out.lambda = front.lambda;
  out.f = Grid<SigVec>(front.dom.nu, front.dom.nv, SigVec(Sig::R31));
  out.t = Grid<SigVec>(front.dom.nu, front.dom.nv, SigVec(Sig::R31));
  out.has_frame = false;
  for (int j = 0; j < front.dom.nv; ++j)
    for (int i = 0; i < front.dom.nu; ++i) {
      out.f.at(i, j) = ch * front.f.at(i, j) + sh * front.t.at(i, j);
      out.t.at(i, j) = sh * front.f.at(i, j) + ch * front.t.at(i, j);
    }
  metric_and_curvatures(out);
  return out;
}

double max_front_invariant_violation(const FrontGrid& front) {
  double worst = 0.0;
  for (int j = 0; j < front.dom.nv; ++j)
    for (int i = 0; i < front.dom.nu; ++i) {
      const SigVec& f = front.f.at(i, j);
      const SigVec& t = front.t.at(i, j);
      worst = std::max(worst, std::abs(inner(f, f) + 1.0));
      worst = std::max(worst, std::abs(inner(t, t) - 1.0));
      worst = std::max(worst, std::abs(inner(f, t)));
    }
  return worst;
}

double flatness_deviation(const FrontGrid& front) {
  double worst = 0.0;
  for (int j = 0; j < front.dom.nv; ++j)
    for (int i = 0; i < front.dom.nu; ++i) {
      const double e = front.E.at(i, j), g = front.G.at(i, j);
      if (std::sqrt(std::max(0.0, std::min(e, g))) <= kFlatnessGate) continue;
      worst = std::max(worst, std::abs(front.k1.at(i, j) * front.k2.at(i, j) - 1.0));
    }
  return worst;
}

}  // namespace flatfront
