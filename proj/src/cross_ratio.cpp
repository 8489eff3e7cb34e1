#include "flatfront/cross_ratio.hpp"

#include <cmath>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {

constexpr double kCollinearTol = 1e-8;

struct LineCoeffs {
  double alpha, beta;
};

// Least-squares fit x ~ alpha a + beta b in plain coordinates.
LineCoeffs fit_on_line(const SigVec& a, const SigVec& b, const SigVec& x) {
  const double aa = euclid_dot(a, a);
  const double ab = euclid_dot(a, b);
  const double bb = euclid_dot(b, b);
  const double det = aa * bb - ab * ab;
  if (det <= 1e-14 * aa * bb)
    fail(Errc::DegenerateConfiguration, "cross_ratio: a and b are projectively dependent");
  const double ax = euclid_dot(a, x);
  const double bx = euclid_dot(b, x);
  LineCoeffs out;
  out.alpha = (bb * ax - ab * bx) / det;
  out.beta = (aa * bx - ab * ax) / det;

  SigVec r = x - out.alpha * a - out.beta * b;
  const double scale = euclid_norm(x);
  if (scale > 0.0 && euclid_norm(r) > kCollinearTol * scale)
    fail(Errc::NotCollinear, "cross_ratio: point not on the line spanned by a, b");
  return out;
}

}  // namespace

double cross_ratio(const SigVec& a, const SigVec& b, const SigVec& c, const SigVec& d) {
  const LineCoeffs cc = fit_on_line(a, b, c);
  const LineCoeffs dd = fit_on_line(a, b, d);

  // Guard the affine-chart divisions: c must not coincide with b (alpha = 0)
  // nor d with a (delta = 0).
  const double cscale = std::abs(cc.alpha) + std::abs(cc.beta);
  const double dscale = std::abs(dd.alpha) + std::abs(dd.beta);
  if (std::abs(cc.alpha) < 1e-12 * cscale || std::abs(dd.beta) < 1e-12 * dscale)
    fail(Errc::DegenerateConfiguration, "cross_ratio: degenerate point configuration");

  return (cc.beta / cc.alpha) * (dd.alpha / dd.beta);
}

}  // namespace flatfront
