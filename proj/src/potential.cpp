#include "flatfront/potential.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx z, int n) {
  cplx acc(1.0, 0.0);
  for (int k = 0; k < n; ++k) acc *= z;
  return acc;
}

double mpow(double x, int n) {
  double acc = 1.0;
  for (int k = 0; k < n; ++k) acc *= x;
  return acc;
}

void accumulate(const PotentialTerm& t, double u, double v, PotentialJet& jet) {
  const double c = t.coef;
  switch (t.kind) {
    case TermKind::Constant:
      jet.phi += c;
      break;
    case TermKind::LinearU:
      jet.phi += c * u;
      jet.phi_u += c;
      break;
    case TermKind::LinearV:
      jet.phi += c * v;
      jet.phi_v += c;
      break;
    case TermKind::RePoly:
    case TermKind::ImPoly: {
      const int n = t.n;
      const cplx z(u, v);
      const cplx zn = ipow(z, n);
      const cplx zn1 = n >= 1 ? ipow(z, n - 1) : cplx(0, 0);
      const cplx zn2 = n >= 2 ? ipow(z, n - 2) : cplx(0, 0);
      const bool re = t.kind == TermKind::RePoly;
      auto part = [re](cplx w) { return re ? w.real() : w.imag(); };
      jet.phi += c * part(zn);
      // d/du ~ multiplication by n z^{n-1}; d/dv ~ by i n z^{n-1}
      jet.phi_u += c * n * part(zn1);
      jet.phi_v += c * n * part(cplx(0, 1) * zn1);
      const double huu = c * n * (n - 1) * part(zn2);
      jet.phi_uu += huu;
      jet.phi_uv += c * n * (n - 1) * part(cplx(0, 1) * zn2);
      jet.phi_vv += -huu;
      break;
    }
    case TermKind::ExpCos:
    case TermKind::ExpSin: {
      const double a = t.a;
      const double ea = std::exp(a * u);
      const double trig = t.kind == TermKind::ExpCos ? std::cos(a * v) : std::sin(a * v);
      const double cotrig = t.kind == TermKind::ExpCos ? -std::sin(a * v) : std::cos(a * v);
      const double val = c * ea * trig;
      jet.phi += val;
      jet.phi_u += a * val;
      jet.phi_v += c * a * ea * cotrig;
      const double huu = a * a * val;
      jet.phi_uu += huu;
      jet.phi_uv += c * a * a * ea * cotrig;
      jet.phi_vv += -huu;
      break;
    }
    case TermKind::Monomial: {
      const int p = t.p, q = t.q;
      jet.phi += c * mpow(u, p) * mpow(v, q);
      if (p >= 1) jet.phi_u += c * p * mpow(u, p - 1) * mpow(v, q);
      if (q >= 1) jet.phi_v += c * q * mpow(u, p) * mpow(v, q - 1);
      if (p >= 2) jet.phi_uu += c * p * (p - 1) * mpow(u, p - 2) * mpow(v, q);
      if (p >= 1 && q >= 1) jet.phi_uv += c * p * q * mpow(u, p - 1) * mpow(v, q - 1);
      if (q >= 2) jet.phi_vv += c * q * (q - 1) * mpow(u, p) * mpow(v, q - 2);
      break;
    }
  }
}

int parse_int(const std::string& s, const std::string& ctx) {
  try {
    size_t pos = 0;
    int out = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return out;
  } catch (const std::exception&) {
    fail(Errc::ConfigParse, "potential term " + ctx + ": bad integer '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& ctx) {
  try {
    size_t pos = 0;
    double out = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return out;
  } catch (const std::exception&) {
    fail(Errc::ConfigParse, "potential term " + ctx + ": bad number '" + s + "'");
  }
}

}  // namespace

PotentialJet HarmonicPotential::eval(double u, double v) const {
  PotentialJet jet;
  for (const PotentialTerm& t : terms_) accumulate(t, u, v, jet);
  // For the analytic harmonic kinds the uu and vv contributions are exact
  // negatives termwise, so this sum is an exact zero in floating point.
  jet.harmonic_residual = jet.phi_uu + jet.phi_vv;
  return jet;
}

void HarmonicPotential::require_admissible(
    const std::vector<std::pair<double, double>>& probes) const {
  for (const auto& [u, v] : probes) {
    const PotentialJet jet = eval(u, v);
    const double scale = 1.0 + std::abs(jet.phi_uu) + std::abs(jet.phi_vv);
    if (std::abs(jet.harmonic_residual) > 1e-12 * scale)
      fail(Errc::NotHarmonic, "potential is not harmonic (phi_uu + phi_vv != 0 at u=" +
                                  std::to_string(u) + ", v=" + std::to_string(v) + ")");
  }
}

PotentialTerm HarmonicPotential::parse_term(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() < 2) fail(Errc::ConfigParse, "potential term '" + text + "': expected kind:coef");

  PotentialTerm t;
  const std::string& kind = parts[0];
  t.coef = parse_double(parts[1], text);
  auto want = [&](size_t n) {
    if (parts.size() != n)
      fail(Errc::ConfigParse, "potential term '" + text + "': wrong parameter count");
  };
  if (kind == "constant") {
    want(2);
    t.kind = TermKind::Constant;
  } else if (kind == "linear_u") {
    want(2);
    t.kind = TermKind::LinearU;
  } else if (kind == "linear_v") {
    want(2);
    t.kind = TermKind::LinearV;
  } else if (kind == "re_poly") {
    want(3);
    t.kind = TermKind::RePoly;
    t.n = parse_int(parts[2], text);
  } else if (kind == "im_poly") {
    want(3);
    t.kind = TermKind::ImPoly;
    t.n = parse_int(parts[2], text);
  } else if (kind == "exp_cos") {
    want(3);
    t.kind = TermKind::ExpCos;
    t.a = parse_double(parts[2], text);
  } else if (kind == "exp_sin") {
    want(3);
    t.kind = TermKind::ExpSin;
    t.a = parse_double(parts[2], text);
  } else if (kind == "monomial") {
    want(4);
    t.kind = TermKind::Monomial;
    t.p = parse_int(parts[2], text);
    t.q = parse_int(parts[3], text);
  } else {
    fail(Errc::ConfigParse, "potential term '" + text + "': unknown kind '" + kind + "'");
  }
  return t;
}

HarmonicPotential HarmonicPotential::parse(const std::vector<std::string>& term_texts) {
  std::vector<PotentialTerm> terms;
  terms.reserve(term_texts.size());
  for (const std::string& s : term_texts) terms.push_back(parse_term(s));
  return HarmonicPotential(std::move(terms));
}

std::string HarmonicPotential::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const PotentialTerm& t : terms_) {
    if (!first) os << " ";
    first = false;
    switch (t.kind) {
      case TermKind::Constant: os << "constant:" << t.coef; break;
      case TermKind::LinearU: os << "linear_u:" << t.coef; break;
      case TermKind::LinearV: os << "linear_v:" << t.coef; break;
      case TermKind::RePoly: os << "re_poly:" << t.coef << ":" << t.n; break;
      case TermKind::ImPoly: os << "im_poly:" << t.coef << ":" << t.n; break;
      case TermKind::ExpCos: os << "exp_cos:" << t.coef << ":" << t.a; break;
      case TermKind::ExpSin: os << "exp_sin:" << t.coef << ":" << t.a; break;
      case TermKind::Monomial: os << "monomial:" << t.coef << ":" << t.p << ":" << t.q; break;
    }
  }
  return os.str();
}

}  // namespace flatfront
