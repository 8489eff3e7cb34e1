#pragma once

#include <string>
#include <vector>

namespace flatfront {

// Potential term kinds.  All but Monomial are harmonic by construction;
// Monomial admits non-harmonic choices and exists so the admissibility gate
// has something real to reject.
enum class TermKind {
  Constant,  // c
  LinearU,   // c u
  LinearV,   // c v
  RePoly,    // c Re((u + i v)^n)
  ImPoly,    // c Im((u + i v)^n)
  ExpCos,    // c e^{a u} cos(a v)
  ExpSin,    // c e^{a u} sin(a v)
  Monomial,  // c u^p v^q
};

struct PotentialTerm {
  TermKind kind = TermKind::Constant;
  double coef = 0.0;
  int n = 0;       // RePoly / ImPoly degree
  double a = 0.0;  // ExpCos / ExpSin frequency
  int p = 0, q = 0;  // Monomial exponents
};

/// Value and exact partial derivatives of the potential at one point, plus
/// the harmonicity residual phi_uu + phi_vv (the admissibility operator).
struct PotentialJet {
  double phi = 0.0;
  double phi_u = 0.0, phi_v = 0.0;
  double phi_uu = 0.0, phi_uv = 0.0, phi_vv = 0.0;
  double harmonic_residual = 0.0;
};

class HarmonicPotential {
 public:
  HarmonicPotential() = default;
  explicit HarmonicPotential(std::vector<PotentialTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<PotentialTerm>& terms() const { return terms_; }

  PotentialJet eval(double u, double v) const;

  /// Throws NotHarmonic when the residual exceeds 1e-12 at any probe point.
  void require_admissible(const std::vector<std::pair<double, double>>& probes) const;

  /// "kind:coef", "kind:coef:param" e.g. "linear_u:1.0", "re_poly:0.3:2",
  /// "exp_cos:0.5:2.0", "monomial:1.0:1:1".
  static PotentialTerm parse_term(const std::string& text);
  static HarmonicPotential parse(const std::vector<std::string>& term_texts);

  std::string describe() const;

 private:
  std::vector<PotentialTerm> terms_;
};

}  // namespace flatfront
