#pragma once

#include "flatfront/sigvec.hpp"

namespace flatfront {

/// Cross ratio of four points on one projective line, in the affine chart
/// where a is infinity and b is zero: writing c = alpha a + beta b and
/// d = gamma a + delta b, returns (beta/alpha) * (gamma/delta).
/// Equals -1 exactly when {c,d} separate {a,b} harmonically.
///
/// Throws NotCollinear when the least-squares fit of c or d onto span{a,b}
/// leaves a relative residual above 1e-8, and DegenerateConfiguration when
/// a, b are dependent or a required coefficient vanishes.
double cross_ratio(const SigVec& a, const SigVec& b, const SigVec& c, const SigVec& d);

}  // namespace flatfront
