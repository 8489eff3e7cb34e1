#pragma once

#include <iosfwd>
#include <string>

#include "flatfront/front.hpp"

namespace flatfront {

/// Shortest round-trip decimal form (17 significant digits), locale-free.
std::string fmt17(double x);

/// Wavefront OBJ with quad faces over the grid.  model == "poincare" writes
/// Poincare-ball coordinates (y1,y2,y3)/(1+y0); model == "raw" writes the
/// spatial hyperboloid coordinates (y1,y2,y3) with y0 recoverable from the
/// unit constraint.  Singular-flagged vertex ids are listed in a comment
/// block up front.
void write_obj(const FrontGrid& front, std::ostream& out, const std::string& model);

/// One row per gridpoint: u, v, f(4), t(4), E, G, kappa1, kappa2, singular.
void write_csv(const FrontGrid& front, std::ostream& out);

/// File wrappers; throw Io on failure.
void export_mesh(const FrontGrid& front, const std::string& path, const std::string& format,
                 const std::string& model);

}  // namespace flatfront
