#pragma once

#include <string>
#include <vector>

#include "flatfront/grid.hpp"
#include "flatfront/potential.hpp"

namespace flatfront {

/// Run configuration, parsed from flat key-value text with dotted section
/// names (see docs/config.md for the key reference).
struct RunConfig {
  HarmonicPotential potential;
  GridDomain domain;
  std::vector<double> lambdas;
  int refinement_levels = 3;
  std::string output_dir = "out";
  std::vector<std::string> export_formats = {"obj", "json"};  // subset of obj, csv, json
  std::string projection_model = "poincare";                  // poincare | raw
  int substeps = 1;

  static RunConfig defaults();

  /// Parse and validate; throws ConfigParse with line/column on bad input.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);

  /// Cross-field validation (degenerate lambda, ranges).  Throws ConfigParse.
  void validate() const;
};

}  // namespace flatfront
