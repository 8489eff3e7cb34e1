#include <cmath>
#include <sstream>

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "flatfront/config.hpp"
#include "flatfront/validate.hpp"
#include "flatfront/mesh_export.hpp"
#include "flatfront/deform.hpp"

using namespace flatfront;

namespace {

FrontGrid small_front() {
  const HarmonicPotential phi = HarmonicPotential::parse({"linear_u:1.0"});
  GridDomain dom;
  dom.nu = dom.nv = 9;
  return front_from_frame(integrate_frame(phi, dom, 0.0));
}

}  // namespace

TEST_CASE("config parsing") {
  const std::string text = R"(
# a comment
potential.terms = linear_u:1.0 re_poly:0.3:2
domain.u_min = -1
domain.u_max = 1
domain.nu = 33
domain.nv = 33
lambdas = 0.25, -0.5
refinement_levels = 2
output_dir = artifacts
export_formats = obj csv
projection_model = raw
integrator.substeps = 2
)";
  const RunConfig cfg = RunConfig::parse(text);
  CHECK(cfg.domain.nu == 33);
  CHECK(cfg.lambdas.size() == 2);
  CHECK(cfg.lambdas[0] == doctest::Approx(0.25));
  CHECK(cfg.output_dir == "artifacts");
  CHECK(cfg.projection_model == "raw");
  CHECK(cfg.substeps == 2);
  CHECK(cfg.potential.terms().size() == 2);
}

TEST_CASE("config errors carry line positions and name the degenerate parameter") {
  try {
    (void)RunConfig::parse("domain.nu = 33\nbogus_key = 1\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    (void)RunConfig::parse("domain.nu = watermelon\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  try {
    (void)RunConfig::parse("lambdas = 0.25 0.5\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigParse);
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
}

TEST_CASE("obj export: poincare vertices stay inside the unit ball") {
  const FrontGrid fr = small_front();
  std::ostringstream os;
  write_obj(fr, os, "poincare");
  const std::string text = os.str();

  int vcount = 0, fcount = 0;
  std::istringstream in(text);
  std::string line;
  bool base_vertex_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      ++vcount;
      double x, y, z;
      std::istringstream ls(line.substr(2));
      ls >> x >> y >> z;
      CHECK(std::sqrt(x * x + y * y + z * z) < 1.0);
      if (x == 0.0 && y == 0.0 && z == 0.0) base_vertex_seen = true;
    } else if (line.rfind("f ", 0) == 0) {
      ++fcount;
    }
  }
  CHECK(vcount == 81);
  CHECK(fcount == 64);
  CHECK(base_vertex_seen);  // f0 = (1,0,0,0) maps to the ball center

  // deterministic serialization
  std::ostringstream os2;
  write_obj(fr, os2, "poincare");
  CHECK(os.str() == os2.str());
}

TEST_CASE("csv export has one row per gridpoint") {
  const FrontGrid fr = small_front();
  std::ostringstream os;
  write_csv(fr, os);
  int rows = 0;
  std::istringstream in(os.str());
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 81 + 1);  // header + points
}

TEST_CASE("fmt17 round-trips doubles") {
  for (double x : {0.1, -1.0 / 3.0, 2.38109784607222, 1e-300, 0.0, 123456.789}) {
    const std::string s = fmt17(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("report carries the documented structure") {
  RunConfig cfg = RunConfig::defaults();
  cfg.domain.nu = cfg.domain.nv = 17;
  cfg.refinement_levels = 1;  // order fields marked absent
  cfg.lambdas = {0.25, 1.0};

  ValidationOutcome first = run_validation(cfg);
  const ValidationOutcome second = run_validation(cfg);
  const std::string text = finalize_report(first, second);
  const auto rep = nlohmann::ordered_json::parse(text);

  CHECK(rep.at("schema_version") == 1);
  for (const char* key : {"config", "criteria_data", "base", "harmonicity", "lambdas",
                          "parameter_map", "criteria", "all_pass"})
    CHECK(rep.contains(key));
  for (const char* key : {"potential", "domain", "lambdas", "refinement_levels", "substeps"})
    CHECK(rep.at("config").contains(key));
  for (const char* key :
       {"frame_invariant_drift", "front_invariant_violation", "metric_deviation",
        "flatness_deviation"})
    CHECK(rep.at("base").contains(key));

  // with a single refinement level, order-based fields are absent / skipped
  CHECK(rep.at("criteria_data").at("residual_decay").is_null());
  CHECK(rep.at("criteria_data").at("base_flatness").at("kappa1_fd2_order").is_null());
  bool c4_skipped = false;
  for (const auto& c : rep.at("criteria"))
    if (c.at("id") == 4 && c.at("evaluated") == false) c4_skipped = true;
  CHECK(c4_skipped);

  // criterion list covers ids 1..10 exactly once
  std::vector<int> seen;
  for (const auto& c : rep.at("criteria")) seen.push_back(c.at("id").get<int>());
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

  // the imaginary-branch parameter map entry exists for lambda = 1
  bool imag_entry = false;
  for (const auto& pm : rep.at("parameter_map"))
    if (pm.at("lambda") == 1.0 && pm.contains("curved_flat_parameter_imaginary"))
      imag_entry = true;
  CHECK(imag_entry);
}
