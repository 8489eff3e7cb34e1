#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatfront/config.hpp"
#include "flatfront/deform.hpp"
#include "flatfront/mesh_export.hpp"
#include "flatfront/validate.hpp"

namespace {

using namespace flatfront;
namespace fs = std::filesystem;

// Exit codes are part of the contract: 0 ok, 1 validation bound violated,
// 2 config error, 3 non-harmonic potential, 4 I/O failure, 5 transport
// divergence.
int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ConfigParse:
    case Errc::DegenerateParameter:
      return 2;
    case Errc::NotHarmonic:
      return 3;
    case Errc::Io:
      return 4;
    case Errc::TransportDiverged:
      return 5;
    default:
      return 10;
  }
}

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<double> lambdas;
  int refine = -1;
  std::string format = "obj";
  std::string model;
};

RunConfig effective_config(const CliArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig::defaults()
                                           : RunConfig::load(args.config_path);
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  if (!args.lambdas.empty()) cfg.lambdas = args.lambdas;
  if (args.refine > 0) cfg.refinement_levels = args.refine;
  if (!args.model.empty()) cfg.projection_model = args.model;
  cfg.validate();
  return cfg;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(Errc::Io, "cannot create output directory '" + dir.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(Errc::Io, "write failed for '" + path.string() + "'");
}

void export_front(const FrontGrid& front, const RunConfig& cfg, const std::string& stem) {
  for (const std::string& f : cfg.export_formats) {
    if (f == "json") continue;
    const fs::path path = fs::path(cfg.output_dir) / (stem + "." + f);
    export_mesh(front, path.string(), f, cfg.projection_model);
    std::cout << "wrote " << path.string() << "\n";
  }
}

bool wants_json(const RunConfig& cfg) {
  for (const std::string& f : cfg.export_formats)
    if (f == "json") return true;
  return false;
}

int cmd_build(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  ensure_dir(cfg.output_dir);
  IntegrateOptions iopts;
  iopts.substeps = cfg.substeps;
  const FrontGrid front = front_from_frame(integrate_frame(cfg.potential, cfg.domain, 0.0, iopts));
  export_front(front, cfg, "front_base");
  if (wants_json(cfg)) {
    const fs::path path = fs::path(cfg.output_dir) / "report.json";
    write_text(path, base_report(cfg).dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_deform(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  ensure_dir(cfg.output_dir);
  DeformOptions dopts;
  dopts.substeps = cfg.substeps;
  const BaseBundle base = make_base_bundle(cfg.potential, cfg.domain, dopts);
  export_front(base.front0, cfg, "front_base");

  nlohmann::ordered_json report = base_report(cfg);
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  for (double lambda : cfg.lambdas) {
    const DeformResult res = deform_with_base(base, cfg.potential, lambda, dopts);
    export_front(res.front, cfg, "front_lambda_" + fmt17(lambda));
    nlohmann::ordered_json rec;
    rec["lambda"] = lambda;
    rec["pipeline_agreement"] = res.pipeline_agreement;
    rec["conservation_drift"] = res.conservation;
    rec["transport_orthogonality_drift"] = res.state.max_orthogonality_drift;
    rec["flatness_deviation"] = flatness_deviation(res.front);
    sweep.push_back(rec);
    std::cout << "lambda " << fmt17(lambda) << ": pipelines agree to "
              << res.pipeline_agreement << "\n";
  }
  report["lambdas"] = sweep;
  if (wants_json(cfg)) {
    const fs::path path = fs::path(cfg.output_dir) / "report.json";
    write_text(path, report.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_validate(const CliArgs& args) {
  const RunConfig cfg = effective_config(args);
  ensure_dir(cfg.output_dir);
  // Two full runs: the determinism criterion compares their serialized
  // reports byte for byte.
  ValidationOutcome first = run_validation(cfg);
  const ValidationOutcome second = run_validation(cfg);
  const std::string text = finalize_report(first, second);

  for (const CriterionResult& c : first.criteria) {
    const char* tag = !c.evaluated ? "SKIP" : (c.pass ? "PASS" : "FAIL");
    std::printf("%s  criterion %2d  %s: %s\n", tag, c.id, c.name.c_str(), c.detail.c_str());
  }
  const fs::path path = fs::path(cfg.output_dir) / "report.json";
  write_text(path, text);
  std::cout << "wrote " << path.string() << "\n";

  if (!first.all_pass) {
    for (const CriterionResult& c : first.criteria)
      if (c.evaluated && !c.pass)
        std::cout << "violated: criterion " << c.id << " (" << c.name << ")\n";
    return 1;
  }
  return 0;
}

int cmd_export(const CliArgs& args) {
  RunConfig cfg = effective_config(args);
  ensure_dir(cfg.output_dir);
  IntegrateOptions iopts;
  iopts.substeps = cfg.substeps;
  const FrontGrid front = front_from_frame(integrate_frame(cfg.potential, cfg.domain, 0.0, iopts));
  const fs::path path = fs::path(cfg.output_dir) / ("front_base." + args.format);
  export_mesh(front, path.string(), args.format, cfg.projection_model);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat fronts in hyperbolic 3-space and their Lie-geometric deformation family"};
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "configuration file (flat key = value text)");
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--lambda", args.lambdas,
                    "deformation parameter (repeatable; overrides config)");
    sub->add_option("--refine", args.refine, "refinement levels (overrides config)");
    sub->add_option("--model", args.model, "projection model: poincare | raw")
        ->check(CLI::IsMember({"poincare", "raw"}));
  };

  CLI::App* build = app.add_subcommand("build", "integrate the base front and export it");
  add_common(build);
  CLI::App* deform = app.add_subcommand("deform", "run the lambda sweep of deformed fronts");
  add_common(deform);
  CLI::App* validate = app.add_subcommand("validate", "run the full verification suite");
  add_common(validate);
  CLI::App* exp = app.add_subcommand("export", "export the base front in one format");
  add_common(exp);
  exp->add_option("--format", args.format, "obj | csv")->check(CLI::IsMember({"obj", "csv"}));

  try {
    app.parse(argc, argv);
    if (build->parsed()) return cmd_build(args);
    if (deform->parsed()) return cmd_deform(args);
    if (validate->parsed()) return cmd_validate(args);
    if (exp->parsed()) return cmd_export(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const flatfront::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 10;
  }
  return 0;
}
