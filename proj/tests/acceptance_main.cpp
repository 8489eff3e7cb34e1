// Acceptance suite: runs every verification criterion at its stated
// tolerance on the default configuration (phi = u + 0.3(u^2 - v^2), 65x65
// grid over [-1,1]^2) and prints one pass/fail line per criterion.  When the
// CLI binary path is passed as argv[1], the command-line surface (exit codes,
// artifacts, report determinism) is exercised end to end as well.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "flatfront/config.hpp"
#include "flatfront/validate.hpp"

namespace fs = std::filesystem;
using namespace flatfront;

namespace {

int g_failures = 0;

void line(bool evaluated, bool pass, int id, const std::string& name,
          const std::string& detail) {
  const char* tag = !evaluated ? "SKIP" : (pass ? "PASS" : "FAIL");
  if (id > 0)
    std::printf("%s  criterion %2d  %-42s %s\n", tag, id, name.c_str(), detail.c_str());
  else
    std::printf("%s  extra check   %-42s %s\n", tag, name.c_str(), detail.c_str());
  if (evaluated && !pass) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void check_cli(const std::string& cli) {
  const fs::path work = fs::path("acceptance_cli_work");
  fs::remove_all(work);
  fs::create_directories(work);

  bool ok = true;
  std::string detail;

  // build with a minimal config writes the base mesh and report
  {
    const fs::path cfgp = work / "minimal.cfg";
    std::ofstream(cfgp) << "potential.terms = linear_u:1.0\n"
                        << "domain.nu = 33\ndomain.nv = 33\n"
                        << "export_formats = obj json\n"
                        << "output_dir = " << (work / "build_out").string() << "\n";
    const int rc = run_cli(cli, "build --config " + cfgp.string());
    const bool artifacts = fs::exists(work / "build_out" / "front_base.obj") &&
                           fs::exists(work / "build_out" / "report.json");
    if (rc != 0 || !artifacts) {
      ok = false;
      detail += "build rc=" + std::to_string(rc) + "; ";
    }
  }
  // degenerate lambda in the config is a config error (exit 2)
  {
    const fs::path cfgp = work / "degenerate.cfg";
    std::ofstream(cfgp) << "lambdas = 0.25 0.5\n";
    const int rc = run_cli(cli, "build --config " + cfgp.string());
    if (rc != 2) {
      ok = false;
      detail += "lambda-0.5 rc=" + std::to_string(rc) + " (want 2); ";
    }
  }
  // a genuinely non-harmonic potential is rejected with exit 3
  {
    const fs::path cfgp = work / "nonharmonic.cfg";
    std::ofstream(cfgp) << "potential.terms = monomial:1.0:2:0\n"
                        << "domain.nu = 17\ndomain.nv = 17\n"
                        << "output_dir = " << (work / "nh_out").string() << "\n";
    const int rc = run_cli(cli, "build --config " + cfgp.string());
    if (rc != 3) {
      ok = false;
      detail += "non-harmonic rc=" + std::to_string(rc) + " (want 3); ";
    }
  }
  // unparsable config: exit 2
  {
    const fs::path cfgp = work / "broken.cfg";
    std::ofstream(cfgp) << "domain.nu = watermelon\n";
    const int rc = run_cli(cli, "build --config " + cfgp.string());
    if (rc != 2) {
      ok = false;
      detail += "broken-config rc=" + std::to_string(rc) + " (want 2); ";
    }
  }
  // deform at lambda 0 reproduces the base mesh byte for byte
  {
    const fs::path cfgp = work / "deform0.cfg";
    std::ofstream(cfgp) << "potential.terms = linear_u:1.0 re_poly:0.3:2\n"
                        << "domain.nu = 17\ndomain.nv = 17\n"
                        << "lambdas = 0\nexport_formats = obj\n"
                        << "output_dir = " << (work / "deform_out").string() << "\n";
    const int rc = run_cli(cli, "deform --config " + cfgp.string());
    const std::string base = slurp(work / "deform_out" / "front_base.obj");
    std::string lam0 = slurp(work / "deform_out" / "front_lambda_0.obj");
    // the lambda comment line differs by design; compare geometry payloads
    auto payload = [](std::string s) {
      std::string out;
      std::istringstream in(s);
      std::string l;
      while (std::getline(in, l))
        if (l.rfind("#", 0) != 0) out += l + "\n";
      return out;
    };
    if (rc != 0 || base.empty() || payload(base) != payload(lam0)) {
      ok = false;
      detail += "deform-identity mismatch rc=" + std::to_string(rc) + "; ";
    }
  }
  // two consecutive validate runs on the default configuration:
  // byte-identical report.json, exit 0
  {
    const std::string out = (work / "val_out").string();
    const int rc1 = run_cli(cli, "validate --out " + out);
    const std::string rep1 = slurp(work / "val_out" / "report.json");
    const int rc2 = run_cli(cli, "validate --out " + out);
    const std::string rep2 = slurp(work / "val_out" / "report.json");
    if (rc1 != 0 || rc2 != 0 || rep1.empty() || rep1 != rep2) {
      ok = false;
      detail += "validate determinism rc=" + std::to_string(rc1) + "/" + std::to_string(rc2) +
                "; ";
    }
  }

  if (ok) detail = "build/deform/validate exit codes and artifacts as contracted";
  line(true, ok, 0, "command-line contract", detail);
  fs::remove_all(work);
}

}  // namespace

int main(int argc, char** argv) {
  const RunConfig cfg = RunConfig::defaults();

  std::printf("acceptance suite: %s, %dx%d grid on [%g,%g]x[%g,%g]\n",
              cfg.potential.describe().c_str(), cfg.domain.nu, cfg.domain.nv, cfg.domain.u_min,
              cfg.domain.u_max, cfg.domain.v_min, cfg.domain.v_max);

  ValidationOutcome first = run_validation(cfg);
  const ValidationOutcome second = run_validation(cfg);
  (void)finalize_report(first, second);  // appends the determinism criterion

  for (const CriterionResult& c : first.criteria) line(c.evaluated, c.pass, c.id, c.name, c.detail);

  if (argc > 1) check_cli(argv[1]);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
