#include "flatfront/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {

struct Cursor {
  int line = 0;
  int col = 0;
};

[[noreturn]] void parse_fail(const Cursor& at, const std::string& msg) {
  fail(Errc::ConfigParse,
       "config: line " + std::to_string(at.line) + ", col " + std::to_string(at.col) + ": " + msg);
}

std::string trim(const std::string& s, int line, int col_offset, Cursor* where) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (where) {
    where->line = line;
    where->col = col_offset + static_cast<int>(b == std::string::npos ? 0 : b) + 1;
  }
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const Cursor& at) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(at, "expected a number, got '" + s + "'");
  }
}

int to_int(const std::string& s, const Cursor& at) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(at, "expected an integer, got '" + s + "'");
  }
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.potential = HarmonicPotential::parse({"linear_u:1.0", "re_poly:0.3:2"});
  cfg.domain = GridDomain{};  // [-1,1]^2, 65x65, centered base point
  cfg.lambdas = {-0.5, -0.25, 0.1, 0.25, 0.4, 0.6, 0.75, 1.0};
  return cfg;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg = defaults();
  bool saw_terms = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    Cursor at{lineno, 1};
    if (trim(line, lineno, 0, &at).empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(at, "expected 'key = value'");
    Cursor key_at, val_at;
    const std::string key = trim(line.substr(0, eq), lineno, 0, &key_at);
    const std::string val = trim(line.substr(eq + 1), lineno, static_cast<int>(eq) + 1, &val_at);
    if (key.empty()) parse_fail(key_at, "empty key");
    if (val.empty()) parse_fail(val_at, "empty value for '" + key + "'");

    try {
      if (key == "potential.terms") {
        cfg.potential = HarmonicPotential::parse(split_list(val));
        saw_terms = true;
      } else if (key == "domain.u_min") {
        cfg.domain.u_min = to_double(val, val_at);
      } else if (key == "domain.u_max") {
        cfg.domain.u_max = to_double(val, val_at);
      } else if (key == "domain.v_min") {
        cfg.domain.v_min = to_double(val, val_at);
      } else if (key == "domain.v_max") {
        cfg.domain.v_max = to_double(val, val_at);
      } else if (key == "domain.nu") {
        cfg.domain.nu = to_int(val, val_at);
      } else if (key == "domain.nv") {
        cfg.domain.nv = to_int(val, val_at);
      } else if (key == "domain.base_i") {
        cfg.domain.base_i = to_int(val, val_at);
      } else if (key == "domain.base_j") {
        cfg.domain.base_j = to_int(val, val_at);
      } else if (key == "lambdas") {
        cfg.lambdas.clear();
        for (const std::string& tok : split_list(val)) cfg.lambdas.push_back(to_double(tok, val_at));
      } else if (key == "refinement_levels") {
        cfg.refinement_levels = to_int(val, val_at);
      } else if (key == "output_dir") {
        cfg.output_dir = val;
      } else if (key == "export_formats") {
        cfg.export_formats = split_list(val);
      } else if (key == "projection_model") {
        cfg.projection_model = val;
      } else if (key == "integrator.substeps") {
        cfg.substeps = to_int(val, val_at);
      } else {
        parse_fail(key_at, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == Errc::ConfigParse && std::string(e.what()).rfind("config:", 0) == 0) throw;
      parse_fail(val_at, e.what());
    }
  }
  (void)saw_terms;
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::validate() const {
  domain.validate();
  for (double l : lambdas)
    if (l == 0.5)
      fail(Errc::ConfigParse,
           "config: lambdas contains the degenerate parameter 0.5 "
           "((p+,p-)(lambda) = -2(1-2 lambda) vanishes there)");
  if (refinement_levels < 1) fail(Errc::ConfigParse, "config: refinement_levels must be >= 1");
  if (substeps < 1) fail(Errc::ConfigParse, "config: integrator.substeps must be >= 1");
  if (projection_model != "poincare" && projection_model != "raw")
    fail(Errc::ConfigParse, "config: projection_model must be 'poincare' or 'raw'");
  for (const std::string& f : export_formats)
    if (f != "obj" && f != "csv" && f != "json")
      fail(Errc::ConfigParse, "config: unknown export format '" + f + "'");
}

}  // namespace flatfront
