#include "nsfv/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nsfv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE) bad_key(key, "not a number: '" + v + "'");
  return x;
}

long long parse_ll(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE)
    bad_key(key, "not an integer: '" + v + "'");
  return x;
}

}  // namespace

Config Config::parse(std::istream& is, const std::string& origin) {
  Config c;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError(where + ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!section.empty()) key = section + "." + key;
    if (!c.kv_.emplace(key, value).second)
      throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  return parse(is, path);
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::get_double(const std::string& key, double def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  long long x = parse_ll(key, it->second);
  if (x < -2147483648LL || x > 2147483647LL) bad_key(key, "out of int range");
  return static_cast<int>(x);
}

bool Config::get_bool(const std::string& key, bool def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  bad_key(key, "not a boolean (use true/false): '" + it->second + "'");
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  errno = 0;
  char* end = nullptr;
  unsigned long long x = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0' || errno == ERANGE)
    bad_key(key, "not an unsigned integer: '" + it->second + "'");
  return x;
}

std::vector<int> Config::get_int_list(const std::string& key, const std::vector<int>& def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  std::istringstream ss(it->second);
  std::vector<int> out;
  std::string tok;
  while (ss >> tok) out.push_back(static_cast<int>(parse_ll(key, tok)));
  if (out.empty()) bad_key(key, "empty list");
  return out;
}

RunConfig make_run_config(const Config& c) {
  RunConfig r;

  std::string cmd = c.get_string("run.command", "run");
  if (cmd == "run") r.command = Command::Run;
  else if (cmd == "identities") r.command = Command::Identities;
  else if (cmd == "consistency") r.command = Command::Consistency;
  else if (cmd == "rates") r.command = Command::Rates;
  else if (cmd == "eoc") r.command = Command::Eoc;
  else bad_key("run.command", "unknown command '" + cmd + "'");

  r.out_dir = c.get_string("run.out", r.out_dir);
  r.seed = c.get_uint64("run.seed", 0);

  r.dim = c.get_int("mesh.dim", r.dim);
  if (r.dim != 2 && r.dim != 3) bad_key("mesh.dim", "must be 2 or 3");
  r.n = c.get_int("mesh.n", r.n);
  if (r.n < 2) bad_key("mesh.n", "must be at least 2");
  r.levels = c.get_int_list("mesh.levels", r.levels);
  for (int l : r.levels)
    if (l < 2) bad_key("mesh.levels", "levels must be at least 2");

  std::string kind = c.get_string("scheme.kind", "fv");
  if (kind == "fv") r.scheme = SchemeKind::FV;
  else if (kind == "mac") r.scheme = SchemeKind::MAC;
  else bad_key("scheme.kind", "must be 'fv' or 'mac'");

  r.gas.a = c.get_double("gas.a", r.gas.a);
  if (!(r.gas.a > 0.0)) bad_key("gas.a", "must be positive");
  r.gas.gamma = c.get_double("gas.gamma", r.gas.gamma);
  if (!(r.gas.gamma > 1.0)) bad_key("gas.gamma", "adiabatic exponent must exceed 1");

  r.visc.mu = c.get_double("viscosity.mu", r.visc.mu);
  if (!(r.visc.mu > 0.0)) bad_key("viscosity.mu", "must be positive");
  r.visc.lambda = c.get_double("viscosity.lambda", r.visc.lambda);
  if (r.visc.lambda < 0.0) bad_key("viscosity.lambda", "must be nonnegative");

  r.solver.eps = c.get_double("scheme.eps", r.solver.eps);
  if (!(r.solver.eps > -1.0)) bad_key("scheme.eps", "upwind exponent must exceed -1");
  r.solver.newton_tol = c.get_double("scheme.newton_tol", r.solver.newton_tol);
  if (!(r.solver.newton_tol > 0.0)) bad_key("scheme.newton_tol", "must be positive");
  r.solver.max_newton = c.get_int("scheme.max_newton", r.solver.max_newton);
  if (r.solver.max_newton < 1) bad_key("scheme.max_newton", "must be at least 1");
  r.solver.adapt_dt = c.get_bool("scheme.adapt_dt", r.solver.adapt_dt);

  r.T = c.get_double("time.T", r.T);
  if (!(r.T > 0.0)) bad_key("time.T", "must be positive");
  r.dt_coeff = c.get_double("time.dt_coeff", r.dt_coeff);
  if (!(r.dt_coeff > 0.0)) bad_key("time.dt_coeff", "must be positive");
  r.dt_power = c.get_int("time.dt_power", r.dt_power);
  if (r.dt_power < 0 || r.dt_power > 3) bad_key("time.dt_power", "must be in 0..3");

  r.case_name = c.get_string("case.name", r.case_name);
  if (r.case_name != "default" && r.case_name != "constant")
    bad_key("case.name", "unknown case '" + r.case_name + "' (catalog: default, constant)");

  return r;
}

RunConfig parse_run_config(const std::string& path) {
  return make_run_config(Config::parse_file(path));
}

}  // namespace nsfv
