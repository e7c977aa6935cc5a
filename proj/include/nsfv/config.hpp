#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfv/physics.hpp"
#include "nsfv/schemes.hpp"

namespace nsfv {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat key-value text with section headers:
///   [section]
///   key = value        # trailing comments with '#'
/// Keys address values as "section.key". Duplicate keys, values without a
/// key, and unterminated section headers are parse errors naming the line.
class Config {
 public:
  static Config parse(std::istream& is, const std::string& origin);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  /// Typed getters; a present key that fails to parse as the requested type
  /// is an error naming the key. The default is returned only when absent.
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  int get_int(const std::string& key, int def) const;
  bool get_bool(const std::string& key, bool def) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t def) const;
  /// Whitespace-separated integer list.
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& def) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

enum class Command { Run, Identities, Consistency, Rates, Eoc };

/// Fully validated driver configuration; every physical-domain constraint
/// (gamma > 1, eps > -1, mu > 0, lambda >= 0, dim in {2,3}, ...) is enforced
/// when the file is parsed, with errors naming the offending key.
struct RunConfig {
  Command command = Command::Run;
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  int dim = 2;
  int n = 16;
  std::vector<int> levels{16, 32, 64};

  SchemeKind scheme = SchemeKind::FV;
  GasLaw gas{1.0, 2.0};
  Viscosity visc{0.1, 0.1};
  SchemeConfig solver;

  double T = 0.1;
  double dt_coeff = 1.0;
  int dt_power = 1;

  std::string case_name = "default";  // "default" (manufactured) or "constant"
};

RunConfig make_run_config(const Config& c);
RunConfig parse_run_config(const std::string& path);

}  // namespace nsfv
