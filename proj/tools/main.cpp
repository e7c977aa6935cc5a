#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nsfv/cli.hpp"
#include "nsfv/config.hpp"

namespace {

std::vector<int> parse_levels(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream ss(s);
  std::vector<int> out;
  int v = 0;
  while (ss >> v) {
    if (v < 2) throw nsfv::ConfigError("--levels entries must be at least 2");
    out.push_back(v);
  }
  if (!ss.eof() || out.empty()) throw nsfv::ConfigError("--levels expects integers like 16,32,64");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured-grid compressible flow driver"};
  std::string config_path, out_override, levels_override;
  std::uint64_t seed_override = 0;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_override, "output directory override");
  CLI::Option* seed_opt = app.add_option("--seed", seed_override, "seed override");
  app.add_option("--levels", levels_override, "mesh ladder override, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    nsfv::RunConfig cfg = nsfv::parse_run_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_opt->count() > 0) cfg.seed = seed_override;
    if (!levels_override.empty()) cfg.levels = parse_levels(levels_override);
    return nsfv::cli::execute(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
