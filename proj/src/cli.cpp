#include "nsfv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "nsfv/analysis.hpp"
#include "nsfv/identities.hpp"
#include "nsfv/io.hpp"
#include "nsfv/mesh.hpp"
#include "nsfv/schemes.hpp"

namespace nsfv::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw io::IoError("cannot open output file '" + p.string() + "'");
  return os;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  Mesh m(cfg.dim, cfg.n);
  Solver s(cfg.scheme, m, cfg.gas, cfg.visc, cfg.solver);
  double dtt = cfg.dt_coeff * std::pow(m.h(), double(cfg.dt_power));

  State last;
  RunReport rr;
  if (cfg.case_name == "constant") {
    TrigScalar rho0 = TrigScalar::constant(cfg.dim, 2.0);
    const double amps[3] = {0.3, -0.2, 0.1};
    std::vector<TrigScalar> uc;
    for (int k = 0; k < cfg.dim; ++k) uc.push_back(TrigScalar::constant(cfg.dim, amps[k]));
    TrigVector u0(uc);
    Problem p;
    p.rho0 = &rho0;
    p.u0 = &u0;
    rr = s.run(p, cfg.T, dtt, &last, nullptr);
  } else {
    analysis::ManufacturedProblem mp(analysis::default_case(cfg.dim, cfg.gas, cfg.visc));
    rr = s.run(mp.problem(), cfg.T, dtt, &last, nullptr);
  }

  std::filesystem::path dir(cfg.out_dir);
  {
    auto os = open_out(dir / "steps.csv");
    io::write_steps_csv(os, rr);
  }
  {
    auto os = open_out(dir / "rho.field");
    io::write_field(os, last.rho);
  }
  for (int k = 0; k < cfg.dim; ++k) {
    auto os = open_out(dir / ("velocity_" + std::to_string(k) + ".field"));
    if (cfg.scheme == SchemeKind::FV) {
      CellField c(m);
      c.v = last.vel[k];
      io::write_field(os, c);
    } else {
      io::write_face_field(os, m, last.vel[k], k);
    }
  }
  log << "run: " << rr.nt << " steps, dt " << io::format_double(rr.dt) << ", final mass "
      << io::format_double(s.mass(last)) << ", max rho " << io::format_double(rr.max_rho)
      << ", max speed " << io::format_double(rr.max_speed) << "\n";
  return 0;
}

int cmd_identities(const RunConfig& cfg, std::ostream& log) {
  Mesh m(cfg.dim, cfg.n);
  std::vector<IdentityResult> rows = identity_suite(m, cfg.seed);
  {
    auto os = open_out(std::filesystem::path(cfg.out_dir) / "identities.csv");
    io::write_identities_csv(os, rows);
  }
  double worst = 0.0;
  for (const IdentityResult& r : rows) worst = std::max(worst, r.residual);
  log << "identities: " << rows.size() << " checks, worst residual "
      << io::format_double(worst) << "\n";
  return worst <= 1e-12 ? 0 : 4;
}

int cmd_consistency(const RunConfig& cfg, std::ostream& log) {
  analysis::ConsistencyStudy st =
      analysis::consistency_study(cfg.scheme, cfg.dim, cfg.gas, cfg.visc, cfg.solver.eps,
                                  cfg.levels, cfg.T, cfg.dt_coeff, cfg.seed);
  std::filesystem::path dir(cfg.out_dir);
  {
    auto os = open_out(dir / "consistency.csv");
    io::write_consistency_csv(os, st);
  }
  {
    auto os = open_out(dir / "consistency_rates.csv");
    io::write_consistency_rates_csv(os, st);
  }
  log << "consistency: mass order " << io::format_double(st.rate_mass) << ", momentum order "
      << io::format_double(st.rate_momentum) << "\n";
  return 0;
}

int cmd_rates(const RunConfig& cfg, std::ostream& log) {
  const double epss[] = {-0.5, -0.25, 0.0, 0.25, 0.5};
  std::vector<io::RateRow> rows;
  for (int sc = 0; sc < 2; ++sc) {
    SchemeKind kind = sc == 0 ? SchemeKind::FV : SchemeKind::MAC;
    for (int gi = 0; gi <= 9; ++gi) {
      double gamma = 1.2 + 0.2 * gi;
      for (double eps : epss) {
        io::RateRow r;
        r.scheme = sc == 0 ? "fv" : "mac";
        r.dim = cfg.dim;
        r.gamma = gamma;
        r.eps = eps;
        r.pred = analysis::predict_rate(kind, cfg.dim, gamma, eps);
        rows.push_back(r);
      }
    }
  }
  {
    auto os = open_out(std::filesystem::path(cfg.out_dir) / "rates.csv");
    io::write_rates_csv(os, rows);
  }
  log << "rates: " << rows.size() << " rows\n";
  return 0;
}

int cmd_eoc(const RunConfig& cfg, std::ostream& log) {
  analysis::EocOptions opt;
  opt.scheme = cfg.scheme;
  opt.levels = cfg.levels;
  opt.T = cfg.T;
  opt.dt_coeff = cfg.dt_coeff;
  opt.dt_power = cfg.dt_power;
  opt.solver = cfg.solver;
  analysis::ManufacturedCase mc = analysis::default_case(cfg.dim, cfg.gas, cfg.visc);
  analysis::EocStudy st = analysis::eoc_study(opt, mc);
  std::filesystem::path dir(cfg.out_dir);
  {
    auto os = open_out(dir / "eoc.csv");
    io::write_eoc_csv(os, st);
  }
  {
    auto os = open_out(dir / "eoc_rates.csv");
    io::write_eoc_rates_csv(os, st);
  }
  log << "eoc: energy order " << io::format_double(st.rates.energy) << ", velocity order "
      << io::format_double(st.rates.velocity) << "\n";
  return 0;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& log) {
  try {
    std::filesystem::create_directories(cfg.out_dir);
    switch (cfg.command) {
      case Command::Run: return cmd_run(cfg, log);
      case Command::Identities: return cmd_identities(cfg, log);
      case Command::Consistency: return cmd_consistency(cfg, log);
      case Command::Rates: return cmd_rates(cfg, log);
      case Command::Eoc: return cmd_eoc(cfg, log);
    }
    return 2;
  } catch (const SolveError& e) {
    log << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nsfv::cli
