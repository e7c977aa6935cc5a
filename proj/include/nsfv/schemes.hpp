#pragma once

#include <stdexcept>
#include <vector>

#include "nsfv/fields.hpp"
#include "nsfv/mesh.hpp"
#include "nsfv/physics.hpp"
#include "nsfv/smooth.hpp"

namespace nsfv {

/// FV: collocated cell-centered velocity, upwind fluxes with the h^eps
/// diffusive correction in both equations, dual-grid viscous operator,
/// central pressure gradient.
/// MAC: staggered face velocity, diffusive upwind in the mass equation,
/// plain upwind momentum convection on dual cells, second-level dual-grid
/// viscous operator, face pressure gradient, density-gradient stabilization.
enum class SchemeKind { FV, MAC };

struct SchemeConfig {
  double eps = 0.0;        // upwind correction exponent, > -1
  double newton_tol = 1e-10;
  int max_newton = 50;
  int max_halvings = 30;   // positivity line-search halvings
  bool adapt_dt = false;   // split a failing step into two half steps
  int max_dt_halvings = 8;
};

/// Unknowns of one time level. vel[k] holds cell values (FV) or
/// direction-k face values (MAC); both lattices have mesh.cells() entries.
struct State {
  CellField rho;
  std::array<std::vector<double>, 3> vel;

  State() = default;
  explicit State(const Mesh& m) : rho(m) {
    for (int k = 0; k < m.dim(); ++k) vel[k].assign(m.cells(), 0.0);
  }
};

/// Initial data and optional manufactured sources (added fully implicitly as
/// cell / dual-cell averages at the new time level).
struct Problem {
  const SmoothScalar* rho0 = nullptr;
  const SmoothVector* u0 = nullptr;
  const SmoothScalar* source_mass = nullptr;
  const SmoothVector* source_momentum = nullptr;
};

struct StepReport {
  int n = 0;
  double t = 0.0;
  int iterations = 0;
  double residual = 0.0;   // max-norm of the combined residual at acceptance
  double mass = 0.0;       // total mass after the step
  double drift = 0.0;      // change in total mass across the step
  double min_rho = 0.0;
  double energy_before = 0.0;
  double energy = 0.0;     // total energy after the step
  double dissipation = 0.0;  // dt * (mu ||grad u||^2 + nu ||div u||^2)
  double slack = 0.0;      // energy - energy_before + dissipation
};

struct RunReport {
  std::vector<StepReport> steps;
  double initial_mass = 0.0;
  double initial_energy = 0.0;
  double max_rho = 0.0;    // over all accepted states including t = 0
  double max_speed = 0.0;  // componentwise max |velocity unknown|
  double dt = 0.0;
  int nt = 0;
};

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind { PositivityLoss, NonlinearDivergence, LinearBreakdown };
  SolveError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

class Solver {
 public:
  Solver(SchemeKind kind, const Mesh& m, const GasLaw& gas, const Viscosity& visc,
         SchemeConfig cfg);

  SchemeKind kind() const { return kind_; }
  const Mesh& mesh() const { return m_; }
  const GasLaw& gas() const { return gas_; }
  const Viscosity& viscosity() const { return visc_; }
  const SchemeConfig& config() const { return cfg_; }

  /// Projection of smooth fields onto the scheme's unknowns at time t:
  /// density cell averages everywhere; velocity from the cell-averaged
  /// momentum divided by the cell-averaged density (FV) or from face
  /// averages (MAC).
  State project_state(const SmoothScalar& rho, const SmoothVector& u, double t) const;

  /// project_state of the initial data at t = 0.
  State initial(const Problem& p) const;

  /// One fully implicit step to time t (step size dt), semismooth Newton with
  /// analytic Jacobian, frozen upwind signs, positivity-preserving line
  /// search and a convection-frozen fallback when a step stalls.
  StepReport step(const State& prev, State& next, double t, double dt,
                  const Problem& p) const;

  /// Fixed-step run to time T with dt = T / max(1, round(T / dt_target)).
  RunReport run(const Problem& p, double T, double dt_target, State* final_state = nullptr,
                std::vector<State>* trajectory = nullptr) const;

  // ---- diagnostics ----
  CellVectorField cell_velocity(const State& s) const;
  /// Velocity on faces: identity for MAC, face averages for FV.
  StaggeredField face_velocity(const State& s) const;
  /// Scheme velocity gradient: dual two-point (FV) or second-level dual (MAC).
  TensorField velocity_gradient(const State& s) const;
  /// Scheme velocity divergence: central (FV) or staggered (MAC).
  CellField velocity_divergence(const State& s) const;
  double mass(const State& s) const;
  double energy(const State& s) const;
  /// mu ||grad_h u||^2 + nu ||div_h u||^2 (no dt factor).
  double dissipation_rate(const State& s) const;

  /// Combined strong-form residual (per unit volume) at new time t, layout
  /// [rho rows, vel_0 rows, ..., vel_{d-1} rows]. Equivalent to testing the
  /// weak form with indicator basis functions.
  void residual(const State& prev, const State& next, double t, double dt,
                const Problem& p, std::vector<double>& out) const;

  /// Analytic Jacobian of `residual` with upwind signs frozen at `next`
  /// (derivative 1/2 at exactly vanishing face velocity). When
  /// `with_convection` is false the convective and stabilization couplings
  /// are dropped (the fallback linearization).
  void jacobian(const State& next, double dt, bool with_convection,
                std::vector<Triplet>& out) const;

 private:
  struct SourceEval {
    bool active = false;
    CellField mass;
    // FV: cell averages per component; MAC: dual-cell averages per direction.
    std::array<std::vector<double>, 3> momentum;
  };

  SourceEval eval_sources(const Problem& p, double t) const;
  void residual_impl(const State& prev, const State& next, double dt,
                     const SourceEval& src, std::vector<double>& out) const;
  std::vector<double> solve_linear(const State& cur, double dt, bool with_convection,
                                   const std::vector<double>& r) const;

  SchemeKind kind_;
  const Mesh& m_;
  GasLaw gas_;
  Viscosity visc_;
  SchemeConfig cfg_;
};

}  // namespace nsfv
