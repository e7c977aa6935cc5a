#pragma once

#include <memory>
#include <vector>

#include "nsfv/physics.hpp"
#include "nsfv/schemes.hpp"
#include "nsfv/smooth.hpp"

namespace nsfv::analysis {

// ---- a priori rate theory ----

/// Density-bound exponents and the predicted convergence order of the
/// relative-energy error in h, for gamma > 1, eps > -1, dim in {2, 3}.
struct RatePrediction {
  double beta_d = 0.0;
  double beta_m = 0.0;
  double rate = 0.0;
};

RatePrediction predict_rate(SchemeKind scheme, int dim, double gamma, double eps);

/// Exponent maximizing the predicted rate: closed-form candidate, then 0,
/// then a fine grid on (-1, 2]; earlier candidates win ties.
double optimal_epsilon(SchemeKind scheme, int dim, double gamma);

/// Least-squares slope r of log(err) against log(h) (err ~ C h^r).
double fit_rate(const std::vector<double>& h, const std::vector<double>& err);

// ---- space-time weak forms and consistency defects ----

/// Uniform grid 0 = t_0 < ... < t_M = T with step dt (trailing slab shorter
/// when dt does not divide T).
std::vector<double> time_grid(double T, double dt);

/// States obtained by the solver's initial-data projections applied at each
/// time level (density cell averages; FV velocity = momentum average over
/// density average, MAC velocity = face averages).
std::vector<State> project_trajectory(const Solver& s, const SmoothScalar& rho,
                                      const SmoothVector& u,
                                      const std::vector<double>& times);

/// Weak-form defect of a trajectory (trajectory[j] at times[j], piecewise
/// constant on slabs) against a smooth test function:
///   [sum rho phi]_0^T - int int (rho d_t phi + rho u_cell . grad phi),
/// with every pairing a plain cell product and the test factors integrated
/// exactly (trig time factors in closed form, spatial cell averages).
/// With phi == 1 this is exactly the total-mass change.
double mass_form(const Solver& s, const std::vector<State>& traj,
                 const std::vector<double>& times, const TrigScalar& phi);

/// Momentum analogue: boundary and time/convection/pressure pairings as
/// plain cell products, the discrete velocity gradient paired with grad Phi
/// on its own lattice (dual for FV, second-level dual for MAC), and the
/// discrete divergence paired with div Phi on cells.
double momentum_form(const Solver& s, const std::vector<State>& traj,
                     const std::vector<double>& times, const TrigVector& Phi);

/// Continuous counterparts: space-time integrals of the smooth-field
/// equation residuals against the test function. The defect of a projected
/// smooth trajectory is the weak form minus this value.
double mass_form_exact(const TrigScalar& rho, const TrigVector& u, const TrigScalar& phi,
                       int dim, double T);
double momentum_form_exact(const GasLaw& gas, const Viscosity& visc, const TrigScalar& rho,
                           const TrigVector& u, const TrigVector& Phi, int dim, double T);

struct ConsistencyPoint {
  int n = 0;
  double h = 0.0;
  double e_mass = 0.0;
  double e_momentum = 0.0;
};

struct ConsistencyStudy {
  std::vector<ConsistencyPoint> points;
  double rate_mass = 0.0;
  double rate_momentum = 0.0;
};

/// Weak-form defects of projected smooth trajectories over a mesh ladder,
/// with dt = dt_coeff * h per level and seeded random trigonometric fields
/// and test functions.
ConsistencyStudy consistency_study(SchemeKind scheme, int dim, const GasLaw& gas,
                                   const Viscosity& visc, double eps,
                                   const std::vector<int>& levels, double T, double dt_coeff,
                                   std::uint64_t seed);

// ---- manufactured solutions ----

/// Smooth reference fields with the pointwise equation residuals available
/// as forcing terms.
struct ManufacturedCase {
  int dim = 2;
  GasLaw gas{1.0, 2.0};
  Viscosity visc{0.1, 0.1};
  TrigScalar rho;
  TrigVector u{std::vector<TrigScalar>{}};

  double mass_source_value(double t, const std::array<double, 3>& x) const;
  double momentum_source_value(int k, double t, const std::array<double, 3>& x) const;
  /// Supremum bounds of |rho| and max_k |u_k| from mode amplitudes.
  double rho_bound() const;
  double speed_bound() const;
};

/// Smooth periodic reference:  rho = 2 + 0.5 cos(2 pi t) prod cos(2 pi x_k),
/// u_k = 0.3 amplitude single-mode fields, phase-staggered per component.
ManufacturedCase default_case(int dim, const GasLaw& gas, const Viscosity& visc);

/// Non-owning SmoothVector over separately owned components.
class SmoothVectorView final : public SmoothVector {
 public:
  explicit SmoothVectorView(const std::vector<std::unique_ptr<SmoothScalar>>* c) : c_(c) {}
  int dim() const override { return static_cast<int>(c_->size()); }
  const SmoothScalar& comp(int k) const override { return *(*c_)[k]; }

 private:
  const std::vector<std::unique_ptr<SmoothScalar>>* c_;
};

/// Owns a case and the source adapters wired for Solver::run. The mass
/// source is assembled in closed trigonometric form; momentum sources are
/// trigonometric plus the pressure-gradient part (closed form for gamma = 2,
/// quadrature otherwise). Addresses are captured internally, so instances
/// are pinned (no copy or move).
class ManufacturedProblem {
 public:
  explicit ManufacturedProblem(ManufacturedCase c);
  ManufacturedProblem(const ManufacturedProblem&) = delete;
  ManufacturedProblem& operator=(const ManufacturedProblem&) = delete;

  const ManufacturedCase& mcase() const { return case_; }
  /// Initial data plus both sources; valid while this object lives.
  Problem problem() const;

 private:
  ManufacturedCase case_;
  TrigScalar smass_;
  std::vector<std::unique_ptr<SmoothScalar>> smom_;
  SmoothVectorView smom_view_{&smom_};
};

// ---- error-versus-resolution studies ----

struct EnergyHistoryPoint {
  double t = 0.0;
  double rel_energy = 0.0; // against the reference state at the same time
  double grad_error = 0.0; // accumulated mu int ||grad_h(u - U)||^2 dt
  double div_error = 0.0;  // accumulated nu int ||div_h(u - U)||^2 dt
};

/// Per-step relative energy of a trajectory against a reference trajectory
/// on the same lattice, plus the running viscous error integrals of the
/// velocity mismatch (the scheme's own gradient and divergence). A
/// trajectory compared with itself is identically zero.
std::vector<EnergyHistoryPoint> relative_energy_history(const Solver& s,
                                                        const std::vector<State>& traj,
                                                        const std::vector<State>& ref,
                                                        const std::vector<double>& times);

struct EocMetrics {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  double sup_rel_energy = 0.0;    // max over time levels vs the smooth reference
  double dissipation_error = 0.0; // time-summed gradient/divergence mismatch
  double rho_error = 0.0;         // L^inf in time of L^min(gamma,2)
  double momentum_error = 0.0;    // L^inf in time of L^{2 gamma/(gamma+1)}
  double velocity_error = 0.0;    // L^2 in time of L^2
  double max_rho = 0.0;           // peak density over the run
  double max_speed = 0.0;         // peak velocity component magnitude
};

struct EocRates {
  double energy = 0.0;
  double dissipation = 0.0;
  double rho = 0.0;
  double momentum = 0.0;
  double velocity = 0.0;
};

struct EocStudy {
  std::vector<EocMetrics> levels;
  EocRates rates;
};

struct EocOptions {
  SchemeKind scheme = SchemeKind::FV;
  std::vector<int> levels{16, 32, 64};
  double T = 0.1;
  double dt_coeff = 1.0;
  int dt_power = 1;    // dt target = dt_coeff * h^dt_power
  SchemeConfig solver; // includes the upwind exponent
};

/// Runs the manufactured problem over the ladder and measures errors against
/// the smooth reference (relative energy by per-cell quadrature).
EocStudy eoc_study(const EocOptions& opt, const ManufacturedCase& mc);

}  // namespace nsfv::analysis
