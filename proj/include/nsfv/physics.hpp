#pragma once

#include "nsfv/fields.hpp"
#include "nsfv/mesh.hpp"
#include "nsfv/smooth.hpp"

namespace nsfv {

/// Isentropic pressure law p = a rho^gamma, a > 0, gamma > 1.
struct GasLaw {
  double a = 1.0;
  double gamma = 1.4;

  GasLaw(double a_, double gamma_);

  double pressure(double rho) const;
  double dpressure(double rho) const;
  /// Pressure potential H(rho) = a rho^gamma / (gamma - 1); satisfies
  /// rho H'(rho) - H(rho) = p(rho).
  double potential(double rho) const;
  double dpotential(double rho) const;
  /// Bregman distance E(rho | r) = H(rho) - H'(r)(rho - r) - H(r); >= 0,
  /// zero iff rho == r.
  double relative_potential(double rho, double r) const;
};

/// Shear/bulk viscosity pair; the divergence term coefficient is
/// nu = ((d - 2)/d) mu + lambda (so nu = lambda in 2D).
struct Viscosity {
  double mu = 0.0;
  double lambda = 0.0;

  Viscosity(double mu_, double lambda_);
  double nu(int dim) const { return (double(dim) - 2.0) / double(dim) * mu + lambda; }
};

/// Total discrete energy  sum_K |K| ( rho_K |ubar_K|^2 / 2 + H(rho_K) ).
double total_energy(const GasLaw& gas, const CellField& rho, const CellVectorField& ubar);

/// Viscous dissipation  mu ||grad||^2 + nu ||div||^2  for a gradient tensor
/// and divergence produced by the scheme's discrete operators.
double dissipation(const Viscosity& visc, int dim, const TensorField& grad,
                   const CellField& div);

/// Relative energy against a discrete reference (r, Ubar):
///   sum_K |K| ( rho_K |ubar_K - Ubar_K|^2 / 2 + E(rho_K | r_K) ).
double relative_energy(const GasLaw& gas, const CellField& rho, const CellVectorField& ubar,
                       const CellField& r, const CellVectorField& Ubar);

/// Relative energy against a smooth reference (r, U) at time t, integrated
/// with quadrature cell by cell (the kinetic part compares the piecewise
/// constant ubar with U(t, x) pointwise).
double relative_energy_smooth(const GasLaw& gas, const CellField& rho,
                              const CellVectorField& ubar, const SmoothScalar& r,
                              const SmoothVector& U, double t);

/// L^p distance between a piecewise-constant cell field and a smooth function
/// at time t, by per-cell quadrature.
double lp_error(const CellField& f, const SmoothScalar& g, double t, double p);

/// L^2 distance between a cell vector field and a smooth vector at time t.
double l2_error(const CellVectorField& v, const SmoothVector& U, double t);

/// L^2 distance between a staggered field and a smooth vector at time t,
/// component i integrated over the direction-i dual cells.
double l2_error(const StaggeredField& u, const SmoothVector& U, double t);

}  // namespace nsfv
