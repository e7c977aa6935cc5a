#include "nsfv/physics.hpp"

#include <cmath>
#include <stdexcept>

#include "nsfv/kernels.hpp"
#include "nsfv/ops.hpp"

namespace nsfv {

GasLaw::GasLaw(double a_, double gamma_) : a(a_), gamma(gamma_) {
  if (!(a > 0.0)) throw std::invalid_argument("GasLaw: a must be positive");
  if (!(gamma > 1.0)) throw std::invalid_argument("GasLaw: gamma must exceed 1");
}

double GasLaw::pressure(double rho) const {
  if (gamma == 2.0) return a * rho * rho;
  return a * std::pow(rho, gamma);
}

double GasLaw::dpressure(double rho) const {
  if (gamma == 2.0) return 2.0 * a * rho;
  return a * gamma * std::pow(rho, gamma - 1.0);
}

double GasLaw::potential(double rho) const { return pressure(rho) / (gamma - 1.0); }

double GasLaw::dpotential(double rho) const { return dpressure(rho) / (gamma - 1.0); }

double GasLaw::relative_potential(double rho, double r) const {
  return potential(rho) - dpotential(r) * (rho - r) - potential(r);
}

Viscosity::Viscosity(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
  if (!(mu > 0.0)) throw std::invalid_argument("Viscosity: mu must be positive");
  if (lambda < 0.0) throw std::invalid_argument("Viscosity: lambda must be >= 0");
}

double total_energy(const GasLaw& gas, const CellField& rho, const CellVectorField& ubar) {
  const Mesh& m = *rho.mesh;
  double kin = 0.0;
  for (int k = 0; k < m.dim(); ++k)
    kin += kernels::active().dot3(rho.v.data(), ubar.c[k].data(), ubar.c[k].data(),
                                  rho.v.size());
  double pot = 0.0;
  for (double x : rho.v) pot += gas.potential(x);
  return m.cell_volume() * (0.5 * kin + pot);
}

double dissipation(const Viscosity& visc, int dim, const TensorField& grad,
                   const CellField& div) {
  double g = ops::l2(grad);
  double dv = ops::l2(div);
  return visc.mu * g * g + visc.nu(dim) * dv * dv;
}

double relative_energy(const GasLaw& gas, const CellField& rho, const CellVectorField& ubar,
                       const CellField& r, const CellVectorField& Ubar) {
  const Mesh& m = *rho.mesh;
  double s = 0.0;
  for (std::int64_t k = 0; k < m.cells(); ++k) {
    double kin = 0.0;
    for (int c = 0; c < m.dim(); ++c) {
      double dc = ubar.c[c][k] - Ubar.c[c][k];
      kin += dc * dc;
    }
    s += 0.5 * rho.v[k] * kin + gas.relative_potential(rho.v[k], r.v[k]);
  }
  return m.cell_volume() * s;
}

double relative_energy_smooth(const GasLaw& gas, const CellField& rho,
                              const CellVectorField& ubar, const SmoothScalar& r,
                              const SmoothVector& U, double t) {
  const Mesh& m = *rho.mesh;
  double lo[3], hi[3];
  double s = 0.0;
  for (std::int64_t k = 0; k < m.cells(); ++k) {
    m.cell_bounds(k, lo, hi);
    double rk = rho.v[k];
    std::array<double, 3> ub = {0.0, 0.0, 0.0};
    for (int c = 0; c < m.dim(); ++c) ub[c] = ubar.c[c][k];
    s += quad::box(
        [&](const std::array<double, 3>& x) {
          double kin = 0.0;
          for (int c = 0; c < m.dim(); ++c) {
            double dc = ub[c] - U.comp(c).value(t, x);
            kin += dc * dc;
          }
          return 0.5 * rk * kin + gas.relative_potential(rk, r.value(t, x));
        },
        lo, hi, m.dim());
  }
  return s;
}

double lp_error(const CellField& f, const SmoothScalar& g, double t, double p) {
  const Mesh& m = *f.mesh;
  double lo[3], hi[3];
  double s = 0.0;
  for (std::int64_t k = 0; k < m.cells(); ++k) {
    m.cell_bounds(k, lo, hi);
    double fk = f.v[k];
    s += quad::box(
        [&](const std::array<double, 3>& x) { return std::pow(std::fabs(fk - g.value(t, x)), p); },
        lo, hi, m.dim());
  }
  return std::pow(s, 1.0 / p);
}

double l2_error(const CellVectorField& v, const SmoothVector& U, double t) {
  const Mesh& m = *v.mesh;
  double lo[3], hi[3];
  double s = 0.0;
  for (std::int64_t k = 0; k < m.cells(); ++k) {
    m.cell_bounds(k, lo, hi);
    for (int c = 0; c < m.dim(); ++c) {
      double vk = v.c[c][k];
      s += quad::box(
          [&](const std::array<double, 3>& x) {
            double dc = vk - U.comp(c).value(t, x);
            return dc * dc;
          },
          lo, hi, m.dim());
    }
  }
  return std::sqrt(s);
}

double l2_error(const StaggeredField& u, const SmoothVector& U, double t) {
  const Mesh& m = *u.mesh;
  double lo[3], hi[3];
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
      m.dual_bounds(i, f, lo, hi);
      double uf = u.c[i][f];
      s += quad::box(
          [&](const std::array<double, 3>& x) {
            double dc = uf - U.comp(i).value(t, x);
            return dc * dc;
          },
          lo, hi, m.dim());
    }
  return std::sqrt(s);
}

}  // namespace nsfv
