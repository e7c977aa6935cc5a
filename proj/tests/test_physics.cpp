#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nsfv/ops.hpp"
#include "nsfv/physics.hpp"

using namespace nsfv;

namespace {
const double kTau = 2.0 * std::acos(-1.0);
}

TEST_CASE("gas law closed forms and derivative consistency") {
  GasLaw quadratic(0.5, 2.0);
  CHECK(quadratic.pressure(3.0) == doctest::Approx(4.5));
  CHECK(quadratic.dpressure(3.0) == doctest::Approx(3.0));
  CHECK(quadratic.potential(3.0) == doctest::Approx(4.5));
  CHECK(quadratic.dpotential(3.0) == doctest::Approx(3.0));
  // For the quadratic law the Bregman distance collapses to a (rho - r)^2.
  CHECK(GasLaw(0.7, 2.0).relative_potential(2.5, 1.5) == doctest::Approx(0.7));

  GasLaw gas(1.5, 1.4);
  for (double rho : {0.5, 1.0, 2.0, 3.7}) {
    // rho H'(rho) - H(rho) = p(rho)
    CHECK(rho * gas.dpotential(rho) - gas.potential(rho) ==
          doctest::Approx(gas.pressure(rho)).epsilon(1e-13));
    double e = 1e-6;
    double fd = (gas.pressure(rho + e) - gas.pressure(rho - e)) / (2.0 * e);
    CHECK(gas.dpressure(rho) == doctest::Approx(fd).epsilon(1e-8));
    fd = (gas.potential(rho + e) - gas.potential(rho - e)) / (2.0 * e);
    CHECK(gas.dpotential(rho) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("invalid coefficients are rejected") {
  CHECK_THROWS_AS(GasLaw(0.0, 1.4), std::invalid_argument);
  CHECK_THROWS_AS(GasLaw(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(GasLaw(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GasLaw(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Viscosity(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Viscosity(1.0, -0.1), std::invalid_argument);
  CHECK_NOTHROW(Viscosity(1.0, 0.0));
}

TEST_CASE("divergence viscosity coefficient per dimension") {
  Viscosity v(0.9, 0.2);
  CHECK(v.nu(2) == doctest::Approx(0.2));
  CHECK(v.nu(3) == doctest::Approx(0.9 / 3.0 + 0.2));
}

TEST_CASE("relative potential is a strict Bregman distance") {
  GasLaw gas(1.0, 1.4);
  for (double rho : {0.3, 1.0, 2.5})
    for (double r : {0.3, 1.0, 2.5}) {
      double e = gas.relative_potential(rho, r);
      if (rho == r)
        CHECK(e == 0.0);
      else
        CHECK(e > 0.0);
    }
}

TEST_CASE("total energy of a constant state") {
  Mesh m(2, 8);
  GasLaw gas(1.0, 2.0);
  CellField rho(m);
  rho.v.assign(m.cells(), 2.0);
  CellVectorField u(m);
  u.c[0].assign(m.cells(), 0.3);
  u.c[1].assign(m.cells(), -0.2);
  CHECK(total_energy(gas, rho, u) == doctest::Approx(0.5 * 2.0 * 0.13 + 4.0).epsilon(1e-14));
}

TEST_CASE("dissipation combines the two norms with mu and nu") {
  Mesh m(2, 4);
  Viscosity visc(2.0, 0.4);
  TensorField g(m);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.c[i][j].assign(m.cells(), 0.5);
  CellField dv(m);
  dv.v.assign(m.cells(), 0.3);
  // ||g||^2 = 0.25 * 4 = 1, ||div||^2 = 0.09.
  CHECK(dissipation(visc, 2, g, dv) == doctest::Approx(2.0 * 1.0 + 0.4 * 0.09).epsilon(1e-14));
}

TEST_CASE("relative energy of a state with itself is exactly zero") {
  Mesh m(2, 8);
  Rng rng(17);
  GasLaw gas(1.0, 1.4);
  CellField rho = ops::random_cell_field(m, rng);
  for (auto& x : rho.v) x = 1.5 + 0.5 * x;  // keep positive
  CellVectorField u = ops::random_cell_vector(m, rng);
  CHECK(relative_energy(gas, rho, u, rho, u) == 0.0);

  // And it separates states: perturbing either argument gives > 0.
  CellField rho2 = rho;
  rho2.v[5] += 0.25;
  CHECK(relative_energy(gas, rho2, u, rho, u) > 0.0);
  CellVectorField u2 = u;
  u2.c[0][3] += 0.5;
  CHECK(relative_energy(gas, rho, u2, rho, u) > 0.0);
}

TEST_CASE("relative energy against smooth references") {
  Mesh m(2, 8);
  GasLaw gas(1.0, 2.0);
  CellField rho(m);
  rho.v.assign(m.cells(), 2.0);
  CellVectorField u(m);

  TrigScalar r2 = TrigScalar::constant(2, 2.0);
  std::vector<TrigScalar> zc = {TrigScalar::constant(2, 0.0), TrigScalar::constant(2, 0.0)};
  CHECK(relative_energy_smooth(gas, rho, u, r2, TrigVector(zc), 0.0) == doctest::Approx(0.0));

  std::vector<TrigScalar> cc = {TrigScalar::constant(2, 0.3), TrigScalar::constant(2, 0.3)};
  // Kinetic part only: 1/2 * 2 * (0.09 + 0.09).
  CHECK(relative_energy_smooth(gas, rho, u, r2, TrigVector(cc), 0.0) ==
        doctest::Approx(0.18).epsilon(1e-13));

  // Potential part only, quadratic law: E(2 | 2 + s) = s^2 pointwise.
  TrigScalar rs(2);
  TrigMode md;
  md.amp = 0.5;
  md.freq[0] = kTau;
  rs.add_mode(md);
  double val = relative_energy_smooth(gas, rho, u, r2 + rs, TrigVector(zc), 0.0);
  // integral of (0.5 cos(2 pi x))^2 = 0.125
  CHECK(val == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("error norms against smooth functions") {
  Mesh m(2, 8);
  CellField z(m);
  TrigScalar one = TrigScalar::constant(2, 1.0);
  CHECK(lp_error(z, one, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_error(z, one, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_error(z, one, 0.0, 1.5) == doctest::Approx(1.0).epsilon(1e-13));

  TrigScalar wave(2);
  TrigMode md;
  md.amp = 1.0;
  md.freq[0] = kTau;
  wave.add_mode(md);
  CHECK(lp_error(z, wave, 0.0, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));

  std::vector<TrigScalar> ones = {one, one};
  CellVectorField vz(m);
  CHECK(l2_error(vz, TrigVector(ones), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  StaggeredField sz(m);
  CHECK(l2_error(sz, TrigVector(ones), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}
