#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nsfv/fluxes.hpp"
#include "nsfv/ops.hpp"

using namespace nsfv;

TEST_CASE("upwind takes the donor-cell value") {
  Mesh m(2, 4);
  CellField r(m);
  for (std::int64_t c = 0; c < m.cells(); ++c) r[c] = double(c);
  StaggeredField un(m);
  std::int64_t f = m.encode({1, 2, 0});
  un.c[0].assign(m.cells(), 0.0);
  un.c[0][f] = 2.0;  // outflow K -> L: donor is K
  un.c[1][f] = -0.5; // inflow: donor is L = up(1, f)

  StaggeredField F = flux::upwind(r, un);
  CHECK(F.c[0][f] == doctest::Approx(2.0 * r[f]));
  CHECK(F.c[1][f] == doctest::Approx(-0.5 * r[m.up(1, f)]));
  // zero velocity gives zero flux everywhere else
  CHECK(F.c[0][m.encode({0, 0, 0})] == 0.0);
}

TEST_CASE("diffusive correction subtracts h^eps times the jump") {
  Mesh m(2, 4);  // h = 1/4
  CellField r(m);
  for (std::int64_t c = 0; c < m.cells(); ++c) r[c] = 0.1 * double(c);
  Rng rng(3);
  StaggeredField un = ops::random_staggered(m, rng);

  for (double eps : {0.0, 0.5, -0.5}) {
    StaggeredField base = flux::upwind(r, un);
    StaggeredField F = flux::upwind_diffusive(r, un, eps);
    double eta = std::pow(m.h(), eps);
    for (int i = 0; i < 2; ++i)
      for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
        double jump = r[m.up(i, f)] - r[f];
        CHECK(F.c[i][f] == doctest::Approx(base.c[i][f] - eta * jump).epsilon(1e-14));
      }
  }
}

TEST_CASE("vector upwind matches per-component scalar upwind") {
  Mesh m(3, 4);
  Rng rng(9);
  CellVectorField q = ops::random_cell_vector(m, rng);
  StaggeredField un = ops::random_staggered(m, rng);

  TensorField T = flux::upwind(q, un);
  TensorField Td = flux::upwind_diffusive(q, un, 0.5);
  for (int k = 0; k < 3; ++k) {
    CellField qk(m);
    qk.v = q.c[k];
    StaggeredField Fk = flux::upwind(qk, un);
    StaggeredField Fkd = flux::upwind_diffusive(qk, un, 0.5);
    for (int i = 0; i < 3; ++i)
      for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
        CHECK(T.c[k][i][f] == Fk.c[i][f]);
        CHECK(Td.c[k][i][f] == Fkd.c[i][f]);
      }
  }
}

TEST_CASE("stabilization exponent at or below -1 is rejected") {
  Mesh m(2, 4);
  CellField r(m);
  StaggeredField un(m);
  CellVectorField q(m);
  CHECK_THROWS_AS(flux::upwind_diffusive(r, un, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(flux::upwind_diffusive(r, un, -1.5), std::invalid_argument);
  CHECK_THROWS_AS(flux::upwind_diffusive(q, un, -1.0), std::invalid_argument);
  CHECK_NOTHROW(flux::upwind_diffusive(r, un, -0.9999));
}

TEST_CASE("flux divergence conserves the total") {
  Mesh m(2, 8);
  Rng rng(21);
  CellField r = ops::random_cell_field(m, rng);
  StaggeredField un = ops::random_staggered(m, rng);
  for (double eps : {0.0, 0.5}) {
    CellField div = flux::flux_divergence(flux::upwind_diffusive(r, un, eps));
    CHECK(std::fabs(ops::integral(div)) <= 1e-13);
  }
}

TEST_CASE("normal velocity averages each component over its own faces") {
  Mesh m(2, 4);
  Rng rng(2);
  CellVectorField v = ops::random_cell_vector(m, rng);
  StaggeredField un = flux::normal_velocity(v);
  for (int i = 0; i < 2; ++i)
    for (std::int64_t f = 0; f < m.faces_per_dir(); ++f)
      CHECK(un.c[i][f] == doctest::Approx(0.5 * (v.c[i][f] + v.c[i][m.up(i, f)])));
}

TEST_CASE("upwind flux of smooth data is consistent with the transport flux") {
  // For projected smooth r and u the face flux converges to r u at the face
  // at first order; check decay of the worst-face defect.
  const double tau = 2.0 * std::acos(-1.0);
  TrigScalar r(2);
  TrigMode mr;
  mr.amp = 0.4;
  mr.freq[0] = tau;
  mr.phase[1] = 0.7;
  mr.freq[1] = tau;
  r.add_mode(mr);
  TrigScalar rshift = r + TrigScalar::constant(2, 2.0);

  double prev = 0.0;
  for (int lvl = 0; lvl < 3; ++lvl) {
    int n = 8 << lvl;
    Mesh m(2, n);
    CellField rh = ops::project_cell(m, rshift, 0.0);
    CellVectorField vh(m);
    vh.c[0].assign(m.cells(), 0.3);
    vh.c[1].assign(m.cells(), -0.4);
    StaggeredField un = flux::normal_velocity(vh);
    StaggeredField F = flux::upwind_diffusive(rh, un, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      double ui = i == 0 ? 0.3 : -0.4;
      for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
        double exact = ui * rshift.value(0.0, m.face_center(i, f));
        worst = std::max(worst, std::fabs(F.c[i][f] - exact));
      }
    }
    if (lvl > 0) CHECK(worst < 0.75 * prev);
    prev = worst;
  }
}
