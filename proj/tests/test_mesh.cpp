#include <array>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "nsfv/mesh.hpp"

using namespace nsfv;

TEST_CASE("constructor validates dimension and resolution") {
  CHECK_THROWS_AS(Mesh(1, 8), std::invalid_argument);
  CHECK_THROWS_AS(Mesh(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(Mesh(2, 1), std::invalid_argument);
  CHECK_NOTHROW(Mesh(2, 2));
}

TEST_CASE("sizes and measures") {
  Mesh m(3, 4);
  CHECK(m.dim() == 3);
  CHECK(m.n() == 4);
  CHECK(m.h() == 0.25);
  CHECK(m.cells() == 64);
  CHECK(m.faces_per_dir() == 64);
  CHECK(m.cell_volume() == doctest::Approx(0.25 * 0.25 * 0.25));
  CHECK(m.face_area() == doctest::Approx(0.25 * 0.25));

  Mesh m2(2, 8);
  CHECK(m2.cells() == 64);
  CHECK(m2.cell_volume() == doctest::Approx(1.0 / 64.0));
  CHECK(m2.face_area() == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("encode and decode are inverse and row-major, first axis slowest") {
  Mesh m(3, 4);
  CHECK(m.encode({1, 2, 3}) == (1 * 4 + 2) * 4 + 3);
  for (std::int64_t id = 0; id < m.cells(); ++id) CHECK(m.encode(m.decode(id)) == id);

  Mesh m2(2, 5);
  CHECK(m2.encode({3, 4, 0}) == 3 * 5 + 4);
  std::array<int, 3> c = m2.decode(3 * 5 + 4);
  CHECK(c[0] == 3);
  CHECK(c[1] == 4);
  CHECK(c[2] == 0);
}

TEST_CASE("neighbor maps wrap periodically and invert each other") {
  for (int d : {2, 3}) {
    Mesh m(d, 4);
    for (int dir = 0; dir < d; ++dir) {
      for (std::int64_t id = 0; id < m.cells(); ++id) {
        auto c = m.decode(id);
        auto cu = c;
        cu[dir] = (c[dir] + 1) % 4;
        CHECK(m.up(dir, id) == m.encode(cu));
        CHECK(m.down(dir, m.up(dir, id)) == id);
        CHECK(m.up(dir, m.down(dir, id)) == id);
      }
    }
  }
}

TEST_CASE("face orientation: up neighbor sits one spacing along the normal") {
  Mesh m(2, 8);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
      auto [K, L] = m.face_neighbors(dir, f);
      CHECK(K == f);
      auto xK = m.cell_center(K);
      auto xL = m.cell_center(L);
      double shift = xL[dir] - xK[dir];
      bool ok = shift == doctest::Approx(m.h()) || shift == doctest::Approx(m.h() - 1.0);
      CHECK(ok);
    }
  }
}

TEST_CASE("centers and boxes") {
  Mesh m(2, 4);
  std::int64_t id = m.encode({1, 2, 0});
  auto x = m.cell_center(id);
  CHECK(x[0] == doctest::Approx(0.375));
  CHECK(x[1] == doctest::Approx(0.625));

  double lo[3], hi[3];
  m.cell_bounds(id, lo, hi);
  CHECK(lo[0] == doctest::Approx(0.25));
  CHECK(hi[0] == doctest::Approx(0.5));
  CHECK(lo[1] == doctest::Approx(0.5));
  CHECK(hi[1] == doctest::Approx(0.75));

  auto xf = m.face_center(0, id);
  CHECK(xf[0] == doctest::Approx(0.5));
  CHECK(xf[1] == doctest::Approx(0.625));

  m.dual_bounds(0, id, lo, hi);
  CHECK(lo[0] == doctest::Approx(0.375));
  CHECK(hi[0] == doctest::Approx(0.625));
  CHECK(lo[1] == doctest::Approx(0.5));
  CHECK(hi[1] == doctest::Approx(0.75));
}

TEST_CASE("second-level dual boxes: shifted in both directions, cell for i==j") {
  Mesh m(2, 4);
  std::int64_t f = m.encode({1, 1, 0});
  double lo[3], hi[3], lo2[3], hi2[3];

  m.bidual_bounds(0, 1, f, lo, hi);
  CHECK(lo[0] == doctest::Approx(0.25 + 0.125));
  CHECK(hi[0] == doctest::Approx(0.5 + 0.125));
  CHECK(lo[1] == doctest::Approx(0.25 + 0.125));
  CHECK(hi[1] == doctest::Approx(0.5 + 0.125));

  m.bidual_bounds(0, 0, f, lo, hi);
  m.cell_bounds(m.up(0, f), lo2, hi2);
  for (int a = 0; a < 2; ++a) {
    CHECK(lo[a] == doctest::Approx(lo2[a]));
    CHECK(hi[a] == doctest::Approx(hi2[a]));
  }
}
