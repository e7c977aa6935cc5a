#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "nsfv/kernels.hpp"

using namespace nsfv;

namespace {

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

// Sizes straddle the SIMD width boundaries, including the empty array.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 1000, 1001};

}  // namespace

TEST_CASE("scalar kernels compute the documented pointwise formulas") {
  const auto& t = kernels::scalar_table();
  std::vector<double> rin{2.0, 1.0, 3.0}, rout{5.0, 4.0, 6.0}, u{1.5, -2.0, 0.0};
  std::vector<double> dst(3);

  t.upwind(dst.data(), rin.data(), rout.data(), u.data(), 3);
  CHECK(dst[0] == 2.0 * 1.5);
  CHECK(dst[1] == 4.0 * -2.0);
  CHECK(dst[2] == 0.0);

  t.upwind_diffusive(dst.data(), rin.data(), rout.data(), u.data(), 0.25, 3);
  CHECK(dst[0] == 2.0 * 1.5 - 0.25 * 3.0);
  CHECK(dst[1] == 4.0 * -2.0 - 0.25 * 3.0);
  CHECK(dst[2] == -0.25 * 3.0);

  t.average(dst.data(), rin.data(), rout.data(), 3);
  CHECK(dst[1] == 2.5);
  t.difference(dst.data(), rin.data(), rout.data(), 3);
  CHECK(dst[0] == 3.0);
  t.scaled_difference(dst.data(), rin.data(), rout.data(), -2.0, 3);
  CHECK(dst[2] == -6.0);
  t.multiply(dst.data(), rin.data(), rout.data(), 3);
  CHECK(dst[2] == 18.0);

  std::vector<double> y{1.0, 1.0, 1.0};
  t.axpy(y.data(), 2.0, u.data(), 3);
  CHECK(y[0] == 4.0);
  CHECK(y[1] == -3.0);

  std::vector<int32_t> idx{2, 0, 1};
  t.gather(dst.data(), rin.data(), idx.data(), 3);
  CHECK(dst[0] == 3.0);
  CHECK(dst[1] == 2.0);

  CHECK(t.sum(rin.data(), 3) == 6.0);
  CHECK(t.dot(rin.data(), rout.data(), 3) == 10.0 + 4.0 + 18.0);
  CHECK(t.dot3(rin.data(), rout.data(), u.data(), 3) == 15.0 - 8.0 + 0.0);
  CHECK(t.min(u.data(), 3) == -2.0);
  CHECK(t.max_abs(u.data(), 3) == 2.0);
}

TEST_CASE("reductions over empty arrays have safe values") {
  const auto& t = kernels::scalar_table();
  CHECK(t.sum(nullptr, 0) == 0.0);
  CHECK(t.dot(nullptr, nullptr, 0) == 0.0);
  CHECK(t.max_abs(nullptr, 0) == 0.0);
}

TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
  const kernels::Table* v = kernels::avx2_table();
  if (v == nullptr) return;  // not this machine
  const auto& s = kernels::scalar_table();

  std::mt19937_64 g(7);
  for (std::size_t n : kSizes) {
    auto a = random_vec(g, n), b = random_vec(g, n), c = random_vec(g, n);
    std::vector<double> ds(n), dv(n);

    s.average(ds.data(), a.data(), b.data(), n);
    v->average(dv.data(), a.data(), b.data(), n);
    CHECK(ds == dv);
    s.difference(ds.data(), a.data(), b.data(), n);
    v->difference(dv.data(), a.data(), b.data(), n);
    CHECK(ds == dv);
    s.scaled_difference(ds.data(), a.data(), b.data(), 1.7, n);
    v->scaled_difference(dv.data(), a.data(), b.data(), 1.7, n);
    CHECK(ds == dv);
    s.upwind(ds.data(), a.data(), b.data(), c.data(), n);
    v->upwind(dv.data(), a.data(), b.data(), c.data(), n);
    CHECK(ds == dv);
    s.upwind_diffusive(ds.data(), a.data(), b.data(), c.data(), 0.31, n);
    v->upwind_diffusive(dv.data(), a.data(), b.data(), c.data(), 0.31, n);
    CHECK(ds == dv);
    s.multiply(ds.data(), a.data(), b.data(), n);
    v->multiply(dv.data(), a.data(), b.data(), n);
    CHECK(ds == dv);

    ds = c;
    dv = c;
    s.axpy(ds.data(), -0.9, a.data(), n);
    v->axpy(dv.data(), -0.9, a.data(), n);
    CHECK(ds == dv);

    std::vector<int32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = int32_t((i * 7 + 3) % n);
    if (n > 0) {
      s.gather(ds.data(), a.data(), idx.data(), n);
      v->gather(dv.data(), a.data(), idx.data(), n);
      CHECK(ds == dv);
    }

    CHECK(s.sum(a.data(), n) == v->sum(a.data(), n));
    CHECK(s.dot(a.data(), b.data(), n) == v->dot(a.data(), b.data(), n));
    CHECK(s.dot3(a.data(), b.data(), c.data(), n) == v->dot3(a.data(), b.data(), c.data(), n));
    if (n > 0) CHECK(s.min(a.data(), n) == v->min(a.data(), n));
    CHECK(s.max_abs(a.data(), n) == v->max_abs(a.data(), n));
  }
}

TEST_CASE("backend selection honors requests and falls back cleanly") {
  std::string_view before = kernels::backend();
  CHECK(kernels::select_backend("scalar"));
  CHECK(kernels::backend() == "scalar");
  CHECK_FALSE(kernels::select_backend("neon"));
  CHECK(kernels::backend() == "scalar");
  if (kernels::avx2_table() != nullptr) {
    CHECK(kernels::select_backend("avx2"));
    CHECK(kernels::backend() == "avx2");
  }
  CHECK(kernels::select_backend("auto"));
  CHECK(kernels::select_backend(before));
}
