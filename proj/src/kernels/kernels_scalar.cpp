#include "nsfv/kernels.hpp"

#include <cmath>

// Scalar reference kernels. Reductions accumulate in four independent lanes
// and combine as (l0+l2)+(l1+l3) before folding the tail, mirroring the AVX2
// horizontal reduction, so both backends agree bitwise.

namespace nsfv::kernels {
namespace {

void gather_s(double* dst, const double* src, const int32_t* idx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[idx[i]];
}

void average_s(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = 0.5 * (a[i] + b[i]);
}

void difference_s(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = b[i] - a[i];
}

void scaled_difference_s(double* dst, const double* a, const double* b, double s,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = s * (b[i] - a[i]);
}

void upwind_s(double* dst, const double* rin, const double* rout, const double* u,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double up = 0.5 * (u[i] + std::fabs(u[i]));
    double un = 0.5 * (u[i] - std::fabs(u[i]));
    dst[i] = rin[i] * up + rout[i] * un;
  }
}

void upwind_diffusive_s(double* dst, const double* rin, const double* rout,
                        const double* u, double eta, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double up = 0.5 * (u[i] + std::fabs(u[i]));
    double un = 0.5 * (u[i] - std::fabs(u[i]));
    dst[i] = std::fma(-eta, rout[i] - rin[i], rin[i] * up + rout[i] * un);
  }
}

void axpy_s(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void multiply_s(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

double sum_s(const double* a, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += a[i + l];
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (std::size_t i = k; i < n; ++i) s += a[i];
  return s;
}

double dot_s(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] = std::fma(a[i + l], b[i + l], acc[l]);
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (std::size_t i = k; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double dot3_s(const double* a, const double* b, const double* c, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] = std::fma(a[i + l] * b[i + l], c[i + l], acc[l]);
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (std::size_t i = k; i < n; ++i) s = std::fma(a[i] * b[i], c[i], s);
  return s;
}

double min_s(const double* a, std::size_t n) {
  if (n == 0) return 0.0;
  if (n < 4) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i) m = a[i] < m ? a[i] : m;
    return m;
  }
  double acc[4] = {a[0], a[1], a[2], a[3]};
  std::size_t k = n - n % 4;
  for (std::size_t i = 4; i < k; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] = a[i + l] < acc[l] ? a[i + l] : acc[l];
  double m0 = acc[0] < acc[2] ? acc[0] : acc[2];
  double m1 = acc[1] < acc[3] ? acc[1] : acc[3];
  double m = m0 < m1 ? m0 : m1;
  for (std::size_t i = k; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double max_abs_s(const double* a, std::size_t n) {
  if (n == 0) return 0.0;
  if (n < 4) {
    double m = std::fabs(a[0]);
    for (std::size_t i = 1; i < n; ++i) {
      double v = std::fabs(a[i]);
      m = v > m ? v : m;
    }
    return m;
  }
  double acc[4] = {std::fabs(a[0]), std::fabs(a[1]), std::fabs(a[2]), std::fabs(a[3])};
  std::size_t k = n - n % 4;
  for (std::size_t i = 4; i < k; i += 4)
    for (int l = 0; l < 4; ++l) {
      double v = std::fabs(a[i + l]);
      acc[l] = v > acc[l] ? v : acc[l];
    }
  double m0 = acc[0] > acc[2] ? acc[0] : acc[2];
  double m1 = acc[1] > acc[3] ? acc[1] : acc[3];
  double m = m0 > m1 ? m0 : m1;
  for (std::size_t i = k; i < n; ++i) {
    double v = std::fabs(a[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const Table& scalar_table() {
  static const Table t = {gather_s,  average_s, difference_s, scaled_difference_s,
                          upwind_s,  upwind_diffusive_s, axpy_s, multiply_s,
                          sum_s,     dot_s,     dot3_s,       min_s,
                          max_abs_s};
  return t;
}

}  // namespace nsfv::kernels
