#include "nsfv/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace nsfv::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);  // (v0+v2, v1+v3)
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_min_pd(lo, hi);
  double m0 = _mm_cvtsd_f64(s);
  double m1 = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  return m0 < m1 ? m0 : m1;
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_max_pd(lo, hi);
  double m0 = _mm_cvtsd_f64(s);
  double m1 = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  return m0 > m1 ? m0 : m1;
}

void gather_v(double* dst, const double* src, const int32_t* idx, std::size_t n) {
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) {
    __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    _mm256_storeu_pd(dst + i, _mm256_i32gather_pd(src, ix, 8));
  }
  for (std::size_t i = k; i < n; ++i) dst[i] = src[idx[i]];
}

void average_v(double* dst, const double* a, const double* b, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(half, s));
  }
  for (std::size_t i = k; i < n; ++i) dst[i] = 0.5 * (a[i] + b[i]);
}

void difference_v(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i)));
  for (std::size_t i = k; i < n; ++i) dst[i] = b[i] - a[i];
}

void scaled_difference_v(double* dst, const double* a, const double* b, double s,
                         std::size_t n) {
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(sv, d));
  }
  for (std::size_t i = k; i < n; ++i) dst[i] = s * (b[i] - a[i]);
}

inline __m256d upwind_pd(__m256d rin, __m256d rout, __m256d u) {
  const __m256d half = _mm256_set1_pd(0.5);
  __m256d au = abs_pd(u);
  __m256d up = _mm256_mul_pd(half, _mm256_add_pd(u, au));
  __m256d un = _mm256_mul_pd(half, _mm256_sub_pd(u, au));
  return _mm256_add_pd(_mm256_mul_pd(rin, up), _mm256_mul_pd(rout, un));
}

void upwind_v(double* dst, const double* rin, const double* rout, const double* u,
              std::size_t n) {
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    _mm256_storeu_pd(dst + i, upwind_pd(_mm256_loadu_pd(rin + i), _mm256_loadu_pd(rout + i),
                                        _mm256_loadu_pd(u + i)));
  for (std::size_t i = k; i < n; ++i) {
    double up = 0.5 * (u[i] + std::fabs(u[i]));
    double un = 0.5 * (u[i] - std::fabs(u[i]));
    dst[i] = rin[i] * up + rout[i] * un;
  }
}

void upwind_diffusive_v(double* dst, const double* rin, const double* rout,
                        const double* u, double eta, std::size_t n) {
  const __m256d ev = _mm256_set1_pd(eta);
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) {
    __m256d ri = _mm256_loadu_pd(rin + i);
    __m256d ro = _mm256_loadu_pd(rout + i);
    __m256d uw = upwind_pd(ri, ro, _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(dst + i, _mm256_fnmadd_pd(ev, _mm256_sub_pd(ro, ri), uw));
  }
  for (std::size_t i = k; i < n; ++i) {
    double up = 0.5 * (u[i] + std::fabs(u[i]));
    double un = 0.5 * (u[i] - std::fabs(u[i]));
    dst[i] = std::fma(-eta, rout[i] - rin[i], rin[i] * up + rout[i] * un);
  }
}

void axpy_v(double* y, double a, const double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (std::size_t i = k; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void multiply_v(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (std::size_t i = k; i < n; ++i) dst[i] = a[i] * b[i];
}

double sum_v(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (std::size_t i = k; i < n; ++i) s += a[i];
  return s;
}

double dot_v(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (std::size_t i = k; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double dot3_v(const double* a, const double* b, const double* c, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = n - n % 4;
  for (std::size_t i = 0; i < k; i += 4) {
    __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
  }
  double s = hsum(acc);
  for (std::size_t i = k; i < n; ++i) s = std::fma(a[i] * b[i], c[i], s);
  return s;
}

double min_v(const double* a, std::size_t n) {
  if (n < 4) {
    if (n == 0) return 0.0;
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i) m = a[i] < m ? a[i] : m;
    return m;
  }
  __m256d acc = _mm256_loadu_pd(a);
  std::size_t k = n - n % 4;
  for (std::size_t i = 4; i < k; i += 4) acc = _mm256_min_pd(_mm256_loadu_pd(a + i), acc);
  double m = hmin(acc);
  for (std::size_t i = k; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double max_abs_v(const double* a, std::size_t n) {
  if (n < 4) {
    if (n == 0) return 0.0;
    double m = std::fabs(a[0]);
    for (std::size_t i = 1; i < n; ++i) {
      double v = std::fabs(a[i]);
      m = v > m ? v : m;
    }
    return m;
  }
  __m256d acc = abs_pd(_mm256_loadu_pd(a));
  std::size_t k = n - n % 4;
  for (std::size_t i = 4; i < k; i += 4)
    acc = _mm256_max_pd(abs_pd(_mm256_loadu_pd(a + i)), acc);
  double m = hmax(acc);
  for (std::size_t i = k; i < n; ++i) {
    double v = std::fabs(a[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const Table* avx2_table_impl() {
  static const Table t = {gather_v,  average_v, difference_v, scaled_difference_v,
                          upwind_v,  upwind_diffusive_v, axpy_v, multiply_v,
                          sum_v,     dot_v,     dot3_v,       min_v,
                          max_abs_v};
  return &t;
}

}  // namespace nsfv::kernels

#endif  // x86_64
