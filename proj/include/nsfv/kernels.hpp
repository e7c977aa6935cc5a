#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace nsfv::kernels {

/// Elementwise and reduction kernels over contiguous double arrays.
///
/// Two implementations exist: a scalar reference and an AVX2 variant picked
/// at runtime when the CPU supports it. Both produce bit-identical results;
/// reductions use the same 4-lane accumulation order and the same fused
/// multiply-adds in either backend, so results do not depend on the backend
/// selected.
struct Table {
  /// dst[i] = src[idx[i]]
  void (*gather)(double* dst, const double* src, const int32_t* idx, std::size_t n);
  /// dst[i] = 0.5 * (a[i] + b[i])
  void (*average)(double* dst, const double* a, const double* b, std::size_t n);
  /// dst[i] = b[i] - a[i]
  void (*difference)(double* dst, const double* a, const double* b, std::size_t n);
  /// dst[i] = s * (b[i] - a[i])
  void (*scaled_difference)(double* dst, const double* a, const double* b, double s,
                            std::size_t n);
  /// dst[i] = rin[i] * max(u[i], 0) + rout[i] * min(u[i], 0)
  void (*upwind)(double* dst, const double* rin, const double* rout, const double* u,
                 std::size_t n);
  /// dst[i] = upwind(...) - eta * (rout[i] - rin[i])
  void (*upwind_diffusive)(double* dst, const double* rin, const double* rout,
                           const double* u, double eta, std::size_t n);
  /// y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  /// dst[i] = a[i] * b[i]
  void (*multiply)(double* dst, const double* a, const double* b, std::size_t n);

  double (*sum)(const double* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum_i a[i] * b[i] * c[i]
  double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
  double (*min)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
};

/// Currently active kernel table. Selection order: NSFV_KERNELS environment
/// variable ("scalar" or "avx2") if set, otherwise AVX2 when available.
const Table& active();

/// Name of the active backend: "scalar" or "avx2".
std::string_view backend();

/// Force a backend; "auto" re-runs detection. Returns false (and leaves the
/// selection unchanged) when the requested backend is unavailable.
bool select_backend(std::string_view name);

/// Reference implementation, always available (for equivalence tests).
const Table& scalar_table();

/// AVX2 implementation, or nullptr when unsupported on this machine.
const Table* avx2_table();

}  // namespace nsfv::kernels
