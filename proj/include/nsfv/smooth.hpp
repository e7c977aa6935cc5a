#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace nsfv {

namespace quad {

/// Gauss-Legendre nodes/weights on [-1, 1], fixed order 5 per axis.
inline constexpr int kOrder = 5;
extern const std::array<double, kOrder> kNode;
extern const std::array<double, kOrder> kWeight;

/// Integrate f(x) over the box [lo, hi]^dim. Axes with hi[k] == lo[k] are
/// degenerate: f is evaluated at that coordinate and the axis contributes no
/// measure (this yields face and edge integrals).
double box(const std::function<double(const std::array<double, 3>&)>& f, const double* lo,
           const double* hi, int dim);

}  // namespace quad

/// A smooth scalar function of (t, x). The default box integral uses
/// Gauss-Legendre quadrature of order 5 per axis on the given box; subclasses
/// with analytically integrable structure override it.
class SmoothScalar {
 public:
  virtual ~SmoothScalar() = default;
  virtual double value(double t, const std::array<double, 3>& x) const = 0;
  virtual double box_integral(double t, const double* lo, const double* hi, int dim) const;
};

/// Scalar function given by a callable; integrals use the quadrature default.
class FuncScalar final : public SmoothScalar {
 public:
  explicit FuncScalar(std::function<double(double, const std::array<double, 3>&)> f)
      : f_(std::move(f)) {}
  double value(double t, const std::array<double, 3>& x) const override { return f_(t, x); }

 private:
  std::function<double(double, const std::array<double, 3>&)> f_;
};

/// One separable mode  amp * cos(tf*t + tp) * prod_k cos(f[k]*x_k + p[k]).
struct TrigMode {
  double amp = 0.0;
  double tfreq = 0.0, tphase = 0.0;
  std::array<double, 3> freq = {0.0, 0.0, 0.0};
  std::array<double, 3> phase = {0.0, 0.0, 0.0};
};

/// Finite sum of separable trigonometric modes. Closed under d/dt, d/dx_k,
/// sums and products, and integrates exactly over boxes (one antiderivative
/// per axis), so projections of this class carry no quadrature error.
class TrigScalar final : public SmoothScalar {
 public:
  TrigScalar() : dim_(2) {}
  explicit TrigScalar(int dim) : dim_(dim) {}
  TrigScalar(int dim, std::vector<TrigMode> modes) : dim_(dim), modes_(std::move(modes)) {}

  static TrigScalar constant(int dim, double c);

  int dim() const { return dim_; }
  const std::vector<TrigMode>& modes() const { return modes_; }
  void add_mode(const TrigMode& m) { modes_.push_back(m); }

  double value(double t, const std::array<double, 3>& x) const override;
  double box_integral(double t, const double* lo, const double* hi, int dim) const override;

  TrigScalar deriv_t() const;
  TrigScalar deriv_x(int k) const;
  TrigScalar laplacian() const;

  TrigScalar operator+(const TrigScalar& o) const;
  TrigScalar operator-(const TrigScalar& o) const;
  TrigScalar operator*(const TrigScalar& o) const;
  TrigScalar scaled(double s) const;

 private:
  int dim_;
  std::vector<TrigMode> modes_;
};

/// Vector-valued smooth function with per-component access.
class SmoothVector {
 public:
  virtual ~SmoothVector() = default;
  virtual int dim() const = 0;
  virtual const SmoothScalar& comp(int k) const = 0;
};

/// Vector of callables; integrals use the quadrature default.
class FuncVector final : public SmoothVector {
 public:
  explicit FuncVector(std::vector<FuncScalar> c) : c_(std::move(c)) {}
  int dim() const override { return static_cast<int>(c_.size()); }
  const SmoothScalar& comp(int k) const override { return c_[k]; }

 private:
  std::vector<FuncScalar> c_;
};

class TrigVector final : public SmoothVector {
 public:
  explicit TrigVector(std::vector<TrigScalar> c) : c_(std::move(c)) {}
  int dim() const override { return static_cast<int>(c_.size()); }
  const SmoothScalar& comp(int k) const override { return c_[k]; }
  const TrigScalar& trig(int k) const { return c_[k]; }

  TrigScalar divergence() const;
  /// Component j of the Laplacian vector.
  TrigScalar laplacian(int j) const { return c_[j].laplacian(); }
  /// Component j of grad(div u).
  TrigScalar grad_div(int j) const { return divergence().deriv_x(j); }

 private:
  std::vector<TrigScalar> c_;
};

/// Deterministic uniform draws in [-1, 1]: splitmix64 with a fixed bit
/// mapping, stable across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed == 0 ? 0x9e3779b97f4a7c15ULL : seed) {
    for (int i = 0; i < 4; ++i) next();
  }
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [-1, 1].
  double uniform() { return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0; }
  /// Uniform integer in [0, m).
  int below(int m) { return static_cast<int>(next() % static_cast<std::uint64_t>(m)); }

 private:
  std::uint64_t s_;
};

/// Random trigonometric polynomial: `nmodes` modes with integer wavenumbers
/// up to `maxmode` per axis (and in time when `time_dependent`), coefficients
/// and phases uniform in [-1, 1].
TrigScalar random_trig(Rng& rng, int dim, int nmodes, int maxmode, bool time_dependent);
TrigVector random_trig_vector(Rng& rng, int dim, int nmodes, int maxmode, bool time_dependent);

}  // namespace nsfv
