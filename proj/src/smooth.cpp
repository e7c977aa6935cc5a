#include "nsfv/smooth.hpp"

#include <cmath>
#include <numbers>

namespace nsfv {

namespace quad {

const std::array<double, kOrder> kNode = {-0.906179845938664, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.906179845938664};
const std::array<double, kOrder> kWeight = {0.23692688505618908, 0.47862867049936647,
                                            0.5688888888888889, 0.47862867049936647,
                                            0.23692688505618908};

double box(const std::function<double(const std::array<double, 3>&)>& f, const double* lo,
           const double* hi, int dim) {
  // Recursion over axes; degenerate axes (hi == lo) are point evaluations.
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  std::function<double(int)> rec = [&](int k) -> double {
    if (k == dim) return f(x);
    if (hi[k] == lo[k]) {
      x[k] = lo[k];
      return rec(k + 1);
    }
    double mid = 0.5 * (lo[k] + hi[k]);
    double half = 0.5 * (hi[k] - lo[k]);
    double acc = 0.0;
    for (int q = 0; q < kOrder; ++q) {
      x[k] = mid + half * kNode[q];
      acc += kWeight[q] * rec(k + 1);
    }
    return half * acc;
  };
  return rec(0);
}

}  // namespace quad

double SmoothScalar::box_integral(double t, const double* lo, const double* hi,
                                  int dim) const {
  return quad::box([&](const std::array<double, 3>& x) { return value(t, x); }, lo, hi, dim);
}

TrigScalar TrigScalar::constant(int dim, double c) {
  TrigScalar r(dim);
  if (c != 0.0) {
    TrigMode m;
    m.amp = c;
    r.add_mode(m);
  }
  return r;
}

double TrigScalar::value(double t, const std::array<double, 3>& x) const {
  double s = 0.0;
  for (const auto& m : modes_) {
    double v = m.amp * std::cos(m.tfreq * t + m.tphase);
    for (int k = 0; k < dim_; ++k) v *= std::cos(m.freq[k] * x[k] + m.phase[k]);
    s += v;
  }
  return s;
}

namespace {

// integral of cos(w s + p) over [a, b]; degenerate (b == a) means "evaluate".
double cos_integral(double w, double p, double a, double b) {
  if (b == a) return std::cos(w * a + p);
  if (w == 0.0) return (b - a) * std::cos(p);
  return (std::sin(w * b + p) - std::sin(w * a + p)) / w;
}

}  // namespace

double TrigScalar::box_integral(double t, const double* lo, const double* hi,
                                int dim) const {
  double s = 0.0;
  for (const auto& m : modes_) {
    double v = m.amp * std::cos(m.tfreq * t + m.tphase);
    for (int k = 0; k < dim; ++k) v *= cos_integral(m.freq[k], m.phase[k], lo[k], hi[k]);
    s += v;
  }
  return s;
}

TrigScalar TrigScalar::deriv_t() const {
  TrigScalar r(dim_);
  for (const auto& m : modes_) {
    if (m.tfreq == 0.0) continue;
    TrigMode d = m;
    d.amp *= m.tfreq;
    d.tphase += std::numbers::pi / 2;
    r.add_mode(d);
  }
  return r;
}

TrigScalar TrigScalar::deriv_x(int k) const {
  TrigScalar r(dim_);
  for (const auto& m : modes_) {
    if (m.freq[k] == 0.0) continue;
    TrigMode d = m;
    d.amp *= m.freq[k];
    d.phase[k] += std::numbers::pi / 2;
    r.add_mode(d);
  }
  return r;
}

TrigScalar TrigScalar::laplacian() const {
  TrigScalar r(dim_);
  for (int k = 0; k < dim_; ++k) {
    TrigScalar d = deriv_x(k).deriv_x(k);
    for (const auto& m : d.modes()) r.add_mode(m);
  }
  return r;
}

TrigScalar TrigScalar::operator+(const TrigScalar& o) const {
  TrigScalar r(dim_, modes_);
  for (const auto& m : o.modes_) r.add_mode(m);
  return r;
}

TrigScalar TrigScalar::operator-(const TrigScalar& o) const { return *this + o.scaled(-1.0); }

TrigScalar TrigScalar::scaled(double s) const {
  TrigScalar r(dim_, modes_);
  for (auto& m : r.modes_) m.amp *= s;
  return r;
}

TrigScalar TrigScalar::operator*(const TrigScalar& o) const {
  // cos(a)cos(b) = (cos(a-b) + cos(a+b)) / 2, applied to the time factor and
  // each axis factor; each mode pair expands into 2^(dim+1) modes.
  TrigScalar r(dim_);
  for (const auto& ma : modes_)
    for (const auto& mb : o.modes_) {
      int nfac = dim_ + 1;
      int combos = 1 << nfac;
      for (int c = 0; c < combos; ++c) {
        TrigMode m;
        m.amp = ma.amp * mb.amp;
        auto mix = [&](double fa, double pa, double fb, double pb, int bit, double& f,
                       double& p) {
          m.amp *= 0.5;
          if ((c >> bit) & 1) {
            f = fa + fb;
            p = pa + pb;
          } else {
            f = fa - fb;
            p = pa - pb;
          }
        };
        mix(ma.tfreq, ma.tphase, mb.tfreq, mb.tphase, 0, m.tfreq, m.tphase);
        for (int k = 0; k < dim_; ++k)
          mix(ma.freq[k], ma.phase[k], mb.freq[k], mb.phase[k], k + 1, m.freq[k],
              m.phase[k]);
        r.add_mode(m);
      }
    }
  return r;
}

TrigScalar TrigVector::divergence() const {
  TrigScalar r(dim());
  for (int k = 0; k < dim(); ++k) {
    TrigScalar d = c_[k].deriv_x(k);
    for (const auto& m : d.modes()) r.add_mode(m);
  }
  return r;
}

TrigScalar random_trig(Rng& rng, int dim, int nmodes, int maxmode, bool time_dependent) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  TrigScalar r(dim);
  for (int i = 0; i < nmodes; ++i) {
    TrigMode m;
    m.amp = rng.uniform();
    if (time_dependent) {
      m.tfreq = two_pi * rng.below(maxmode + 1);
      m.tphase = rng.uniform() * std::numbers::pi;
    }
    for (int k = 0; k < dim; ++k) {
      m.freq[k] = two_pi * rng.below(maxmode + 1);
      m.phase[k] = rng.uniform() * std::numbers::pi;
    }
    r.add_mode(m);
  }
  return r;
}

TrigVector random_trig_vector(Rng& rng, int dim, int nmodes, int maxmode,
                              bool time_dependent) {
  std::vector<TrigScalar> c;
  for (int k = 0; k < dim; ++k) c.push_back(random_trig(rng, dim, nmodes, maxmode, time_dependent));
  return TrigVector(std::move(c));
}

}  // namespace nsfv
