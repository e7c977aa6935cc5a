#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsfv/mesh.hpp"

namespace nsfv {

struct IdentityResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Scaled defect; an identity (or inequality) holds when residual <= 1e-12.
  double residual = 0.0;
};

/// Relative gap |l - r| / max(|l|, |r|, 0.01); the 0.01 floor makes an
/// absolute defect of 1e-14 pass the 1e-12 relative threshold when both
/// sides are tiny.
double relative_residual(double lhs, double rhs);

/// Evaluates the discrete summation-by-parts and projection-compatibility
/// identity suite on random cell/staggered fields and random trigonometric
/// smooth functions drawn from `seed`. Both sides of every identity are
/// computed through independent code paths; smooth-function integrals are
/// exact for the trigonometric class.
std::vector<IdentityResult> identity_suite(const Mesh& m, std::uint64_t seed);

/// One measured error decay across an h-halving mesh ladder.
struct DecayResult {
  std::string name;
  std::vector<double> h;
  std::vector<double> error;
  /// Least-squares slope of log(error) against log(h).
  double order = 0.0;
};

/// True-L2 approximation errors of the projection and composition operators
/// against fixed smooth trigonometric data, one ladder level per entry of
/// `ns`. Measured targets:
///   face_gradient       face projection of a first derivative,
///   midplane_divergence mid-plane projection of a divergence,
///   midplane_face_gap   mid-plane versus face projection of the divergence,
///   central_graddiv     central gradient of the central divergence of
///                       projected cells versus grad div,
///   compact_laplacian   compact Laplacian of projected cells versus the
///                       Laplacian,
///   cell_center_gap     cell averages versus cell-center samples (second
///                       order in practice; recorded, only first asserted).
/// Piecewise-constant-versus-smooth distances expand the square and use the
/// exact trigonometric box integrals, so quadrature adds no error.
std::vector<DecayResult> projection_error_suite(int dim, const std::vector<int>& ns);

}  // namespace nsfv
