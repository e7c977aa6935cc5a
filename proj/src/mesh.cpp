#include "nsfv/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsfv {

Mesh::Mesh(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("Mesh: dim must be 2 or 3, got " + std::to_string(dim));
  if (n < 2)
    throw std::invalid_argument("Mesh: n must be >= 2, got " + std::to_string(n));
  if (static_cast<double>(n) * n * (dim == 3 ? n : 1) > 2e9)
    throw std::invalid_argument("Mesh: cell count exceeds index range");

  h_ = 1.0 / n;
  cells_ = 1;
  for (int k = 0; k < dim_; ++k) cells_ *= n;
  cell_volume_ = std::pow(h_, dim_);
  face_area_ = std::pow(h_, dim_ - 1);

  for (int dir = 0; dir < dim_; ++dir) {
    up_[dir].resize(cells_);
    down_[dir].resize(cells_);
  }
  for (std::int64_t id = 0; id < cells_; ++id) {
    auto c = decode(id);
    for (int dir = 0; dir < dim_; ++dir) {
      auto cu = c;
      cu[dir] = (c[dir] + 1) % n_;
      auto cd = c;
      cd[dir] = (c[dir] + n_ - 1) % n_;
      up_[dir][id] = static_cast<std::int32_t>(encode(cu));
      down_[dir][id] = static_cast<std::int32_t>(encode(cd));
    }
  }
}

std::array<int, 3> Mesh::decode(std::int64_t id) const {
  std::array<int, 3> c = {0, 0, 0};
  for (int k = dim_ - 1; k >= 0; --k) {
    c[k] = static_cast<int>(id % n_);
    id /= n_;
  }
  return c;
}

std::int64_t Mesh::encode(const std::array<int, 3>& c) const {
  std::int64_t id = 0;
  for (int k = 0; k < dim_; ++k) id = id * n_ + c[k];
  return id;
}

std::array<double, 3> Mesh::cell_center(std::int64_t id) const {
  auto c = decode(id);
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) x[k] = (c[k] + 0.5) * h_;
  return x;
}

std::array<double, 3> Mesh::face_center(int dir, std::int64_t f) const {
  auto x = cell_center(f);
  x[dir] += 0.5 * h_;
  return x;
}

void Mesh::cell_bounds(std::int64_t id, double* lo, double* hi) const {
  auto c = decode(id);
  for (int k = 0; k < dim_; ++k) {
    lo[k] = c[k] * h_;
    hi[k] = (c[k] + 1) * h_;
  }
}

void Mesh::dual_bounds(int dir, std::int64_t f, double* lo, double* hi) const {
  cell_bounds(f, lo, hi);
  lo[dir] += 0.5 * h_;
  hi[dir] += 0.5 * h_;
}

void Mesh::bidual_bounds(int i, int j, std::int64_t f, double* lo, double* hi) const {
  if (i == j) {
    cell_bounds(up_[i][f], lo, hi);
    return;
  }
  cell_bounds(f, lo, hi);
  lo[i] += 0.5 * h_;
  hi[i] += 0.5 * h_;
  lo[j] += 0.5 * h_;
  hi[j] += 0.5 * h_;
}

}  // namespace nsfv
