#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace nsfv {

/// Uniform Cartesian grid on the periodic unit torus [0,1)^d, d in {2,3},
/// with n cells per axis and spacing h = 1/n.
///
/// Cells are addressed by lattice tuples (c_0, ..., c_{d-1}) flattened
/// row-major with the first coordinate slowest:
///   id = ((c_0 * n) + c_1) * n + c_2   (d = 3; analogous for d = 2).
///
/// Faces carry a fixed global orientation. The face with direction i and
/// index f separates cell K = f from cell L = up(i, f), the periodic
/// neighbor of K in +e_i; the unit normal points from K to L, so the cell
/// centers satisfy x_L - x_K = h e_i. There are n^d faces per direction.
///
/// Staggered (dual) cells, one per face, are the boxes shifted by h/2 along
/// the face direction; their volume equals the cell volume h^d. Dual faces
/// between the dual cells of sigma and sigma + h e_j are indexed by (i, j, f)
/// with f the index of sigma, and the box straddling such a dual face (the
/// second-level dual cell) is shifted by h/2 in both i and j. For i == j that
/// box coincides with the primary cell up(i, f).
class Mesh {
 public:
  Mesh(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  std::int64_t cells() const { return cells_; }
  /// Faces per direction (== cells()); total face count is dim() * cells().
  std::int64_t faces_per_dir() const { return cells_; }
  double cell_volume() const { return cell_volume_; }
  double face_area() const { return face_area_; }

  /// Periodic neighbor index maps; contiguous, usable as gather indices.
  const std::vector<std::int32_t>& up(int dir) const { return up_[dir]; }
  const std::vector<std::int32_t>& down(int dir) const { return down_[dir]; }

  std::int32_t up(int dir, std::int64_t id) const { return up_[dir][id]; }
  std::int32_t down(int dir, std::int64_t id) const { return down_[dir][id]; }

  std::array<int, 3> decode(std::int64_t id) const;
  std::int64_t encode(const std::array<int, 3>& c) const;

  /// Adjacent cells (K, L) of face (dir, f); the normal points K -> L.
  std::array<std::int64_t, 2> face_neighbors(int dir, std::int64_t f) const {
    return {f, up_[dir][f]};
  }

  std::array<double, 3> cell_center(std::int64_t id) const;
  /// Center of face (dir, f): cell center of f shifted by +h/2 along dir.
  std::array<double, 3> face_center(int dir, std::int64_t f) const;

  /// Bounds of cell id: [lo, hi] per axis (unwrapped, lo = c*h).
  void cell_bounds(std::int64_t id, double* lo, double* hi) const;
  /// Bounds of the dual cell of face (dir, f): cell box shifted by h/2 in dir.
  void dual_bounds(int dir, std::int64_t f, double* lo, double* hi) const;
  /// Bounds of the second-level dual box of dual face (i, j, f): cell box of
  /// f shifted by h/2 in i and in j (for i == j: the primary cell up(i, f)).
  void bidual_bounds(int i, int j, std::int64_t f, double* lo, double* hi) const;

 private:
  int dim_;
  int n_;
  double h_;
  std::int64_t cells_;
  double cell_volume_;
  double face_area_;
  std::array<std::vector<std::int32_t>, 3> up_;
  std::array<std::vector<std::int32_t>, 3> down_;
};

}  // namespace nsfv
