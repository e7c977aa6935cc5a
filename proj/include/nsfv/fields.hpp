#pragma once

#include <array>
#include <cassert>
#include <vector>

#include "nsfv/mesh.hpp"

namespace nsfv {

/// Piecewise-constant scalar on primary cells.
struct CellField {
  const Mesh* mesh = nullptr;
  std::vector<double> v;

  CellField() = default;
  explicit CellField(const Mesh& m) : mesh(&m), v(m.cells(), 0.0) {}
  double& operator[](std::int64_t i) { return v[i]; }
  double operator[](std::int64_t i) const { return v[i]; }
};

/// Vector field with one value per cell and component (element of Q_h^d).
struct CellVectorField {
  const Mesh* mesh = nullptr;
  std::array<std::vector<double>, 3> c;

  CellVectorField() = default;
  explicit CellVectorField(const Mesh& m) : mesh(&m) {
    for (int k = 0; k < m.dim(); ++k) c[k].assign(m.cells(), 0.0);
  }
};

/// Staggered field: component i lives on the direction-i faces (element of
/// W_h). Per-direction scalars such as face averages of a cell field use the
/// same container.
struct StaggeredField {
  const Mesh* mesh = nullptr;
  std::array<std::vector<double>, 3> c;

  StaggeredField() = default;
  explicit StaggeredField(const Mesh& m) : mesh(&m) {
    for (int k = 0; k < m.dim(); ++k) c[k].assign(m.faces_per_dir(), 0.0);
  }
};

/// d x d tensor field; the lattice each component lives on depends on the
/// producing operator (documented there).
struct TensorField {
  const Mesh* mesh = nullptr;
  std::array<std::array<std::vector<double>, 3>, 3> c;

  TensorField() = default;
  explicit TensorField(const Mesh& m) : mesh(&m) {
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) c[i][j].assign(m.cells(), 0.0);
  }
};

}  // namespace nsfv
