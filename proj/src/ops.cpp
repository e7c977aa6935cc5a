#include "nsfv/ops.hpp"

#include <cmath>

#include "nsfv/kernels.hpp"

namespace nsfv::ops {

namespace {
const kernels::Table& K() { return kernels::active(); }
}

CellField project_cell(const Mesh& m, const SmoothScalar& f, double t) {
  CellField out(m);
  double lo[3], hi[3];
  double inv = 1.0 / m.cell_volume();
  for (std::int64_t id = 0; id < m.cells(); ++id) {
    m.cell_bounds(id, lo, hi);
    out.v[id] = inv * f.box_integral(t, lo, hi, m.dim());
  }
  return out;
}

CellVectorField project_cell(const Mesh& m, const SmoothVector& f, double t) {
  CellVectorField out(m);
  for (int k = 0; k < m.dim(); ++k) out.c[k] = project_cell(m, f.comp(k), t).v;
  return out;
}

std::vector<double> project_face(const Mesh& m, const SmoothScalar& f, int dir, double t) {
  std::vector<double> out(m.faces_per_dir());
  double lo[3], hi[3];
  double inv = 1.0 / m.face_area();
  for (std::int64_t id = 0; id < m.faces_per_dir(); ++id) {
    m.cell_bounds(id, lo, hi);
    lo[dir] = hi[dir];  // degenerate axis: the face plane x_dir = (c_dir+1) h
    out[id] = inv * f.box_integral(t, lo, hi, m.dim());
  }
  return out;
}

StaggeredField project_face(const Mesh& m, const SmoothVector& f, double t) {
  StaggeredField out(m);
  for (int i = 0; i < m.dim(); ++i) out.c[i] = project_face(m, f.comp(i), i, t);
  return out;
}

std::vector<double> project_dual_cell(const Mesh& m, const SmoothScalar& f, int dir,
                                      double t) {
  std::vector<double> out(m.faces_per_dir());
  double lo[3], hi[3];
  double inv = 1.0 / m.cell_volume();
  for (std::int64_t id = 0; id < m.faces_per_dir(); ++id) {
    m.dual_bounds(dir, id, lo, hi);
    out[id] = inv * f.box_integral(t, lo, hi, m.dim());
  }
  return out;
}

std::vector<double> project_dual_face(const Mesh& m, const SmoothScalar& f, int i, int j,
                                      double t) {
  std::vector<double> out(m.faces_per_dir());
  double lo[3], hi[3];
  double inv = 1.0 / m.face_area();
  for (std::int64_t id = 0; id < m.faces_per_dir(); ++id) {
    // The dual face sits between the dual cells of (i, c) and (i, c + e_j):
    // the plane x_j = (c_j + 3/2) h spanning the dual box of (i, c) in the
    // other axes (for i == j this is the mid-plane of cell up_i(c)).
    m.dual_bounds(i, id, lo, hi);
    lo[j] = hi[j];
    out[id] = inv * f.box_integral(t, lo, hi, m.dim());
  }
  return out;
}

std::vector<double> project_bidual_cell(const Mesh& m, const SmoothScalar& f, int i, int j,
                                        double t) {
  std::vector<double> out(m.faces_per_dir());
  double lo[3], hi[3];
  double inv = 1.0 / m.cell_volume();
  for (std::int64_t id = 0; id < m.faces_per_dir(); ++id) {
    m.bidual_bounds(i, j, id, lo, hi);
    out[id] = inv * f.box_integral(t, lo, hi, m.dim());
  }
  return out;
}

StaggeredField face_average(const CellField& r) {
  const Mesh& m = *r.mesh;
  StaggeredField out(m);
  std::vector<double> nb(m.cells());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), r.v.data(), m.up(i).data(), m.cells());
    K().average(out.c[i].data(), r.v.data(), nb.data(), m.cells());
  }
  return out;
}

StaggeredField face_jump(const CellField& r) {
  const Mesh& m = *r.mesh;
  StaggeredField out(m);
  std::vector<double> nb(m.cells());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), r.v.data(), m.up(i).data(), m.cells());
    K().difference(out.c[i].data(), r.v.data(), nb.data(), m.cells());
  }
  return out;
}

std::vector<double> face_average_dir(const Mesh& m, const std::vector<double>& a, int j) {
  std::vector<double> nb(a.size()), out(a.size());
  K().gather(nb.data(), a.data(), m.up(j).data(), a.size());
  K().average(out.data(), a.data(), nb.data(), a.size());
  return out;
}

CellVectorField cell_average(const StaggeredField& u) {
  const Mesh& m = *u.mesh;
  CellVectorField out(m);
  std::vector<double> nb(m.cells());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), u.c[i].data(), m.down(i).data(), m.cells());
    K().average(out.c[i].data(), u.c[i].data(), nb.data(), m.cells());
  }
  return out;
}

StaggeredField grad_dual(const CellField& r) {
  const Mesh& m = *r.mesh;
  StaggeredField out(m);
  std::vector<double> nb(m.cells());
  double invh = 1.0 / m.h();
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), r.v.data(), m.up(i).data(), m.cells());
    K().scaled_difference(out.c[i].data(), r.v.data(), nb.data(), invh, m.cells());
  }
  return out;
}

TensorField grad_dual(const CellVectorField& v) {
  const Mesh& m = *v.mesh;
  TensorField out(m);
  std::vector<double> nb(m.cells());
  double invh = 1.0 / m.h();
  for (int k = 0; k < m.dim(); ++k)
    for (int i = 0; i < m.dim(); ++i) {
      K().gather(nb.data(), v.c[k].data(), m.up(i).data(), m.cells());
      K().scaled_difference(out.c[k][i].data(), v.c[k].data(), nb.data(), invh, m.cells());
    }
  return out;
}

std::vector<double> ddx_faces(const Mesh& m, const std::vector<double>& a, int i) {
  std::vector<double> nb(a.size()), out(a.size());
  K().gather(nb.data(), a.data(), m.down(i).data(), a.size());
  K().scaled_difference(out.data(), nb.data(), a.data(), 1.0 / m.h(), a.size());
  return out;
}

CellField div_staggered(const StaggeredField& u) {
  const Mesh& m = *u.mesh;
  CellField out(m);
  for (int i = 0; i < m.dim(); ++i) {
    auto d = ddx_faces(m, u.c[i], i);
    K().axpy(out.v.data(), 1.0, d.data(), m.cells());
  }
  return out;
}

CellField div_cells(const CellVectorField& v) {
  const Mesh& m = *v.mesh;
  CellField out(m);
  for (int i = 0; i < m.dim(); ++i) {
    auto a = face_average_dir(m, v.c[i], i);
    auto d = ddx_faces(m, a, i);
    K().axpy(out.v.data(), 1.0, d.data(), m.cells());
  }
  return out;
}

TensorField grad_bidual(const StaggeredField& u) {
  const Mesh& m = *u.mesh;
  TensorField out(m);
  std::vector<double> nb(m.cells());
  double invh = 1.0 / m.h();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      K().gather(nb.data(), u.c[i].data(), m.up(j).data(), m.cells());
      K().scaled_difference(out.c[i][j].data(), u.c[i].data(), nb.data(), invh, m.cells());
    }
  return out;
}

TensorField grad_cells(const CellVectorField& v) {
  const Mesh& m = *v.mesh;
  TensorField out(m);
  for (int k = 0; k < m.dim(); ++k)
    for (int i = 0; i < m.dim(); ++i) {
      auto a = face_average_dir(m, v.c[k], i);
      out.c[k][i] = ddx_faces(m, a, i);
    }
  return out;
}

CellVectorField grad_cells(const CellField& q) {
  const Mesh& m = *q.mesh;
  CellVectorField out(m);
  std::vector<double> up(m.cells()), dn(m.cells());
  double s = 0.5 / m.h();
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(up.data(), q.v.data(), m.up(i).data(), m.cells());
    K().gather(dn.data(), q.v.data(), m.down(i).data(), m.cells());
    K().scaled_difference(out.c[i].data(), dn.data(), up.data(), s, m.cells());
  }
  return out;
}

CellVectorField grad_projected(const Mesh& m, const SmoothScalar& f, double t) {
  CellVectorField out(m);
  for (int i = 0; i < m.dim(); ++i) {
    auto p = project_face(m, f, i, t);
    out.c[i] = ddx_faces(m, p, i);
  }
  return out;
}

std::vector<double> laplace_compact(const Mesh& m, const std::vector<double>& a) {
  std::vector<double> out(a.size(), 0.0), nb(a.size()), d(a.size());
  double ih2 = 1.0 / (m.h() * m.h());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), a.data(), m.up(i).data(), a.size());
    K().axpy(out.data(), ih2, nb.data(), a.size());
    K().gather(nb.data(), a.data(), m.down(i).data(), a.size());
    K().axpy(out.data(), ih2, nb.data(), a.size());
  }
  K().axpy(out.data(), -2.0 * m.dim() * ih2, a.data(), a.size());
  return out;
}

double integral(const CellField& r) { return r.mesh->cell_volume() * K().sum(r.v.data(), r.v.size()); }

double integral(const StaggeredField& u) {
  double s = 0.0;
  for (int i = 0; i < u.mesh->dim(); ++i) s += K().sum(u.c[i].data(), u.c[i].size());
  return u.mesh->cell_volume() * s;
}

double l2(const CellField& r) {
  return std::sqrt(r.mesh->cell_volume() * K().dot(r.v.data(), r.v.data(), r.v.size()));
}

double l2(const CellVectorField& v) {
  double s = 0.0;
  for (int k = 0; k < v.mesh->dim(); ++k) s += K().dot(v.c[k].data(), v.c[k].data(), v.c[k].size());
  return std::sqrt(v.mesh->cell_volume() * s);
}

double l2(const StaggeredField& u) {
  double s = 0.0;
  for (int i = 0; i < u.mesh->dim(); ++i) s += K().dot(u.c[i].data(), u.c[i].data(), u.c[i].size());
  return std::sqrt(u.mesh->cell_volume() * s);
}

double l2(const TensorField& g) {
  double s = 0.0;
  for (int i = 0; i < g.mesh->dim(); ++i)
    for (int j = 0; j < g.mesh->dim(); ++j)
      s += K().dot(g.c[i][j].data(), g.c[i][j].data(), g.c[i][j].size());
  return std::sqrt(g.mesh->cell_volume() * s);
}

double lp(const CellField& r, double p) {
  double s = 0.0;
  for (double x : r.v) s += std::pow(std::fabs(x), p);
  return std::pow(r.mesh->cell_volume() * s, 1.0 / p);
}

CellField random_cell_field(const Mesh& m, Rng& rng) {
  CellField f(m);
  for (auto& x : f.v) x = rng.uniform();
  return f;
}

CellVectorField random_cell_vector(const Mesh& m, Rng& rng) {
  CellVectorField f(m);
  for (int k = 0; k < m.dim(); ++k)
    for (auto& x : f.c[k]) x = rng.uniform();
  return f;
}

StaggeredField random_staggered(const Mesh& m, Rng& rng) {
  StaggeredField f(m);
  for (int i = 0; i < m.dim(); ++i)
    for (auto& x : f.c[i]) x = rng.uniform();
  return f;
}

}  // namespace nsfv::ops
