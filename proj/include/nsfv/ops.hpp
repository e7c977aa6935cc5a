#pragma once

#include "nsfv/fields.hpp"
#include "nsfv/mesh.hpp"
#include "nsfv/smooth.hpp"

namespace nsfv::ops {

// ---- projections (integral averages; exact for the trig class, Gauss-
// Legendre order 5 per axis otherwise) ----

/// Cell averages of f(t, .).
CellField project_cell(const Mesh& m, const SmoothScalar& f, double t);
CellVectorField project_cell(const Mesh& m, const SmoothVector& f, double t);

/// Face averages of f over the direction-dir faces.
std::vector<double> project_face(const Mesh& m, const SmoothScalar& f, int dir, double t);
/// Face averages, component i over the direction-i faces (projection onto W_h).
StaggeredField project_face(const Mesh& m, const SmoothVector& f, double t);

/// Averages over the dual cells of direction dir (boxes shifted h/2 in dir).
std::vector<double> project_dual_cell(const Mesh& m, const SmoothScalar& f, int dir, double t);

/// Averages over the dual faces between the dual cells of sigma = (i, c) and
/// sigma + h e_j, indexed by c. For i == j these are the cell mid-planes
/// orthogonal to e_i: entry c holds the mid-plane average for cell up(i, c).
std::vector<double> project_dual_face(const Mesh& m, const SmoothScalar& f, int i, int j,
                                      double t);

/// Averages over the second-level dual boxes of dual faces (i, j, c).
std::vector<double> project_bidual_cell(const Mesh& m, const SmoothScalar& f, int i, int j,
                                        double t);

// ---- lattice-local operators ----

/// Face averages <r>: component i at face (i, c) is (r[c] + r[up_i c]) / 2.
StaggeredField face_average(const CellField& r);
/// Oriented jumps [[r]]: component i at face (i, c) is r[up_i c] - r[c].
StaggeredField face_jump(const CellField& r);
/// Per-direction face average of a per-direction face scalar: entry (j, c) of
/// component j becomes (a[c] + a[up_j c]) / 2. Used for <bar u_i>^(j).
std::vector<double> face_average_dir(const Mesh& m, const std::vector<double>& a, int j);

/// Cell average of a staggered field: bar u_i at K = (u_i[K] + u_i[down_i K]) / 2.
CellVectorField cell_average(const StaggeredField& u);

/// Two-point gradient on dual cells: component i at face (i, c) is
/// (r[up_i c] - r[c]) / h.
StaggeredField grad_dual(const CellField& r);
/// Componentwise dual gradient of a cell vector: entry (k, i) on the
/// direction-i face lattice is (v_k[up_i c] - v_k[c]) / h.
TensorField grad_dual(const CellVectorField& v);

/// Per-cell difference of the two direction-i faces: (a[c] - a[down_i c]) / h
/// for a per-direction face scalar a.
std::vector<double> ddx_faces(const Mesh& m, const std::vector<double>& a, int i);

/// div_W: sum over i of the face differences of u_i.
CellField div_staggered(const StaggeredField& u);
/// div_Q: central divergence of a cell vector (face-average then difference).
CellField div_cells(const CellVectorField& v);

/// Second-level dual gradient of a staggered field: entry (i, j) at lattice c
/// is (u_i[(i, up_j c)] - u_i[(i, c)]) / h. The diagonal (i, i) reproduces the
/// per-cell difference of u_i for cell up_i(c).
TensorField grad_bidual(const StaggeredField& u);

/// Per-cell tensor gradient: entry (k, i) at K is the central difference of
/// the direction-i face averages of v_k, (<v_k>[K] - <v_k>[down_i K]) / h.
TensorField grad_cells(const CellVectorField& v);

/// Central gradient of a cell scalar: component i is (q[up_i] - q[down_i]) / (2h).
CellVectorField grad_cells(const CellField& q);

/// Gradient through face projection: component i at K is
/// (P_i[K] - P_i[down_i K]) / h with P_i the direction-i face averages of f.
CellVectorField grad_projected(const Mesh& m, const SmoothScalar& f, double t);

/// Compact (2d+1)-point Laplacian on the periodic lattice; works for cell
/// and face arrays alike.
std::vector<double> laplace_compact(const Mesh& m, const std::vector<double>& a);

// ---- integrals and norms ----

double integral(const CellField& r);
/// Integral treating each component over its dual cells (volume h^d per face).
double integral(const StaggeredField& u);
double l2(const CellField& r);
double l2(const CellVectorField& v);
double l2(const StaggeredField& u);
double l2(const TensorField& g);
/// L^p norm of a piecewise-constant cell field, p >= 1.
double lp(const CellField& r, double p);

// ---- random fields (uniform in [-1, 1]) ----

CellField random_cell_field(const Mesh& m, Rng& rng);
CellVectorField random_cell_vector(const Mesh& m, Rng& rng);
StaggeredField random_staggered(const Mesh& m, Rng& rng);

}  // namespace nsfv::ops
