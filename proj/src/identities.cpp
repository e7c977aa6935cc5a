#include "nsfv/identities.hpp"

#include <cmath>

#include "nsfv/fields.hpp"
#include "nsfv/kernels.hpp"
#include "nsfv/ops.hpp"
#include "nsfv/smooth.hpp"

namespace nsfv {

double relative_residual(double lhs, double rhs) {
  double scale = std::max({std::fabs(lhs), std::fabs(rhs), 0.01});
  return std::fabs(lhs - rhs) / scale;
}

namespace {

const kernels::Table& K() { return kernels::active(); }

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  return K().dot(a.data(), b.data(), a.size());
}

/// Pi_eps values keyed by cell: the mid-plane average orthogonal to e_i for
/// cell k is stored at lattice down_i(k) by project_dual_face(., i, i).
std::vector<double> midplane_by_cell(const Mesh& m, const SmoothScalar& f, int i) {
  auto p = ops::project_dual_face(m, f, i, i, 0.0);
  std::vector<double> out(p.size());
  K().gather(out.data(), p.data(), m.down(i).data(), p.size());
  return out;
}

double cosint(double w, double p, double a, double b) {
  if (w == 0.0) return (b - a) * std::cos(p);
  return (std::sin(w * b + p) - std::sin(w * a + p)) / w;
}

/// Box integrals of g over every lattice box (cell boxes shifted by `shift`
/// per axis), evaluated separably: n one-axis integrals per mode and axis,
/// then a product sweep. Exact for the trig class, like g.box_integral.
std::vector<double> lattice_integrals(const Mesh& m, const TrigScalar& g,
                                      const std::array<double, 3>& shift) {
  const int d = m.dim(), n = m.n();
  const double h = m.h();
  std::vector<double> out(m.cells(), 0.0);
  std::array<std::vector<double>, 3> ax;
  for (int k = 0; k < 3; ++k) ax[k].assign(n, 1.0);
  for (const auto& md : g.modes()) {
    double coef = md.amp * std::cos(md.tphase);
    for (int k = 0; k < d; ++k)
      for (int c = 0; c < n; ++c)
        ax[k][c] = cosint(md.freq[k], md.phase[k], c * h + shift[k], (c + 1) * h + shift[k]);
    std::int64_t id = 0;
    if (d == 2) {
      for (int c0 = 0; c0 < n; ++c0) {
        double f0 = coef * ax[0][c0];
        for (int c1 = 0; c1 < n; ++c1) out[id++] += f0 * ax[1][c1];
      }
    } else {
      for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = 0; c1 < n; ++c1) {
          double f01 = coef * ax[0][c0] * ax[1][c1];
          for (int c2 = 0; c2 < n; ++c2) out[id++] += f01 * ax[2][c2];
        }
    }
  }
  return out;
}

/// || g - c ||_L2 over the lattice boxes shifted by h/2 along `shift_dir`
/// (-1: the primary cells), c piecewise constant per box; exact for trig g
/// by expanding the square.
double box_defect(const Mesh& m, const TrigScalar& g, const std::vector<double>& c,
                  int shift_dir) {
  std::array<double, 3> shift = {0.0, 0.0, 0.0};
  if (shift_dir >= 0) shift[shift_dir] = 0.5 * m.h();
  auto i1 = lattice_integrals(m, g, shift);
  auto i2 = lattice_integrals(m, g * g, shift);
  double vol = m.cell_volume();
  double s = 0.0;
  for (std::int64_t id = 0; id < m.cells(); ++id)
    s += i2[id] - 2.0 * c[id] * i1[id] + c[id] * c[id] * vol;
  return std::sqrt(std::max(s, 0.0));
}

double cell_defect(const Mesh& m, const TrigScalar& g, const std::vector<double>& c) {
  return box_defect(m, g, c, -1);
}

double dual_defect(const Mesh& m, const TrigScalar& g, const std::vector<double>& c, int dir) {
  return box_defect(m, g, c, dir);
}

double lsq_slope(const std::vector<double>& h, const std::vector<double>& e) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    double x = std::log(h[i]);
    double y = std::log(std::max(e[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Both sides of: int u . grad(psi) = - sum_i int Pi_eps^(i) psi d_i u_i,
/// for staggered u; used with psi itself and with psi = div U.
std::pair<double, double> staggered_grad_pair(const Mesh& m, const StaggeredField& u,
                                              const TrigScalar& psi) {
  double vol = m.cell_volume();
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    auto dpsi = ops::project_dual_cell(m, psi.deriv_x(i), i, 0.0);
    lhs += vol * dotv(u.c[i], dpsi);
    auto pm = midplane_by_cell(m, psi, i);
    auto du = ops::ddx_faces(m, u.c[i], i);
    rhs -= vol * dotv(pm, du);
  }
  return {lhs, rhs};
}

}  // namespace

std::vector<IdentityResult> identity_suite(const Mesh& m, std::uint64_t seed) {
  Rng rng(seed);
  const int d = m.dim();
  const double vol = m.cell_volume();
  std::vector<IdentityResult> out;
  auto push = [&](const std::string& name, double l, double r) {
    out.push_back({name, l, r, relative_residual(l, r)});
  };

  CellField r = ops::random_cell_field(m, rng);
  CellVectorField v = ops::random_cell_vector(m, rng);
  StaggeredField u = ops::random_staggered(m, rng);
  TrigScalar psi = random_trig(rng, d, 3, 2, false);
  TrigVector U = random_trig_vector(rng, d, 2, 2, false);
  TrigScalar divU = U.divergence();

  // int r div_W u = - int u . grad_D r
  {
    CellField dw = ops::div_staggered(u);
    StaggeredField gr = ops::grad_dual(r);
    double lhs = vol * dotv(r.v, dw.v);
    double rhs = 0.0;
    for (int i = 0; i < d; ++i) rhs -= vol * dotv(u.c[i], gr.c[i]);
    push("sbp_staggered", lhs, rhs);
  }

  // per-direction form: int r d_i u_i = - int u_i dD_i r
  {
    StaggeredField gr = ops::grad_dual(r);
    double worst_l = 0.0, worst_r = 0.0, worst = -1.0;
    for (int i = 0; i < d; ++i) {
      auto du = ops::ddx_faces(m, u.c[i], i);
      double lhs = vol * dotv(r.v, du);
      double rhs = -vol * dotv(u.c[i], gr.c[i]);
      if (relative_residual(lhs, rhs) > worst) {
        worst = relative_residual(lhs, rhs);
        worst_l = lhs;
        worst_r = rhs;
      }
    }
    push("sbp_directional", worst_l, worst_r);
  }

  // int r_h div U = int r_h div_W (Pi_E U)
  {
    CellField pd = ops::project_cell(m, divU, 0.0);
    double lhs = vol * dotv(r.v, pd.v);
    StaggeredField pu = ops::project_face(m, U, 0.0);
    CellField dw = ops::div_staggered(pu);
    double rhs = vol * dotv(r.v, dw.v);
    push("div_projection", lhs, rhs);
  }

  // int v_h . grad psi = int v_h . grad_PiE psi
  {
    double lhs = 0.0, rhs = 0.0;
    CellVectorField gp = ops::grad_projected(m, psi, 0.0);
    for (int k = 0; k < d; ++k) {
      CellField pg = ops::project_cell(m, psi.deriv_x(k), 0.0);
      lhs += vol * dotv(v.c[k], pg.v);
      rhs += vol * dotv(v.c[k], gp.c[k]);
    }
    push("grad_projection", lhs, rhs);
  }

  // int u_h . grad psi = - int Pi_eps psi div_W u_h
  {
    auto [lhs, rhs] = staggered_grad_pair(m, u, psi);
    push("sbp_staggered_smooth", lhs, rhs);
  }

  // int v_h . grad psi = - sum_i int Pi_E^(i) psi dD_i v_i
  {
    double lhs = 0.0, rhs = 0.0;
    TensorField gv = ops::grad_dual(v);
    for (int i = 0; i < d; ++i) {
      CellField pg = ops::project_cell(m, psi.deriv_x(i), 0.0);
      lhs += vol * dotv(v.c[i], pg.v);
      auto pf = ops::project_face(m, psi, i, 0.0);
      rhs -= vol * dotv(pf, gv.c[i][i]);
    }
    push("sbp_cells_smooth", lhs, rhs);
  }

  // int bar u . Delta U = - sum_ij int dB_ji u_j <Pi_E^(i) d_i U_j>^(j)
  {
    CellVectorField ub = ops::cell_average(u);
    TensorField gB = ops::grad_bidual(u);
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < d; ++j) {
      CellField lap = ops::project_cell(m, U.laplacian(j), 0.0);
      lhs += vol * dotv(ub.c[j], lap.v);
      for (int i = 0; i < d; ++i) {
        auto p = ops::project_face(m, U.trig(j).deriv_x(i), i, 0.0);
        auto pa = ops::face_average_dir(m, p, j);
        rhs -= vol * dotv(gB.c[j][i], pa);
      }
    }
    push("laplace_staggered", lhs, rhs);
  }

  // int u_h . grad div U = - int Pi_eps(div U) div_W u_h
  {
    auto [lhs, rhs] = staggered_grad_pair(m, u, divU);
    push("graddiv_staggered", lhs, rhs);
  }

  // int v_h . Delta U = - int grad_D v_h : Pi_E grad U
  {
    TensorField gv = ops::grad_dual(v);
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < d; ++j) {
      CellField lap = ops::project_cell(m, U.laplacian(j), 0.0);
      lhs += vol * dotv(v.c[j], lap.v);
      for (int i = 0; i < d; ++i) {
        auto p = ops::project_face(m, U.trig(j).deriv_x(i), i, 0.0);
        rhs -= vol * dotv(gv.c[j][i], p);
      }
    }
    push("laplace_cells", lhs, rhs);
  }

  // int <v> . grad div U = - int Pi_eps(div U) div_Q v
  {
    StaggeredField vavg(m);
    for (int i = 0; i < d; ++i) vavg.c[i] = ops::face_average_dir(m, v.c[i], i);
    auto [lhs, rhs] = staggered_grad_pair(m, vavg, divU);
    push("graddiv_cells", lhs, rhs);
  }

  // div_W <v> == div_Q v (same arithmetic; must agree bitwise)
  {
    StaggeredField vavg(m);
    for (int i = 0; i < d; ++i) vavg.c[i] = ops::face_average_dir(m, v.c[i], i);
    CellField a = ops::div_staggered(vavg);
    CellField b = ops::div_cells(v);
    double md = 0.0, scale = 0.0;
    for (std::int64_t k = 0; k < m.cells(); ++k) {
      md = std::max(md, std::fabs(a.v[k] - b.v[k]));
      scale = std::max({scale, std::fabs(a.v[k]), std::fabs(b.v[k])});
    }
    out.push_back({"div_average", scale, scale, md / std::max(scale, 0.01)});
  }

  // diagonal of grad_B equals the per-cell face difference (index-shifted)
  {
    TensorField gB = ops::grad_bidual(u);
    double md = 0.0, scale = 0.0;
    for (int i = 0; i < d; ++i) {
      auto dm = ops::ddx_faces(m, u.c[i], i);
      for (std::int64_t c = 0; c < m.cells(); ++c) {
        double a = gB.c[i][i][c];
        double b = dm[m.up(i, c)];
        md = std::max(md, std::fabs(a - b));
        scale = std::max(scale, std::fabs(a));
      }
    }
    out.push_back({"bidual_diagonal", scale, scale, md / std::max(scale, 0.01)});
  }

  // bar(dD_i r) == d_i <r>^(i) (both are the central difference)
  {
    StaggeredField gr = ops::grad_dual(r);
    CellVectorField gbar = ops::cell_average(gr);
    double md = 0.0, scale = 0.0;
    for (int i = 0; i < d; ++i) {
      auto a = ops::face_average_dir(m, r.v, i);
      auto dd = ops::ddx_faces(m, a, i);
      for (std::int64_t c = 0; c < m.cells(); ++c) {
        md = std::max(md, std::fabs(gbar.c[i][c] - dd[c]));
        scale = std::max(scale, std::fabs(dd[c]));
      }
    }
    out.push_back({"avg_dual_gradient", scale, scale, md / std::max(scale, 0.01)});
  }

  // oriented face sums telescope to zero
  {
    double s = 0.0, mass = 0.0;
    double area = m.face_area();
    for (std::int64_t c = 0; c < m.cells(); ++c)
      for (int i = 0; i < d; ++i) {
        s += area * (u.c[i][c] - u.c[i][m.down(i, c)]);
        mass += area * (std::fabs(u.c[i][c]) + std::fabs(u.c[i][m.down(i, c)]));
      }
    out.push_back({"telescope", s, 0.0, std::fabs(s) / std::max(mass, 0.01)});
  }

  // || Pi_Q u - u || <= (h/2) || grad_B u ||
  {
    CellVectorField ub = ops::cell_average(u);
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
        double dK = ub.c[i][f] - u.c[i][f];
        double dL = ub.c[i][m.up(i, f)] - u.c[i][f];
        s += 0.5 * vol * (dK * dK + dL * dL);
      }
    double lhs = std::sqrt(s);
    double rhs = 0.5 * m.h() * ops::l2(ops::grad_bidual(u));
    out.push_back({"avg_bound_staggered", lhs, rhs,
                   std::max(0.0, lhs - rhs) / std::max(rhs, 0.01)});
  }

  // || <v> - v || <= (h/2) || grad_D v ||
  {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      auto a = ops::face_average_dir(m, v.c[i], i);
      for (std::int64_t f = 0; f < m.faces_per_dir(); ++f) {
        double dK = a[f] - v.c[i][f];
        double dL = a[f] - v.c[i][m.up(i, f)];
        s += 0.5 * vol * (dK * dK + dL * dL);
      }
    }
    double lhs = std::sqrt(s);
    double rhs = 0.5 * m.h() * ops::l2(ops::grad_dual(v));
    out.push_back({"avg_bound_cells", lhs, rhs,
                   std::max(0.0, lhs - rhs) / std::max(rhs, 0.01)});
  }

  return out;
}

std::vector<DecayResult> projection_error_suite(int dim, const std::vector<int>& ns) {
  // Fixed single-mode components with distinct amplitudes and phases per
  // axis; frequency 2 pi keeps every box integral exact and well scaled.
  constexpr double tau = 6.283185307179586;
  std::vector<TrigScalar> uc, pc;
  for (int j = 0; j < dim; ++j) {
    TrigMode mu, mp;
    mu.amp = 0.9 - 0.2 * j;
    mp.amp = 0.6 + 0.15 * j;
    for (int k = 0; k < dim; ++k) {
      mu.freq[k] = tau;
      mu.phase[k] = 0.4 * j + 0.3 * k + 0.2;
      mp.freq[k] = tau;
      mp.phase[k] = 0.7 * j - 0.25 * k + 0.5;
    }
    TrigScalar fu(dim), fp(dim);
    fu.add_mode(mu);
    fp.add_mode(mp);
    uc.push_back(fu);
    pc.push_back(fp);
  }
  TrigVector U(uc), Phi(pc);
  TrigScalar divU = U.divergence();

  std::vector<DecayResult> out(6);
  out[0].name = "face_gradient";
  out[1].name = "midplane_divergence";
  out[2].name = "midplane_face_gap";
  out[3].name = "central_graddiv";
  out[4].name = "compact_laplacian";
  out[5].name = "cell_center_gap";

  for (int n : ns) {
    Mesh m(dim, n);
    double vol = m.cell_volume();

    double e_face = 0.0, e_mid = 0.0, e_gap = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double e = dual_defect(m, U.trig(j).deriv_x(i), ops::project_face(m, U.trig(j).deriv_x(i), i, 0.0), i);
        e_face += e * e;
      }
      auto mid = midplane_by_cell(m, divU, i);
      double e = cell_defect(m, divU, mid);
      e_mid += e * e;
      auto face = ops::project_face(m, divU, i, 0.0);
      double s = 0.0;
      for (std::int64_t c = 0; c < m.cells(); ++c) {
        double a = mid[c] - face[m.down(i, c)];
        double b = mid[c] - face[c];
        s += 0.5 * vol * (a * a + b * b);
      }
      e_gap += s;
    }

    CellVectorField pphi = ops::project_cell(m, Phi, 0.0);
    CellVectorField gd = ops::grad_cells(ops::div_cells(pphi));
    double e_gd = 0.0, e_lap = 0.0;
    for (int k = 0; k < dim; ++k) {
      double e = cell_defect(m, Phi.grad_div(k), gd.c[k]);
      e_gd += e * e;
      double el = cell_defect(m, Phi.laplacian(k), ops::laplace_compact(m, pphi.c[k]));
      e_lap += el * el;
    }

    CellField pu = ops::project_cell(m, U.trig(0), 0.0);
    double e_ctr = 0.0;
    for (std::int64_t c = 0; c < m.cells(); ++c) {
      double d0 = pu[c] - U.trig(0).value(0.0, m.cell_center(c));
      e_ctr += vol * d0 * d0;
    }

    double h = m.h();
    double errs[6] = {std::sqrt(e_face), std::sqrt(e_mid), std::sqrt(e_gap),
                      std::sqrt(e_gd),   std::sqrt(e_lap), std::sqrt(e_ctr)};
    for (int k = 0; k < 6; ++k) {
      out[k].h.push_back(h);
      out[k].error.push_back(errs[k]);
    }
  }

  for (auto& r : out) r.order = lsq_slope(r.h, r.error);
  return out;
}

}  // namespace nsfv
