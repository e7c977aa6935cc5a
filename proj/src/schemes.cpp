#include "nsfv/schemes.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "nsfv/fluxes.hpp"
#include "nsfv/kernels.hpp"
#include "nsfv/ops.hpp"

namespace nsfv {

namespace {

using std::int64_t;

struct Layout {
  int64_t cells;
  int dim;

  int64_t unknowns() const { return (1 + int64_t(dim)) * cells; }
  int64_t rho(int64_t K) const { return K; }
  int64_t u(int k, int64_t K) const { return (1 + int64_t(k)) * cells + K; }
};

// Derivative of the upwind value with respect to the face velocity; the
// half-half convention at u = 0 is the semismooth selection.
double upwind_weight(double rin, double rout, double u) {
  if (u > 0.0) return rin;
  if (u < 0.0) return rout;
  return 0.5 * (rin + rout);
}

CellVectorField as_cell_vector(const Mesh& m, const State& s) {
  CellVectorField v(m);
  for (int k = 0; k < m.dim(); ++k) v.c[k] = s.vel[k];
  return v;
}

StaggeredField as_staggered(const Mesh& m, const State& s) {
  StaggeredField w(m);
  for (int k = 0; k < m.dim(); ++k) w.c[k] = s.vel[k];
  return w;
}

double min_rho(const State& s) {
  return kernels::active().min(s.rho.v.data(), s.rho.v.size());
}

void add_scaled(State& s, const std::vector<double>& delta, double alpha, const Layout& L) {
  const auto& k = kernels::active();
  k.axpy(s.rho.v.data(), alpha, delta.data(), size_t(L.cells));
  for (int c = 0; c < L.dim; ++c)
    k.axpy(s.vel[c].data(), alpha, delta.data() + L.u(c, 0), size_t(L.cells));
}

}  // namespace

Solver::Solver(SchemeKind kind, const Mesh& m, const GasLaw& gas, const Viscosity& visc,
               SchemeConfig cfg)
    : kind_(kind), m_(m), gas_(gas), visc_(visc), cfg_(cfg) {
  if (!(cfg_.eps > -1.0)) throw std::invalid_argument("upwind exponent must exceed -1");
  if (cfg_.newton_tol <= 0.0 || cfg_.max_newton < 1 || cfg_.max_halvings < 1)
    throw std::invalid_argument("invalid solver controls");
  if ((1 + int64_t(m.dim())) * m.cells() > std::numeric_limits<int>::max())
    throw std::invalid_argument("mesh too large for the sparse index type");
}

State Solver::project_state(const SmoothScalar& rho, const SmoothVector& u, double t) const {
  if (u.dim() != m_.dim()) throw std::invalid_argument("velocity dimension mismatch");
  State s(m_);
  s.rho = ops::project_cell(m_, rho, t);
  if (min_rho(s) <= 0.0) throw std::invalid_argument("projected density not positive");
  if (kind_ == SchemeKind::FV) {
    for (int k = 0; k < m_.dim(); ++k) {
      const SmoothScalar& uk = u.comp(k);
      FuncScalar qk([&](double tt, const std::array<double, 3>& x) {
        return rho.value(tt, x) * uk.value(tt, x);
      });
      CellField q = ops::project_cell(m_, qk, t);
      for (int64_t K = 0; K < m_.cells(); ++K) s.vel[k][K] = q[K] / s.rho[K];
    }
  } else {
    StaggeredField w = ops::project_face(m_, u, t);
    for (int k = 0; k < m_.dim(); ++k) s.vel[k] = std::move(w.c[k]);
  }
  return s;
}

State Solver::initial(const Problem& p) const {
  if (!p.rho0 || !p.u0) throw std::invalid_argument("initial data required");
  return project_state(*p.rho0, *p.u0, 0.0);
}

Solver::SourceEval Solver::eval_sources(const Problem& p, double t) const {
  SourceEval s;
  if (!p.source_mass && !p.source_momentum) return s;
  s.active = true;
  s.mass = p.source_mass ? ops::project_cell(m_, *p.source_mass, t) : CellField(m_);
  if (p.source_momentum) {
    if (p.source_momentum->dim() != m_.dim())
      throw std::invalid_argument("momentum source dimension mismatch");
    if (kind_ == SchemeKind::FV) {
      CellVectorField mv = ops::project_cell(m_, *p.source_momentum, t);
      for (int k = 0; k < m_.dim(); ++k) s.momentum[k] = std::move(mv.c[k]);
    } else {
      for (int k = 0; k < m_.dim(); ++k)
        s.momentum[k] = ops::project_dual_cell(m_, p.source_momentum->comp(k), k, t);
    }
  } else {
    for (int k = 0; k < m_.dim(); ++k) s.momentum[k].assign(m_.cells(), 0.0);
  }
  return s;
}

void Solver::residual(const State& prev, const State& next, double t, double dt,
                      const Problem& p, std::vector<double>& out) const {
  residual_impl(prev, next, dt, eval_sources(p, t), out);
}

void Solver::residual_impl(const State& prev, const State& next, double dt,
                           const SourceEval& src, std::vector<double>& out) const {
  const auto& ker = kernels::active();
  const int d = m_.dim();
  const int64_t C = m_.cells();
  const double h = m_.h();
  const double nuv = visc_.nu(d);
  const Layout L{C, d};
  out.assign(L.unknowns(), 0.0);

  const double* sm = src.active ? src.mass.v.data() : nullptr;

  if (kind_ == SchemeKind::FV) {
    CellVectorField u = as_cell_vector(m_, next);
    StaggeredField un = flux::normal_velocity(u);
    StaggeredField Fr = flux::upwind_diffusive(next.rho, un, cfg_.eps);
    CellField md = flux::flux_divergence(Fr);
    for (int64_t K = 0; K < C; ++K)
      out[L.rho(K)] = (next.rho[K] - prev.rho[K]) / dt + md[K] - (sm ? sm[K] : 0.0);

    CellVectorField q(m_);
    for (int k = 0; k < d; ++k)
      ker.multiply(q.c[k].data(), next.rho.v.data(), next.vel[k].data(), size_t(C));
    TensorField Fm = flux::upwind_diffusive(q, un, cfg_.eps);

    CellField pres(m_);
    for (int64_t K = 0; K < C; ++K) pres[K] = gas_.pressure(next.rho[K]);
    CellVectorField gp = ops::grad_cells(pres);
    CellVectorField gd = ops::grad_cells(ops::div_cells(u));

    for (int k = 0; k < d; ++k) {
      std::vector<double> conv(C, 0.0);
      for (int i = 0; i < d; ++i) {
        std::vector<double> df = ops::ddx_faces(m_, Fm.c[k][i], i);
        ker.axpy(conv.data(), 1.0, df.data(), size_t(C));
      }
      std::vector<double> lap = ops::laplace_compact(m_, next.vel[k]);
      const double* sq = src.active ? src.momentum[k].data() : nullptr;
      for (int64_t K = 0; K < C; ++K) {
        out[L.u(k, K)] = (next.rho[K] * next.vel[k][K] - prev.rho[K] * prev.vel[k][K]) / dt +
                         conv[K] + gp.c[k][K] - visc_.mu * lap[K] - nuv * gd.c[k][K] -
                         (sq ? sq[K] : 0.0);
      }
    }
    return;
  }

  StaggeredField un = as_staggered(m_, next);
  StaggeredField un0 = as_staggered(m_, prev);
  StaggeredField Fr = flux::upwind_diffusive(next.rho, un, cfg_.eps);
  CellField md = flux::flux_divergence(Fr);
  for (int64_t K = 0; K < C; ++K)
    out[L.rho(K)] = (next.rho[K] - prev.rho[K]) / dt + md[K] - (sm ? sm[K] : 0.0);

  CellVectorField ub = ops::cell_average(un);
  CellVectorField ub0 = ops::cell_average(un0);
  CellVectorField q(m_);
  for (int i = 0; i < d; ++i)
    ker.multiply(q.c[i].data(), next.rho.v.data(), ub.c[i].data(), size_t(C));
  TensorField Up = flux::upwind(q, un);

  CellField pres(m_);
  for (int64_t K = 0; K < C; ++K) pres[K] = gas_.pressure(next.rho[K]);
  StaggeredField gp = ops::grad_dual(pres);
  StaggeredField gdiv = ops::grad_dual(ops::div_staggered(un));
  StaggeredField grho = ops::grad_dual(next.rho);
  const double heps2 = 0.5 * std::pow(h, cfg_.eps);

  for (int i = 0; i < d; ++i) {
    std::vector<double> T(C), Cc(C, 0.0);
    for (int64_t K = 0; K < C; ++K)
      T[K] = (next.rho[K] * ub.c[i][K] - prev.rho[K] * ub0.c[i][K]) / dt;
    for (int j = 0; j < d; ++j) {
      std::vector<double> df = ops::ddx_faces(m_, Up.c[i][j], j);
      ker.axpy(Cc.data(), 1.0, df.data(), size_t(C));
    }
    std::array<std::vector<double>, 3> B;
    for (int j = 0; j < d; ++j) {
      std::vector<double> A = ops::face_average_dir(m_, ub.c[i], j);
      B[j].resize(C);
      ker.multiply(B[j].data(), A.data(), grho.c[j].data(), size_t(C));
    }
    std::vector<double> lap = ops::laplace_compact(m_, next.vel[i]);
    const double* sq = src.active ? src.momentum[i].data() : nullptr;
    for (int64_t f = 0; f < C; ++f) {
      int64_t fp = m_.up(i, f);
      double stab = 0.0;
      for (int j = 0; j < d; ++j)
        stab += B[j][m_.down(j, f)] - B[j][f] + B[j][m_.down(j, fp)] - B[j][fp];
      out[L.u(i, f)] = 0.5 * (T[f] + T[fp]) + 0.5 * (Cc[f] + Cc[fp]) + gp.c[i][f] -
                       visc_.mu * lap[f] - nuv * gdiv.c[i][f] + heps2 * stab -
                       (sq ? sq[f] : 0.0);
    }
  }
}

void Solver::jacobian(const State& next, double dt, bool with_convection,
                      std::vector<Triplet>& out) const {
  const int d = m_.dim();
  const int64_t C = m_.cells();
  const double h = m_.h();
  const double nuv = visc_.nu(d);
  const double eta = std::pow(h, cfg_.eps);
  const Layout L{C, d};
  out.clear();
  out.reserve(size_t(L.unknowns()) * size_t(6 * d + 4));

  auto push = [&](int64_t row, int64_t col, double v) {
    out.push_back({int(row), int(col), v});
  };

  if (kind_ == SchemeKind::FV) {
    CellVectorField u = as_cell_vector(m_, next);
    StaggeredField un = flux::normal_velocity(u);

    for (int64_t K = 0; K < C; ++K) {
      push(L.rho(K), L.rho(K), 1.0 / dt);
      for (int k = 0; k < d; ++k) {
        push(L.u(k, K), L.rho(K), next.vel[k][K] / dt);
        push(L.u(k, K), L.u(k, K), next.rho[K] / dt);
        // pressure, central
        push(L.u(k, K), L.rho(m_.up(k, K)), gas_.dpressure(next.rho[m_.up(k, K)]) / (2.0 * h));
        push(L.u(k, K), L.rho(m_.down(k, K)), -gas_.dpressure(next.rho[m_.down(k, K)]) / (2.0 * h));
        // compact Laplacian
        push(L.u(k, K), L.u(k, K), visc_.mu * 2.0 * d / (h * h));
        for (int i = 0; i < d; ++i) {
          push(L.u(k, K), L.u(k, m_.up(i, K)), -visc_.mu / (h * h));
          push(L.u(k, K), L.u(k, m_.down(i, K)), -visc_.mu / (h * h));
        }
        // central gradient of the central divergence
        for (int s = -1; s <= 1; s += 2) {
          int64_t Kp = s > 0 ? m_.up(k, K) : m_.down(k, K);
          double c = -nuv * double(s) / (4.0 * h * h);
          for (int j = 0; j < d; ++j) {
            push(L.u(k, K), L.u(j, m_.up(j, Kp)), c);
            push(L.u(k, K), L.u(j, m_.down(j, Kp)), -c);
          }
        }
      }
    }

    for (int i = 0; i < d; ++i) {
      for (int64_t f = 0; f < C; ++f) {
        int64_t Lc = m_.up(i, f);
        double uf = un.c[i][f];
        double up = uf > 0.0 ? uf : 0.0;
        double um = uf < 0.0 ? uf : 0.0;
        // mass flux
        double w = upwind_weight(next.rho[f], next.rho[Lc], uf);
        push(L.rho(f), L.rho(f), (up + eta) / h);
        push(L.rho(f), L.rho(Lc), (um - eta) / h);
        push(L.rho(Lc), L.rho(f), -(up + eta) / h);
        push(L.rho(Lc), L.rho(Lc), -(um - eta) / h);
        if (with_convection) {
          push(L.rho(f), L.u(i, f), w / (2.0 * h));
          push(L.rho(f), L.u(i, Lc), w / (2.0 * h));
          push(L.rho(Lc), L.u(i, f), -w / (2.0 * h));
          push(L.rho(Lc), L.u(i, Lc), -w / (2.0 * h));
          // momentum flux of q_k = rho u_k across the same face
          for (int k = 0; k < d; ++k) {
            double qf = next.rho[f] * next.vel[k][f];
            double ql = next.rho[Lc] * next.vel[k][Lc];
            double wq = upwind_weight(qf, ql, uf);
            push(L.u(k, f), L.rho(f), (up + eta) * next.vel[k][f] / h);
            push(L.u(k, f), L.u(k, f), (up + eta) * next.rho[f] / h);
            push(L.u(k, f), L.rho(Lc), (um - eta) * next.vel[k][Lc] / h);
            push(L.u(k, f), L.u(k, Lc), (um - eta) * next.rho[Lc] / h);
            push(L.u(k, f), L.u(i, f), wq / (2.0 * h));
            push(L.u(k, f), L.u(i, Lc), wq / (2.0 * h));
            push(L.u(k, Lc), L.rho(f), -(up + eta) * next.vel[k][f] / h);
            push(L.u(k, Lc), L.u(k, f), -(up + eta) * next.rho[f] / h);
            push(L.u(k, Lc), L.rho(Lc), -(um - eta) * next.vel[k][Lc] / h);
            push(L.u(k, Lc), L.u(k, Lc), -(um - eta) * next.rho[Lc] / h);
            push(L.u(k, Lc), L.u(i, f), -wq / (2.0 * h));
            push(L.u(k, Lc), L.u(i, Lc), -wq / (2.0 * h));
          }
        }
      }
    }
    return;
  }

  StaggeredField un = as_staggered(m_, next);
  CellVectorField ub = ops::cell_average(un);
  StaggeredField grho = ops::grad_dual(next.rho);

  for (int64_t f = 0; f < C; ++f) {
    push(L.rho(f), L.rho(f), 1.0 / dt);
    for (int i = 0; i < d; ++i) {
      int64_t row = L.u(i, f);
      int64_t cp = m_.up(i, f);
      // time term through bar u on the two adjacent cells
      for (int64_t K : {f, cp}) {
        push(row, L.rho(K), ub.c[i][K] / (2.0 * dt));
        push(row, L.u(i, K), next.rho[K] / (4.0 * dt));
        push(row, L.u(i, m_.down(i, K)), next.rho[K] / (4.0 * dt));
      }
      // pressure on the dual cell
      push(row, L.rho(cp), gas_.dpressure(next.rho[cp]) / h);
      push(row, L.rho(f), -gas_.dpressure(next.rho[f]) / h);
      // compact Laplacian on the face lattice
      push(row, L.u(i, f), visc_.mu * 2.0 * d / (h * h));
      for (int j = 0; j < d; ++j) {
        push(row, L.u(i, m_.up(j, f)), -visc_.mu / (h * h));
        push(row, L.u(i, m_.down(j, f)), -visc_.mu / (h * h));
      }
      // two-point gradient of the staggered divergence
      for (int s = -1; s <= 1; s += 2) {
        int64_t K = s > 0 ? cp : f;
        double c = -nuv * double(s) / (h * h);
        for (int j = 0; j < d; ++j) {
          push(row, L.u(j, K), c);
          push(row, L.u(j, m_.down(j, K)), -c);
        }
      }
    }
  }

  for (int j = 0; j < d; ++j) {
    for (int64_t g = 0; g < C; ++g) {
      int64_t Bc = m_.up(j, g);
      double uf = un.c[j][g];
      double up = uf > 0.0 ? uf : 0.0;
      double um = uf < 0.0 ? uf : 0.0;
      double w = upwind_weight(next.rho[g], next.rho[Bc], uf);
      push(L.rho(g), L.rho(g), (up + eta) / h);
      push(L.rho(g), L.rho(Bc), (um - eta) / h);
      push(L.rho(Bc), L.rho(g), -(up + eta) / h);
      push(L.rho(Bc), L.rho(Bc), -(um - eta) / h);
      if (!with_convection) continue;
      push(L.rho(g), L.u(j, g), w / h);
      push(L.rho(Bc), L.u(j, g), -w / h);
      for (int i = 0; i < d; ++i) {
        // plain upwind flux of rho bar u_i across face (j, g); flux enters the
        // cell updates of g (+) and up_j g (-), each split onto the two
        // direction-i faces of its cell.
        auto push_cell = [&](int64_t K, int64_t col, double v) {
          push(L.u(i, K), col, 0.5 * v);
          push(L.u(i, m_.down(i, K)), col, 0.5 * v);
        };
        double qa = next.rho[g] * ub.c[i][g];
        double qb = next.rho[Bc] * ub.c[i][Bc];
        double wq = upwind_weight(qa, qb, uf);
        for (int s = -1; s <= 1; s += 2) {
          int64_t K = s > 0 ? g : Bc;
          double c = double(s) / h;
          push_cell(K, L.rho(g), c * up * ub.c[i][g]);
          push_cell(K, L.u(i, g), c * up * next.rho[g] * 0.5);
          push_cell(K, L.u(i, m_.down(i, g)), c * up * next.rho[g] * 0.5);
          push_cell(K, L.rho(Bc), c * um * ub.c[i][Bc]);
          push_cell(K, L.u(i, Bc), c * um * next.rho[Bc] * 0.5);
          push_cell(K, L.u(i, m_.down(i, Bc)), c * um * next.rho[Bc] * 0.5);
          push_cell(K, L.u(j, g), c * wq);
        }
        // stabilization block B_ij[g] = <bar u_i>^(j)[g] d_j rho[g]
        double A = 0.5 * (ub.c[i][g] + ub.c[i][Bc]);
        double G = grho.c[j][g];
        int64_t rows[4] = {m_.up(j, g), g, m_.down(i, m_.up(j, g)), m_.down(i, g)};
        double sgn[4] = {1.0, -1.0, 1.0, -1.0};
        for (int r = 0; r < 4; ++r) {
          double c = sgn[r] * 0.5 * eta;
          int64_t row = L.u(i, rows[r]);
          push(row, L.rho(Bc), c * A / h);
          push(row, L.rho(g), -c * A / h);
          push(row, L.u(i, g), c * G * 0.25);
          push(row, L.u(i, m_.down(i, g)), c * G * 0.25);
          push(row, L.u(i, Bc), c * G * 0.25);
          push(row, L.u(i, m_.down(i, Bc)), c * G * 0.25);
        }
      }
    }
  }
}

std::vector<double> Solver::solve_linear(const State& cur, double dt, bool with_convection,
                                         const std::vector<double>& r) const {
  const Layout L{m_.cells(), m_.dim()};
  const int n = int(L.unknowns());

  std::vector<Triplet> ts;
  jacobian(cur, dt, with_convection, ts);
  std::vector<Eigen::Triplet<double>> et;
  et.reserve(ts.size());
  for (const Triplet& t : ts) et.emplace_back(t.row, t.col, t.value);

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(et.begin(), et.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SolveError(SolveError::Kind::LinearBreakdown, "sparse factorization failed");

  Eigen::Map<const Eigen::VectorXd> rv(r.data(), n);
  Eigen::VectorXd dx = lu.solve(-rv);
  if (lu.info() != Eigen::Success)
    throw SolveError(SolveError::Kind::LinearBreakdown, "sparse solve failed");

  double rn = rv.lpNorm<Eigen::Infinity>();
  double lin = (A * dx + rv).lpNorm<Eigen::Infinity>();
  if (!(lin <= 1e-10 * std::max(1.0, rn)))
    throw SolveError(SolveError::Kind::LinearBreakdown, "linear residual above contract");

  return std::vector<double>(dx.data(), dx.data() + n);
}

StepReport Solver::step(const State& prev, State& next, double t, double dt,
                        const Problem& p) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step size must be positive");
  const auto& ker = kernels::active();
  const Layout L{m_.cells(), m_.dim()};
  SourceEval src = eval_sources(p, t);

  State cur = prev;
  std::vector<double> R, Rc;
  residual_impl(prev, cur, dt, src, R);
  double rnorm = ker.max_abs(R.data(), R.size());

  int iters = 0;
  bool full = true;
  while (rnorm > cfg_.newton_tol) {
    if (iters >= cfg_.max_newton)
      throw SolveError(SolveError::Kind::NonlinearDivergence,
                       "no convergence in " + std::to_string(cfg_.max_newton) + " iterations");
    std::vector<double> delta = solve_linear(cur, dt, full, R);

    double alpha = 1.0;
    int halvings = 0;
    State cand = cur;
    add_scaled(cand, delta, alpha, L);
    while (halvings < cfg_.max_halvings && !(min_rho(cand) > 0.0)) {
      alpha *= 0.5;
      ++halvings;
      cand = cur;
      add_scaled(cand, delta, alpha, L);
    }
    if (!(min_rho(cand) > 0.0))
      throw SolveError(SolveError::Kind::PositivityLoss, "density positivity lost");

    bool accepted = false;
    while (true) {
      residual_impl(prev, cand, dt, src, Rc);
      double rc = ker.max_abs(Rc.data(), Rc.size());
      if (rc <= (1.0 - 1e-4 * alpha) * rnorm || rc <= cfg_.newton_tol) {
        cur = std::move(cand);
        R.swap(Rc);
        rnorm = rc;
        accepted = true;
        ++iters;
        break;
      }
      if (halvings >= cfg_.max_halvings) break;
      alpha *= 0.5;
      ++halvings;
      cand = cur;
      add_scaled(cand, delta, alpha, L);
    }
    if (!accepted) {
      if (full) {
        full = false;
        continue;
      }
      throw SolveError(SolveError::Kind::NonlinearDivergence, "line search stalled");
    }
    full = true;
  }
  next = std::move(cur);

  StepReport rep;
  rep.t = t;
  rep.iterations = iters;
  rep.residual = rnorm;
  rep.mass = mass(next);
  rep.drift = rep.mass - mass(prev);
  rep.min_rho = min_rho(next);
  rep.energy_before = energy(prev);
  rep.energy = energy(next);
  rep.dissipation = dt * dissipation_rate(next);
  rep.slack = rep.energy - rep.energy_before + rep.dissipation;
  return rep;
}

namespace {

void advance_adaptive(const Solver& s, const State& a, State& b, double t0, double dt,
                      int depth, const Problem& p, RunReport& out) {
  try {
    StepReport rep = s.step(a, b, t0 + dt, dt, p);
    out.steps.push_back(rep);
  } catch (const SolveError&) {
    if (!s.config().adapt_dt || depth >= s.config().max_dt_halvings) throw;
    State mid;
    advance_adaptive(s, a, mid, t0, 0.5 * dt, depth + 1, p, out);
    advance_adaptive(s, mid, b, t0 + 0.5 * dt, 0.5 * dt, depth + 1, p, out);
  }
}

}  // namespace

RunReport Solver::run(const Problem& p, double T, double dt_target, State* final_state,
                      std::vector<State>* trajectory) const {
  if (!(T > 0.0) || !(dt_target > 0.0))
    throw std::invalid_argument("horizon and step target must be positive");
  const auto& ker = kernels::active();
  RunReport out;
  out.nt = int(std::max<long long>(1, std::llround(T / dt_target)));
  out.dt = T / out.nt;

  State s = initial(p);
  out.initial_mass = mass(s);
  out.initial_energy = energy(s);
  auto track = [&](const State& st) {
    out.max_rho = std::max(out.max_rho, ker.max_abs(st.rho.v.data(), st.rho.v.size()));
    for (int k = 0; k < m_.dim(); ++k)
      out.max_speed = std::max(out.max_speed, ker.max_abs(st.vel[k].data(), st.vel[k].size()));
  };
  track(s);
  if (trajectory) trajectory->push_back(s);

  State next;
  for (int n = 1; n <= out.nt; ++n) {
    advance_adaptive(*this, s, next, (n - 1) * out.dt, out.dt, 0, p, out);
    s = std::move(next);
    track(s);
    if (trajectory) trajectory->push_back(s);
  }
  for (std::size_t i = 0; i < out.steps.size(); ++i) out.steps[i].n = int(i) + 1;
  if (final_state) *final_state = std::move(s);
  return out;
}

CellVectorField Solver::cell_velocity(const State& s) const {
  if (kind_ == SchemeKind::FV) return as_cell_vector(m_, s);
  return ops::cell_average(as_staggered(m_, s));
}

StaggeredField Solver::face_velocity(const State& s) const {
  if (kind_ == SchemeKind::FV) return flux::normal_velocity(as_cell_vector(m_, s));
  return as_staggered(m_, s);
}

TensorField Solver::velocity_gradient(const State& s) const {
  if (kind_ == SchemeKind::FV) return ops::grad_dual(as_cell_vector(m_, s));
  return ops::grad_bidual(as_staggered(m_, s));
}

CellField Solver::velocity_divergence(const State& s) const {
  if (kind_ == SchemeKind::FV) return ops::div_cells(as_cell_vector(m_, s));
  return ops::div_staggered(as_staggered(m_, s));
}

double Solver::mass(const State& s) const { return ops::integral(s.rho); }

double Solver::energy(const State& s) const {
  return total_energy(gas_, s.rho, cell_velocity(s));
}

double Solver::dissipation_rate(const State& s) const {
  return dissipation(visc_, m_.dim(), velocity_gradient(s), velocity_divergence(s));
}

}  // namespace nsfv
