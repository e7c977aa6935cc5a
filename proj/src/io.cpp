#include "nsfv/io.hpp"

#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>

namespace nsfv::io {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw IoError(what);
}

void write_header(std::ostream& os, const char* kind, const Mesh& m, int components) {
  os << "nsfv-field " << kind << ' ' << m.dim() << ' ' << m.n() << ' ' << components << '\n';
}

void write_payload(std::ostream& os, const std::vector<double>& v) {
  for (double x : v) os << format_double(x) << '\n';
}

void read_header(std::istream& is, const std::string& kind, const Mesh& m, int components) {
  std::string magic, k;
  int d = 0, n = 0, c = 0;
  check(bool(is >> magic >> k >> d >> n >> c), "truncated field header");
  check(magic == "nsfv-field", "bad field magic '" + magic + "'");
  check(k == kind, "field kind '" + k + "', expected '" + kind + "'");
  check(d == m.dim() && n == m.n(), "field lattice mismatch");
  check(c == components, "field component count mismatch");
}

void read_payload(std::istream& is, std::vector<double>& v) {
  for (double& x : v) check(bool(is >> x), "truncated field payload");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(std::ostream& os, const CellField& f) {
  write_header(os, "cell", *f.mesh, 1);
  write_payload(os, f.v);
}

void write_face_field(std::ostream& os, const Mesh& m, const std::vector<double>& f, int dir) {
  check(dir >= 0 && dir < m.dim(), "face direction out of range");
  check(f.size() == std::size_t(m.cells()), "face payload size mismatch");
  write_header(os, ("staggered-" + std::to_string(dir)).c_str(), m, 1);
  write_payload(os, f);
}

void write_field(std::ostream& os, const TensorField& f) {
  int d = f.mesh->dim();
  write_header(os, "tensor", *f.mesh, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) write_payload(os, f.c[a][b]);
}

CellField read_cell_field(std::istream& is, const Mesh& m) {
  read_header(is, "cell", m, 1);
  CellField f(m);
  read_payload(is, f.v);
  return f;
}

std::vector<double> read_face_field(std::istream& is, const Mesh& m, int dir) {
  check(dir >= 0 && dir < m.dim(), "face direction out of range");
  read_header(is, "staggered-" + std::to_string(dir), m, 1);
  std::vector<double> f(std::size_t(m.cells()));
  read_payload(is, f);
  return f;
}

TensorField read_tensor_field(std::istream& is, const Mesh& m) {
  int d = m.dim();
  read_header(is, "tensor", m, d * d);
  TensorField f(m);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) read_payload(is, f.c[a][b]);
  return f;
}

void write_steps_csv(std::ostream& os, const RunReport& r) {
  os << "n,t,iterations,residual,mass,min_rho,E,D,slack\n";
  for (const StepReport& s : r.steps) {
    os << s.n << ',' << format_double(s.t) << ',' << s.iterations << ','
       << format_double(s.residual) << ',' << format_double(s.mass) << ','
       << format_double(s.min_rho) << ',' << format_double(s.energy) << ','
       << format_double(s.dissipation) << ',' << format_double(s.slack) << '\n';
  }
}

void write_identities_csv(std::ostream& os, const std::vector<IdentityResult>& rows) {
  os << "name,lhs,rhs,residual\n";
  for (const IdentityResult& r : rows) {
    os << r.name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
       << format_double(r.residual) << '\n';
  }
}

void write_consistency_csv(std::ostream& os, const analysis::ConsistencyStudy& st) {
  os << "n,h,e_mass,e_momentum\n";
  for (const analysis::ConsistencyPoint& p : st.points) {
    os << p.n << ',' << format_double(p.h) << ',' << format_double(p.e_mass) << ','
       << format_double(p.e_momentum) << '\n';
  }
}

void write_consistency_rates_csv(std::ostream& os, const analysis::ConsistencyStudy& st) {
  os << "metric,rate\n";
  os << "mass," << format_double(st.rate_mass) << '\n';
  os << "momentum," << format_double(st.rate_momentum) << '\n';
}

void write_rates_csv(std::ostream& os, const std::vector<RateRow>& rows) {
  os << "scheme,dim,gamma,eps,beta_d,beta_m,rate\n";
  for (const RateRow& r : rows) {
    os << r.scheme << ',' << r.dim << ',' << format_double(r.gamma) << ','
       << format_double(r.eps) << ',' << format_double(r.pred.beta_d) << ','
       << format_double(r.pred.beta_m) << ',' << format_double(r.pred.rate) << '\n';
  }
}

void write_eoc_csv(std::ostream& os, const analysis::EocStudy& st) {
  os << "n,h,dt,rel_energy,dissipation_error,rho_error,momentum_error,velocity_error\n";
  for (const analysis::EocMetrics& m : st.levels) {
    os << m.n << ',' << format_double(m.h) << ',' << format_double(m.dt) << ','
       << format_double(m.sup_rel_energy) << ',' << format_double(m.dissipation_error) << ','
       << format_double(m.rho_error) << ',' << format_double(m.momentum_error) << ','
       << format_double(m.velocity_error) << '\n';
  }
}

void write_eoc_rates_csv(std::ostream& os, const analysis::EocStudy& st) {
  os << "metric,rate\n";
  os << "rel_energy," << format_double(st.rates.energy) << '\n';
  os << "dissipation_error," << format_double(st.rates.dissipation) << '\n';
  os << "rho_error," << format_double(st.rates.rho) << '\n';
  os << "momentum_error," << format_double(st.rates.momentum) << '\n';
  os << "velocity_error," << format_double(st.rates.velocity) << '\n';
}

}  // namespace nsfv::io
