#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfv/analysis.hpp"
#include "nsfv/fields.hpp"
#include "nsfv/identities.hpp"
#include "nsfv/mesh.hpp"
#include "nsfv/schemes.hpp"

namespace nsfv::io {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest decimal string that round-trips a binary64 value (printf %.17g);
/// used for every numeric field in dumps and CSV outputs.
std::string format_double(double v);

// ---- field dumps ----
//
// Text format, one token per line after a single header line:
//   nsfv-field <kind> <dim> <n> <components>
// with kind one of "cell" (components 1), "staggered-<i>" (one direction-i
// face scalar, components 1), or "tensor" (components dim*dim). Payload
// lists each component in full before the next one, entries in the mesh
// flattening order (first coordinate slowest). Tensor components are
// ordered row-major: (0,0), (0,1), ..., (1,0), ...

void write_field(std::ostream& os, const CellField& f);
void write_face_field(std::ostream& os, const Mesh& m, const std::vector<double>& f, int dir);
void write_field(std::ostream& os, const TensorField& f);

CellField read_cell_field(std::istream& is, const Mesh& m);
std::vector<double> read_face_field(std::istream& is, const Mesh& m, int dir);
TensorField read_tensor_field(std::istream& is, const Mesh& m);

// ---- CSV outputs ----
//
// Comma-separated, one header line, 17-significant-digit numbers, '\n' line
// ends. Schemas (documented in the README):
//   steps:        n,t,iterations,residual,mass,min_rho,E,D,slack
//   identities:   name,lhs,rhs,residual
//   consistency:  n,h,e_mass,e_momentum
//   rates:        scheme,dim,gamma,eps,beta_d,beta_m,rate
//   eoc levels:   n,h,dt,rel_energy,dissipation_error,rho_error,
//                 momentum_error,velocity_error
//   fit lines:    metric,rate

void write_steps_csv(std::ostream& os, const RunReport& r);
void write_identities_csv(std::ostream& os, const std::vector<IdentityResult>& rows);
void write_consistency_csv(std::ostream& os, const analysis::ConsistencyStudy& st);
void write_consistency_rates_csv(std::ostream& os, const analysis::ConsistencyStudy& st);

struct RateRow {
  std::string scheme;
  int dim = 0;
  double gamma = 0.0;
  double eps = 0.0;
  analysis::RatePrediction pred;
};
void write_rates_csv(std::ostream& os, const std::vector<RateRow>& rows);

void write_eoc_csv(std::ostream& os, const analysis::EocStudy& st);
void write_eoc_rates_csv(std::ostream& os, const analysis::EocStudy& st);

}  // namespace nsfv::io
