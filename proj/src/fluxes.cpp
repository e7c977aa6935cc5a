#include "nsfv/fluxes.hpp"

#include <cmath>
#include <stdexcept>

#include "nsfv/kernels.hpp"
#include "nsfv/ops.hpp"

namespace nsfv::flux {

namespace {
const kernels::Table& K() { return kernels::active(); }
}

StaggeredField normal_velocity(const CellVectorField& v) {
  const Mesh& m = *v.mesh;
  StaggeredField out(m);
  for (int i = 0; i < m.dim(); ++i) out.c[i] = ops::face_average_dir(m, v.c[i], i);
  return out;
}

StaggeredField upwind(const CellField& r, const StaggeredField& un) {
  const Mesh& m = *r.mesh;
  StaggeredField out(m);
  std::vector<double> nb(m.cells());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), r.v.data(), m.up(i).data(), m.cells());
    K().upwind(out.c[i].data(), r.v.data(), nb.data(), un.c[i].data(), m.cells());
  }
  return out;
}

StaggeredField upwind_diffusive(const CellField& r, const StaggeredField& un, double eps) {
  if (!(eps > -1.0))
    throw std::invalid_argument("upwind_diffusive: eps must exceed -1");
  const Mesh& m = *r.mesh;
  double eta = std::pow(m.h(), eps);
  StaggeredField out(m);
  std::vector<double> nb(m.cells());
  for (int i = 0; i < m.dim(); ++i) {
    K().gather(nb.data(), r.v.data(), m.up(i).data(), m.cells());
    K().upwind_diffusive(out.c[i].data(), r.v.data(), nb.data(), un.c[i].data(), eta,
                         m.cells());
  }
  return out;
}

TensorField upwind(const CellVectorField& q, const StaggeredField& un) {
  const Mesh& m = *q.mesh;
  TensorField out(m);
  std::vector<double> nb(m.cells());
  for (int k = 0; k < m.dim(); ++k)
    for (int i = 0; i < m.dim(); ++i) {
      K().gather(nb.data(), q.c[k].data(), m.up(i).data(), m.cells());
      K().upwind(out.c[k][i].data(), q.c[k].data(), nb.data(), un.c[i].data(), m.cells());
    }
  return out;
}

TensorField upwind_diffusive(const CellVectorField& q, const StaggeredField& un,
                             double eps) {
  if (!(eps > -1.0))
    throw std::invalid_argument("upwind_diffusive: eps must exceed -1");
  const Mesh& m = *q.mesh;
  double eta = std::pow(m.h(), eps);
  TensorField out(m);
  std::vector<double> nb(m.cells());
  for (int k = 0; k < m.dim(); ++k)
    for (int i = 0; i < m.dim(); ++i) {
      K().gather(nb.data(), q.c[k].data(), m.up(i).data(), m.cells());
      K().upwind_diffusive(out.c[k][i].data(), q.c[k].data(), nb.data(), un.c[i].data(),
                           eta, m.cells());
    }
  return out;
}

CellField flux_divergence(const StaggeredField& F) {
  return ops::div_staggered(F);
}

}  // namespace nsfv::flux
