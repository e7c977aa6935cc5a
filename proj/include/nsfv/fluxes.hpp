#pragma once

#include "nsfv/fields.hpp"
#include "nsfv/mesh.hpp"

namespace nsfv::flux {

/// Face-normal velocity of a cell-centered velocity: component i is the
/// direction-i face average of v_i.
StaggeredField normal_velocity(const CellVectorField& v);

/// First-order upwind flux of the cell quantity r across each face, driven by
/// the face-normal velocity un:  r_K max(u,0) + r_L min(u,0)  on face K -> L.
StaggeredField upwind(const CellField& r, const StaggeredField& un);

/// Upwind flux with the mesh-dependent diffusive correction
///   - h^eps [[r]],  eps > -1.
/// Throws std::invalid_argument for eps <= -1.
StaggeredField upwind_diffusive(const CellField& r, const StaggeredField& un, double eps);

/// Componentwise upwind flux of a cell vector quantity q (entry (k, i): flux
/// of q_k across the direction-i faces).
TensorField upwind(const CellVectorField& q, const StaggeredField& un);
TensorField upwind_diffusive(const CellVectorField& q, const StaggeredField& un, double eps);

/// Per-cell conservative update of face fluxes: (F_i[K] - F_i[down_i K]) / h
/// summed over i; the discrete divergence of the flux.
CellField flux_divergence(const StaggeredField& F);

}  // namespace nsfv::flux
