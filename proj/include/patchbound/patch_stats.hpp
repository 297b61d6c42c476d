#ifndef PATCHBOUND_PATCH_STATS_HPP
#define PATCHBOUND_PATCH_STATS_HPP

#include <Eigen/Core>

#include "patchbound/mesh.hpp"

namespace patchbound {

// Geometric mesh constants consumed by the eigenvalue estimators.
struct PatchStats {
  int dim = 2;
  Eigen::VectorXd patch_volumes;  // |omega_i| per free vertex, in free-index order
  Eigen::VectorXd cell_volumes;   // |K| per cell
  double omega_min = 0;           // min over free vertices
  double k_min = 0;               // min over all cells
  int m_const = 0;                // max cells incident to any vertex (boundary included)
  double h_const = 1;             // max |K| / |K'| over cells sharing a vertex
  Eigen::Index n_free = 0;
  Eigen::Index n_cells = 0;
  double domain_volume = 1;
};

// Volume of the patch of every vertex (boundary vertices included).
Eigen::VectorXd all_patch_volumes(const SimplicialMesh& mesh);

// Throws InvalidArgument when the mesh has no free vertex.
PatchStats patch_stats(const SimplicialMesh& mesh);

}  // namespace patchbound

#endif  // PATCHBOUND_PATCH_STATS_HPP
