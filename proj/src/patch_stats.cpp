#include "patchbound/patch_stats.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "patchbound/errors.hpp"

namespace patchbound {

Eigen::VectorXd all_patch_volumes(const SimplicialMesh& mesh) {
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(mesh.n_vertices());
  const auto& cells = mesh.cells();
  const auto& vol = mesh.cell_volumes();
  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
    for (int k = 0; k <= mesh.dim(); ++k) omega[cells(k, c)] += vol[c];
  }
  return omega;
}

PatchStats patch_stats(const SimplicialMesh& mesh) {
  if (mesh.n_free() == 0) throw InvalidArgument("patch_stats: mesh has no free vertices");

  const auto nv = static_cast<std::size_t>(mesh.n_vertices());
  const auto& cells = mesh.cells();
  const auto& vol = mesh.cell_volumes();

  // The largest ratio over cell pairs sharing vertex v is max/min over the
  // cells incident to v.
  std::vector<int> incident(nv, 0);
  std::vector<double> vmin(nv, std::numeric_limits<double>::infinity());
  std::vector<double> vmax(nv, 0.0);
  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
    for (int k = 0; k <= mesh.dim(); ++k) {
      const auto v = static_cast<std::size_t>(cells(k, c));
      ++incident[v];
      vmin[v] = std::min(vmin[v], vol[c]);
      vmax[v] = std::max(vmax[v], vol[c]);
    }
  }

  PatchStats s;
  s.dim = mesh.dim();
  s.n_free = mesh.n_free();
  s.n_cells = mesh.n_cells();
  s.cell_volumes = vol;
  s.k_min = vol.minCoeff();
  s.m_const = *std::max_element(incident.begin(), incident.end());
  s.h_const = 1.0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (incident[v] > 0) s.h_const = std::max(s.h_const, vmax[v] / vmin[v]);
  }

  const Eigen::VectorXd omega = all_patch_volumes(mesh);
  s.patch_volumes.resize(s.n_free);
  const auto& free = mesh.free_index();
  for (std::size_t v = 0; v < nv; ++v) {
    if (free[v] >= 0) s.patch_volumes[free[v]] = omega[static_cast<Eigen::Index>(v)];
  }
  s.omega_min = s.patch_volumes.minCoeff();
  s.domain_volume = 1.0;
  return s;
}

}  // namespace patchbound
