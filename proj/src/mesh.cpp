#include "patchbound/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "patchbound/errors.hpp"

namespace patchbound {

namespace {

constexpr double kBoundaryTol = 1e-14;

}  // namespace

SimplicialMesh::SimplicialMesh(int dim, Eigen::MatrixXd vertices, Cells cells,
                               std::vector<bool> boundary_mask)
    : dim_(dim),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)),
      boundary_(std::move(boundary_mask)) {
  if (dim_ != 2 && dim_ != 3) throw InvalidArgument("mesh dimension must be 2 or 3");
  if (vertices_.rows() != dim_ || cells_.rows() != dim_ + 1)
    throw InvalidArgument("mesh arrays do not match the dimension");
  if (static_cast<Eigen::Index>(boundary_.size()) != vertices_.cols())
    throw InvalidArgument("boundary mask size does not match the vertex count");
  if (cells_.size() > 0 && (cells_.minCoeff() < 0 || cells_.maxCoeff() >= vertices_.cols()))
    throw InvalidArgument("cell references a vertex out of range");

  volumes_.resize(cells_.cols());
  for (Eigen::Index c = 0; c < cells_.cols(); ++c) {
    const Eigen::MatrixXd p = cell_vertices(c);
    double vol = signed_simplex_volume(p);
    double scale = 0.0;
    for (Eigen::Index k = 1; k <= dim_; ++k) scale = std::max(scale, (p.col(k) - p.col(0)).norm());
    if (std::abs(vol) < 1e-14 * std::pow(scale, dim_)) {
      throw InvalidArgument("degenerate cell " + std::to_string(c));
    }
    if (vol < 0) {
      std::swap(cells_(0, c), cells_(1, c));
      vol = -vol;
    }
    volumes_[c] = vol;
  }

  free_index_.assign(boundary_.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < boundary_.size(); ++v) {
    if (!boundary_[v]) free_index_[v] = next++;
  }
  n_free_ = next;
}

Eigen::MatrixXd SimplicialMesh::cell_vertices(Eigen::Index c) const {
  Eigen::MatrixXd p(dim_, dim_ + 1);
  for (int k = 0; k <= dim_; ++k) p.col(k) = vertices_.col(cells_(k, c));
  return p;
}

SimplicialMesh tensor_mesh_2d(const NodeSet1D& nx, const NodeSet1D& ny) {
  const Eigen::Index mx = nx.size();
  const Eigen::Index my = ny.size();
  auto id = [mx](Eigen::Index i, Eigen::Index j) { return static_cast<int>(i + mx * j); };

  Eigen::MatrixXd verts(2, mx * my);
  std::vector<bool> boundary(static_cast<std::size_t>(mx * my));
  for (Eigen::Index j = 0; j < my; ++j) {
    for (Eigen::Index i = 0; i < mx; ++i) {
      verts.col(id(i, j)) << nx[i], ny[j];
      boundary[static_cast<std::size_t>(id(i, j))] = i == 0 || j == 0 || i == mx - 1 || j == my - 1;
    }
  }

  SimplicialMesh::Cells cells(3, 2 * (mx - 1) * (my - 1));
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j + 1 < my; ++j) {
    for (Eigen::Index i = 0; i + 1 < mx; ++i) {
      const int ll = id(i, j), lr = id(i + 1, j), ur = id(i + 1, j + 1), ul = id(i, j + 1);
      cells.col(c++) << ll, lr, ur;
      cells.col(c++) << ll, ur, ul;
    }
  }
  return SimplicialMesh(2, std::move(verts), std::move(cells), std::move(boundary));
}

SimplicialMesh tensor_mesh_3d(const NodeSet1D& nx, const NodeSet1D& ny, const NodeSet1D& nz) {
  const Eigen::Index mx = nx.size();
  const Eigen::Index my = ny.size();
  const Eigen::Index mz = nz.size();
  auto id = [mx, my](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    return static_cast<int>(i + mx * (j + my * k));
  };

  Eigen::MatrixXd verts(3, mx * my * mz);
  std::vector<bool> boundary(static_cast<std::size_t>(mx * my * mz));
  for (Eigen::Index k = 0; k < mz; ++k) {
    for (Eigen::Index j = 0; j < my; ++j) {
      for (Eigen::Index i = 0; i < mx; ++i) {
        verts.col(id(i, j, k)) << nx[i], ny[j], nz[k];
        boundary[static_cast<std::size_t>(id(i, j, k))] =
            i == 0 || j == 0 || k == 0 || i == mx - 1 || j == my - 1 || k == mz - 1;
      }
    }
  }

  // Kuhn paths from corner 000 to 111: one tetrahedron per axis permutation.
  static constexpr std::array<std::array<int, 3>, 6> kPermutations{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  SimplicialMesh::Cells cells(4, 6 * (mx - 1) * (my - 1) * (mz - 1));
  Eigen::Index c = 0;
  for (Eigen::Index k = 0; k + 1 < mz; ++k) {
    for (Eigen::Index j = 0; j + 1 < my; ++j) {
      for (Eigen::Index i = 0; i + 1 < mx; ++i) {
        for (const auto& perm : kPermutations) {
          std::array<Eigen::Index, 3> corner{i, j, k};
          cells(0, c) = id(corner[0], corner[1], corner[2]);
          for (int step = 0; step < 3; ++step) {
            ++corner[static_cast<std::size_t>(perm[static_cast<std::size_t>(step)])];
            cells(step + 1, c) = id(corner[0], corner[1], corner[2]);
          }
          ++c;
        }
      }
    }
  }
  return SimplicialMesh(3, std::move(verts), std::move(cells), std::move(boundary));
}

SimplicialMesh build_mesh(int dim, const GradingParams& p) {
  const NodeSet1D graded = make_nodes(p);
  const bool x_only = p.family == GradingFamily::SingleLayer;
  const NodeSet1D other = x_only ? uniform_nodes(p.n) : graded;
  if (dim == 2) return tensor_mesh_2d(graded, other);
  if (dim == 3) return tensor_mesh_3d(graded, other, other);
  throw InvalidArgument("mesh dimension must be 2 or 3, got " + std::to_string(dim));
}

bool is_conforming(const SimplicialMesh& mesh) {
  const int d = mesh.dim();
  const auto& cells = mesh.cells();
  std::map<std::vector<int>, int> facet_count;
  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> facet;
      facet.reserve(static_cast<std::size_t>(d));
      for (int k = 0; k <= d; ++k) {
        if (k != skip) facet.push_back(cells(k, c));
      }
      std::sort(facet.begin(), facet.end());
      ++facet_count[facet];
    }
  }
  const auto& mask = mesh.boundary_mask();
  const auto& verts = mesh.vertices();
  for (const auto& [facet, count] : facet_count) {
    // A facet lies on the boundary iff all its vertices share a boundary plane.
    bool on_boundary = false;
    for (int axis = 0; axis < d && !on_boundary; ++axis) {
      for (double plane : {0.0, 1.0}) {
        bool all = true;
        for (int v : facet) {
          all = all && mask[static_cast<std::size_t>(v)] &&
                std::abs(verts(axis, v) - plane) < kBoundaryTol;
        }
        on_boundary = on_boundary || all;
      }
    }
    if (count != (on_boundary ? 1 : 2)) return false;
  }
  return true;
}

void write_mesh(std::ostream& out, const SimplicialMesh& mesh) {
  out << mesh.dim() << ' ' << mesh.n_vertices() << ' ' << mesh.n_cells() << '\n';
  char buf[32];
  for (Eigen::Index v = 0; v < mesh.n_vertices(); ++v) {
    for (int k = 0; k < mesh.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", mesh.vertices()(k, v));
      out << (k ? " " : "") << buf;
    }
    out << '\n';
  }
  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
    for (int k = 0; k <= mesh.dim(); ++k) out << (k ? " " : "") << mesh.cells()(k, c);
    out << '\n';
  }
}

void write_mesh(const std::string& path, const SimplicialMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_mesh(out, mesh);
  if (!out) throw IoError("failed writing mesh to '" + path + "'");
}

}  // namespace patchbound
