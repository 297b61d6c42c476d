#ifndef PATCHBOUND_MESH_HPP
#define PATCHBOUND_MESH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "patchbound/nodes.hpp"

namespace patchbound {

// Conforming simplicial mesh of the unit square (dim = 2) or cube (dim = 3).
//
// Vertices are stored column-wise (dim x n_vertices); cells column-wise
// ((dim + 1) x n_cells) with positive orientation. Vertices on the boundary
// of the domain carry the Dirichlet condition and get no matrix row; the
// remaining vertices are numbered 0..n_free-1 in vertex order.
class SimplicialMesh {
public:
  using Cells = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  // Reorients negatively oriented cells and rejects degenerate ones.
  SimplicialMesh(int dim, Eigen::MatrixXd vertices, Cells cells,
                 std::vector<bool> boundary_mask);

  int dim() const noexcept { return dim_; }
  Eigen::Index n_vertices() const noexcept { return vertices_.cols(); }
  Eigen::Index n_cells() const noexcept { return cells_.cols(); }
  Eigen::Index n_free() const noexcept { return n_free_; }

  const Eigen::MatrixXd& vertices() const noexcept { return vertices_; }
  const Cells& cells() const noexcept { return cells_; }
  const std::vector<bool>& boundary_mask() const noexcept { return boundary_; }
  // -1 for boundary vertices.
  const std::vector<int>& free_index() const noexcept { return free_index_; }

  // Vertex coordinates of cell c as a dim x (dim + 1) matrix.
  Eigen::MatrixXd cell_vertices(Eigen::Index c) const;
  const Eigen::VectorXd& cell_volumes() const noexcept { return volumes_; }

private:
  int dim_;
  Eigen::MatrixXd vertices_;
  Cells cells_;
  std::vector<bool> boundary_;
  std::vector<int> free_index_;
  Eigen::Index n_free_ = 0;
  Eigen::VectorXd volumes_;
};

// Signed volume of a simplex given as a dim x (dim + 1) vertex matrix.
template <typename Derived>
typename Derived::Scalar signed_simplex_volume(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const auto d = p.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jac(d, d);
  for (Eigen::Index k = 0; k < d; ++k) jac.col(k) = p.col(k + 1) - p.col(0);
  Scalar fact = 1;
  for (Eigen::Index k = 2; k <= d; ++k) fact *= static_cast<Scalar>(k);
  return jac.determinant() / fact;
}

// Each rectangle is split along its lower-left to upper-right diagonal.
SimplicialMesh tensor_mesh_2d(const NodeSet1D& nx, const NodeSet1D& ny);

// Each box is split into the 6 Kuhn tetrahedra sharing its main diagonal.
SimplicialMesh tensor_mesh_3d(const NodeSet1D& nx, const NodeSet1D& ny, const NodeSet1D& nz);

// Applies the grading of p per direction: SingleLayer grades x only, every
// other family grades all directions.
SimplicialMesh build_mesh(int dim, const GradingParams& p);

// Every interior facet is shared by exactly two cells and every boundary
// facet belongs to exactly one.
bool is_conforming(const SimplicialMesh& mesh);

// Plain text: "dim n_vertices n_cells", vertex lines, 0-based cell lines.
void write_mesh(std::ostream& out, const SimplicialMesh& mesh);
void write_mesh(const std::string& path, const SimplicialMesh& mesh);

}  // namespace patchbound

#endif  // PATCHBOUND_MESH_HPP
