#ifndef PATCHBOUND_FEM_HPP
#define PATCHBOUND_FEM_HPP

#include <cmath>
#include <iosfwd>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include "patchbound/errors.hpp"
#include "patchbound/mesh.hpp"

namespace patchbound {

// Constant symmetric positive definite diffusion matrix.
class DiffusionTensor {
public:
  // Identity of size dim.
  explicit DiffusionTensor(int dim);
  explicit DiffusionTensor(Eigen::MatrixXd matrix);

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  double d_min() const noexcept { return d_min_; }
  double d_max() const noexcept { return d_max_; }

private:
  Eigen::MatrixXd matrix_;
  double d_min_ = 1;
  double d_max_ = 1;
};

// P1 stiffness matrix of the vertices of a simplex, given column-wise as a
// d x (d + 1) matrix: |K| G^T D G with G holding the (constant) gradients of
// the barycentric coordinates.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> local_stiffness(
    const Eigen::MatrixBase<Derived>& p, const DiffusionTensor& diffusion) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto d = p.rows();
  if (p.cols() != d + 1 || diffusion.dim() != d)
    throw InvalidArgument("local_stiffness: simplex and diffusion tensor sizes differ");

  Mat jac(d, d);
  Scalar scale = 0;
  for (Eigen::Index k = 0; k < d; ++k) {
    jac.col(k) = p.col(k + 1) - p.col(0);
    scale = std::max(scale, jac.col(k).norm());
  }
  const Scalar det = jac.determinant();
  if (std::abs(det) < Scalar(1e-14) * std::pow(scale, static_cast<Scalar>(d)))
    throw InvalidArgument("local_stiffness: degenerate simplex");

  Scalar fact = 1;
  for (Eigen::Index k = 2; k <= d; ++k) fact *= static_cast<Scalar>(k);
  const Scalar volume = std::abs(det) / fact;

  // Rows of J^{-1} are the gradients of barycentric coordinates 1..d.
  Mat grads(d, d + 1);
  grads.rightCols(d) = jac.inverse().transpose();
  grads.col(0) = -grads.rightCols(d).rowwise().sum();

  const Mat dd = diffusion.matrix().template cast<Scalar>();
  return volume * grads.transpose() * dd * grads;
}

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Stiffness matrix over the free vertices of a mesh. Both triangles are
// stored so products need no symmetric expansion.
class SparseSPD {
public:
  SparseSPD() = default;
  // Checks that the matrix is square, symmetric and has positive diagonal.
  explicit SparseSPD(SparseMatrix matrix);

  Eigen::Index n() const noexcept { return matrix_.rows(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  Eigen::VectorXd diagonal() const { return matrix_.diagonal(); }

  template <typename Vec>
  Eigen::VectorXd operator*(const Eigen::MatrixBase<Vec>& x) const {
    return matrix_ * x;
  }

  SparseSPD scaled(double factor) const;

private:
  SparseMatrix matrix_;
};

// Homogeneous Dirichlet conditions by eliminating boundary rows and columns.
// Throws InvalidArgument when the mesh has no free vertex.
SparseSPD assemble(const SimplicialMesh& mesh, const DiffusionTensor& diffusion);

// Same assembly, keeping every vertex (no boundary elimination).
SparseMatrix assemble_full(const SimplicialMesh& mesh, const DiffusionTensor& diffusion);

// "i j value" lines, 0-based, upper triangle only.
void write_matrix(std::ostream& out, const SparseSPD& a);
void write_matrix(const std::string& path, const SparseSPD& a);

}  // namespace patchbound

#endif  // PATCHBOUND_FEM_HPP
