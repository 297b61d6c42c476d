#include "patchbound/fem.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

namespace patchbound {

DiffusionTensor::DiffusionTensor(int dim)
    : DiffusionTensor(Eigen::MatrixXd::Identity(dim, dim)) {}

DiffusionTensor::DiffusionTensor(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    throw InvalidArgument("diffusion tensor must be a nonempty square matrix");
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-14)
    throw InvalidArgument("diffusion tensor must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix_, Eigen::EigenvaluesOnly);
  d_min_ = eig.eigenvalues().minCoeff();
  d_max_ = eig.eigenvalues().maxCoeff();
  if (!(d_min_ > 0)) throw InvalidArgument("diffusion tensor must be positive definite");
}

SparseSPD::SparseSPD(SparseMatrix matrix) : matrix_(std::move(matrix)) {
  matrix_.makeCompressed();
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("SparseSPD: matrix is not square");
  if (matrix_.rows() == 0) throw InvalidArgument("SparseSPD: empty matrix");
  const SparseMatrix diff = matrix_ - SparseMatrix(matrix_.transpose());
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
      if (it.value() != 0.0) throw InvalidArgument("SparseSPD: matrix is not symmetric");
    }
  }
  if (!(matrix_.diagonal().minCoeff() > 0.0))
    throw InvalidArgument("SparseSPD: diagonal must be strictly positive");
}

SparseSPD SparseSPD::scaled(double factor) const {
  if (!(factor > 0)) throw InvalidArgument("SparseSPD::scaled: factor must be positive");
  return SparseSPD(SparseMatrix(factor * matrix_));
}

namespace {

// Accumulates the upper triangle (row <= col) of the element contributions
// over the vertices selected by `index`, then mirrors it.
SparseMatrix assemble_with_index(const SimplicialMesh& mesh, const DiffusionTensor& diffusion,
                                 const std::vector<int>& index, Eigen::Index n) {
  if (diffusion.dim() != mesh.dim())
    throw InvalidArgument("assemble: diffusion tensor dimension does not match the mesh");
  const int nloc = mesh.dim() + 1;
  std::vector<Eigen::Triplet<double>> upper;
  std::vector<Eigen::Triplet<double>> diag;
  upper.reserve(static_cast<std::size_t>(mesh.n_cells() * nloc * (nloc - 1) / 2));
  diag.reserve(static_cast<std::size_t>(mesh.n_cells() * nloc));

  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
    const Eigen::MatrixXd kloc = local_stiffness(mesh.cell_vertices(c), diffusion);
    for (int a = 0; a < nloc; ++a) {
      const int ia = index[static_cast<std::size_t>(mesh.cells()(a, c))];
      if (ia < 0) continue;
      for (int b = 0; b < nloc; ++b) {
        const int ib = index[static_cast<std::size_t>(mesh.cells()(b, c))];
        if (ib < 0) continue;
        if (ia == ib) {
          diag.emplace_back(ia, ia, kloc(a, b));
        } else if (ia < ib) {
          upper.emplace_back(ia, ib, kloc(a, b));
        }
      }
    }
  }

  SparseMatrix strict(n, n);
  strict.setFromTriplets(upper.begin(), upper.end());
  SparseMatrix d(n, n);
  d.setFromTriplets(diag.begin(), diag.end());
  SparseMatrix full = strict + SparseMatrix(strict.transpose()) + d;
  full.makeCompressed();
  return full;
}

}  // namespace

SparseSPD assemble(const SimplicialMesh& mesh, const DiffusionTensor& diffusion) {
  if (mesh.n_free() == 0) throw InvalidArgument("assemble: mesh has no free vertices");
  return SparseSPD(assemble_with_index(mesh, diffusion, mesh.free_index(), mesh.n_free()));
}

SparseMatrix assemble_full(const SimplicialMesh& mesh, const DiffusionTensor& diffusion) {
  std::vector<int> all(static_cast<std::size_t>(mesh.n_vertices()));
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<int>(v);
  return assemble_with_index(mesh, diffusion, all, mesh.n_vertices());
}

void write_matrix(std::ostream& out, const SparseSPD& a) {
  const auto& m = a.matrix();
  char buf[64];
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      if (it.col() < i) continue;
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(i),
                    static_cast<long>(it.col()), it.value());
      out << buf;
    }
  }
}

void write_matrix(const std::string& path, const SparseSPD& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix(out, a);
  if (!out) throw IoError("failed writing matrix to '" + path + "'");
}

}  // namespace patchbound
