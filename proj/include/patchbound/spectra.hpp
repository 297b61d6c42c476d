#ifndef PATCHBOUND_SPECTRA_HPP
#define PATCHBOUND_SPECTRA_HPP

#include <Eigen/Core>

#include "patchbound/fem.hpp"

namespace patchbound {

enum class Preconditioner { None, Jacobi };

struct CgOptions {
  double tol = 1e-10;  // on ||Ax - b|| / ||b||
  Preconditioner precond = Preconditioner::Jacobi;
  Eigen::Index max_iterations = 0;  // 0 selects 20 * n
};

struct CgResult {
  Eigen::VectorXd x;
  Eigen::Index iterations = 0;
  double residual = 0;  // true relative residual of x
};

// Preconditioned conjugate gradients. An empty initial guess starts from 0.
// Throws NumericalError when the iteration cap is reached.
CgResult cg_solve(const SparseSPD& a, const Eigen::VectorXd& b, const CgOptions& options,
                  const Eigen::VectorXd& initial_guess = {});

inline Eigen::VectorXd cg_solve(const SparseSPD& a, const Eigen::VectorXd& b, double tol,
                                Preconditioner precond = Preconditioner::Jacobi) {
  return cg_solve(a, b, CgOptions{tol, precond, 0}).x;
}

struct EigenResult {
  double lambda_min = 0;
  double residual = 0;  // ||Av - lambda v|| / (lambda ||v||)
  int iterations = 0;
  Eigen::VectorXd eigenvector;
};

struct InverseIterationOptions {
  double tol = 1e-8;
  int max_iterations = 500;
};

// Smallest eigenvalue by inverse power iteration with Jacobi-preconditioned
// CG inner solves. Stops when the Rayleigh quotient changes by at most tol
// (relative) and the relative eigen-residual is at most 10 tol. The start
// vector is fixed, so results are reproducible.
//
// Throws ConvergenceError (carrying the last iterate) after max_iterations.
EigenResult lambda_min_sparse(const SparseSPD& a, const InverseIterationOptions& options = {});

inline EigenResult lambda_min_sparse(const SparseSPD& a, double tol) {
  return lambda_min_sparse(a, InverseIterationOptions{tol, 500});
}

// Dense symmetric eigensolver; validation oracle for n <= 5000.
double lambda_min_dense(const SparseSPD& a);

}  // namespace patchbound

#endif  // PATCHBOUND_SPECTRA_HPP
