#include "patchbound/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "patchbound/errors.hpp"

namespace patchbound {

namespace {

constexpr Eigen::Index kDenseLimit = 5000;

Eigen::VectorXd start_vector(Eigen::Index n) {
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * unit(rng);
  return v.normalized();
}

}  // namespace

CgResult cg_solve(const SparseSPD& a, const Eigen::VectorXd& b, const CgOptions& options,
                  const Eigen::VectorXd& initial_guess) {
  const Eigen::Index n = a.n();
  if (b.size() != n) throw InvalidArgument("cg_solve: right-hand side has the wrong size");
  if (initial_guess.size() != 0 && initial_guess.size() != n)
    throw InvalidArgument("cg_solve: initial guess has the wrong size");
  if (!(options.tol > 0)) throw InvalidArgument("cg_solve: tolerance must be positive");

  CgResult out;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x = Eigen::VectorXd::Zero(n);
    return out;
  }

  const Eigen::Index cap = options.max_iterations > 0 ? options.max_iterations : 20 * n;
  const Eigen::VectorXd inv_diag = options.precond == Preconditioner::Jacobi
                                       ? Eigen::VectorXd(a.diagonal().cwiseInverse())
                                       : Eigen::VectorXd::Ones(n);
  const double target = options.tol * bnorm;

  Eigen::VectorXd x = initial_guess.size() == n ? initial_guess : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b - a * x;
  if (r.norm() <= target) {
    out.x = std::move(x);
    out.residual = r.norm() / bnorm;
    return out;
  }
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);

  for (Eigen::Index it = 1; it <= cap; ++it) {
    const Eigen::VectorXd ap = a * p;
    const double pap = p.dot(ap);
    if (!(pap > 0)) throw NumericalError("cg_solve: matrix is not positive definite");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;

    if (r.norm() <= target) {
      // The recurrence drifts from b - Ax; accept only on the true residual,
      // otherwise restart from it.
      r = b - a * x;
      if (r.norm() <= target) {
        out.x = std::move(x);
        out.iterations = it;
        out.residual = r.norm() / bnorm;
        return out;
      }
      z = inv_diag.cwiseProduct(r);
      p = z;
      rz = r.dot(z);
      continue;
    }

    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }

  std::ostringstream err;
  err << "cg_solve: no convergence to " << options.tol << " within " << cap
      << " iterations (residual " << (b - a * x).norm() / bnorm << ")";
  throw NumericalError(err.str());
}

EigenResult lambda_min_sparse(const SparseSPD& a, const InverseIterationOptions& options) {
  if (!(options.tol > 1e-14 && options.tol < 1e-2))
    throw InvalidArgument("lambda_min_sparse: tol must lie in (1e-14, 1e-2)");
  if (options.max_iterations < 1)
    throw InvalidArgument("lambda_min_sparse: max_iterations must be positive");

  Eigen::VectorXd v = start_vector(a.n());
  Eigen::VectorXd av = a * v;
  double theta = v.dot(av);
  double residual = (av - theta * v).norm() / theta;

  EigenResult out;
  for (int it = 1; it <= options.max_iterations; ++it) {
    CgOptions inner;
    inner.tol = std::max(1e-12, 0.01 * residual);
    // A^{-1} v is close to v / theta once v is near the eigenvector.
    Eigen::VectorXd w = cg_solve(a, v, inner, v / theta).x;
    v = w / w.norm();
    av = a * v;
    const double next = v.dot(av);
    residual = (av - next * v).norm() / next;
    const double change = std::abs(next - theta) / next;
    theta = next;
    if (!(theta > 0)) throw NumericalError("lambda_min_sparse: nonpositive Rayleigh quotient");

    if (change <= options.tol && residual <= 10.0 * options.tol) {
      out.lambda_min = theta;
      out.residual = residual;
      out.iterations = it;
      out.eigenvector = std::move(v);
      return out;
    }
  }

  std::ostringstream err;
  err << "lambda_min_sparse: no convergence within " << options.max_iterations
      << " iterations (lambda " << theta << ", residual " << residual << ")";
  throw ConvergenceError(err.str(), theta, std::move(v));
}

double lambda_min_dense(const SparseSPD& a) {
  if (a.n() > kDenseLimit) {
    throw InvalidArgument("lambda_min_dense: dimension " + std::to_string(a.n()) +
                          " exceeds the dense limit " + std::to_string(kDenseLimit));
  }
  const Eigen::MatrixXd dense(a.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("lambda_min_dense: eigensolver failed");
  return eig.eigenvalues().minCoeff();
}

}  // namespace patchbound
