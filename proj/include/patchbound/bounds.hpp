#ifndef PATCHBOUND_BOUNDS_HPP
#define PATCHBOUND_BOUNDS_HPP

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "patchbound/patch_stats.hpp"
#include "patchbound/spectra.hpp"

namespace patchbound {

// Multiplicative constants that make each estimator exact on a uniform
// reference mesh with n_ref intervals per direction.
struct Calibration {
  int dim = 2;
  double c_new = 1;
  double c_gm = 1;
  double c_khx = 1;
  int n_ref = 0;
  double lambda_ref = 0;

  void validate() const;
};

// Reference sizes used when no calibration is given explicitly.
int default_reference_n(int dim);

// Generalized (power) mean ((1/n) sum x_i^p)^(1/p) of positive values, p != 0.
template <typename Derived>
typename Derived::Scalar holder_mean(const Eigen::DenseBase<Derived>& values,
                                     typename Derived::Scalar p) {
  using Scalar = typename Derived::Scalar;
  if (values.size() == 0) throw InvalidArgument("holder_mean: empty input");
  if (p == Scalar(0)) throw InvalidArgument("holder_mean: exponent must be nonzero");
  if (!(values.minCoeff() > Scalar(0))) throw InvalidArgument("holder_mean: values must be positive");
  // Scale by the maximum so large |p| does not overflow.
  const Scalar top = values.maxCoeff();
  const Scalar mean = (values.derived().array() / top).pow(p).mean();
  return top * std::pow(mean, Scalar(1) / p);
}

// Uncalibrated kernels. Sums run over free vertices (patch estimators) or
// over all cells (element estimator).
//   new: d = 2  N^-1 (1 + |ln(N |omega_min|)|)^-1
//        d >= 3 (sum |omega_i|^(1 - d/2))^(-2/d)
//   gm:  d = 2  N^-1 (1 + |ln(N |omega_min| / (M H))|)^-1
//        d >= 3 (M H)^((2 - d)/d) (sum |omega_i|^(1 - d/2))^(-2/d)
//   khx: d = 2  N_ele^-1 (1 + |ln(N_ele |K_min|)|)^-1
//        d >= 3 (sum |K|^(1 - d/2))^(-2/d)
double kernel_new(const PatchStats& stats);
double kernel_gm(const PatchStats& stats);
double kernel_khx(const Eigen::VectorXd& cell_volumes, int dim);

double estimate_new(const PatchStats& stats, const Calibration& cal);
double estimate_gm(const PatchStats& stats, const Calibration& cal);
double estimate_khx(const Eigen::VectorXd& cell_volumes, int dim, const Calibration& cal);

// Patch-size form of the d >= 3 kernel, written through the Hoelder mean of
// the patch volumes relative to the average patch |w~| = d |Omega| / N:
//   N^-1 (d |Omega|)^(1 - 2/d) M_{1 - d/2}(|omega_i| / |w~|)^(1 - 2/d).
// Equal to kernel_new(stats) for every dimension d >= 3.
double geo_form(const PatchStats& stats);

// Constants that reproduce `exact` on the uniform mesh with n_ref intervals.
Calibration calibrate(int dim, int n_ref, double exact);

// Computes the exact reference eigenvalue first.
Calibration calibrate_uniform(int dim, int n_ref, const InverseIterationOptions& solver = {});

void write_calibration(std::ostream& out, const Calibration& cal);
void write_calibration(const std::string& path, const Calibration& cal);
Calibration read_calibration(const std::string& path);

struct BoundReport {
  Eigen::Index n_free = 0;
  double lambda_exact = 0;
  double lambda_new = 0;
  double lambda_gm = 0;
  double lambda_khx = 0;
  PatchStats stats;
};

BoundReport bound_report(const PatchStats& stats, double lambda_exact, const Calibration& cal);

}  // namespace patchbound

#endif  // PATCHBOUND_BOUNDS_HPP
