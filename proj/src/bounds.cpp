#include "patchbound/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "patchbound/config.hpp"
#include "patchbound/errors.hpp"
#include "patchbound/fem.hpp"

namespace patchbound {

namespace {

// (sum v_i^(1 - d/2))^(-2/d)
double volume_sum_kernel(const Eigen::VectorXd& volumes, int dim) {
  const double d = dim;
  return std::pow(volumes.array().pow(1.0 - d / 2.0).sum(), -2.0 / d);
}

double log_kernel(double count, double volume) {
  return 1.0 / (count * (1.0 + std::abs(std::log(count * volume))));
}

void require_valid(const PatchStats& s) {
  if (s.n_free < 1 || s.patch_volumes.size() != s.n_free)
    throw InvalidArgument("patch statistics are empty or inconsistent");
  if (!(s.omega_min > 0)) throw InvalidArgument("patch statistics: omega_min must be positive");
  if (s.dim < 2) throw InvalidArgument("estimators need dimension >= 2");
}

void require_dim(const Calibration& cal, int dim) {
  cal.validate();
  if (cal.dim != dim) {
    throw InvalidArgument("calibration is for dimension " + std::to_string(cal.dim) +
                          ", statistics for dimension " + std::to_string(dim));
  }
}

}  // namespace

void Calibration::validate() const {
  for (double c : {c_new, c_gm, c_khx}) {
    if (!(c > 0) || !std::isfinite(c))
      throw InvalidArgument("calibration constants must be positive and finite");
  }
}

int default_reference_n(int dim) {
  if (dim == 2) return 64;
  if (dim == 3) return 12;
  throw InvalidArgument("no reference size for dimension " + std::to_string(dim));
}

double kernel_new(const PatchStats& stats) {
  require_valid(stats);
  if (stats.dim == 2) return log_kernel(static_cast<double>(stats.n_free), stats.omega_min);
  return volume_sum_kernel(stats.patch_volumes, stats.dim);
}

double kernel_gm(const PatchStats& stats) {
  require_valid(stats);
  const double mh = stats.m_const * stats.h_const;
  if (stats.dim == 2) {
    return log_kernel(static_cast<double>(stats.n_free), stats.omega_min / mh);
  }
  const double d = stats.dim;
  return std::pow(mh, (2.0 - d) / d) * volume_sum_kernel(stats.patch_volumes, stats.dim);
}

double kernel_khx(const Eigen::VectorXd& cell_volumes, int dim) {
  if (cell_volumes.size() == 0) throw InvalidArgument("kernel_khx: no cells");
  if (!(cell_volumes.minCoeff() > 0)) throw InvalidArgument("kernel_khx: nonpositive cell volume");
  if (dim == 2) {
    return log_kernel(static_cast<double>(cell_volumes.size()), cell_volumes.minCoeff());
  }
  if (dim < 2) throw InvalidArgument("estimators need dimension >= 2");
  return volume_sum_kernel(cell_volumes, dim);
}

double estimate_new(const PatchStats& stats, const Calibration& cal) {
  require_dim(cal, stats.dim);
  return cal.c_new * kernel_new(stats);
}

double estimate_gm(const PatchStats& stats, const Calibration& cal) {
  require_dim(cal, stats.dim);
  return cal.c_gm * kernel_gm(stats);
}

double estimate_khx(const Eigen::VectorXd& cell_volumes, int dim, const Calibration& cal) {
  require_dim(cal, dim);
  return cal.c_khx * kernel_khx(cell_volumes, dim);
}

double geo_form(const PatchStats& stats) {
  require_valid(stats);
  if (stats.dim < 3) throw InvalidArgument("geo_form is defined for dimension >= 3");
  const double d = stats.dim;
  const double n = static_cast<double>(stats.n_free);
  const double average_patch = d * stats.domain_volume / n;
  const Eigen::VectorXd relative = stats.patch_volumes / average_patch;
  const double mean = holder_mean(relative, 1.0 - d / 2.0);
  return std::pow(d * stats.domain_volume, 1.0 - 2.0 / d) * std::pow(mean, 1.0 - 2.0 / d) / n;
}

Calibration calibrate(int dim, int n_ref, double exact) {
  if (!(exact > 0) || !std::isfinite(exact))
    throw InvalidArgument("calibrate: reference eigenvalue must be positive");
  const SimplicialMesh mesh = build_mesh(dim, GradingParams{GradingFamily::Uniform, n_ref});
  const PatchStats stats = patch_stats(mesh);
  Calibration cal;
  cal.dim = dim;
  cal.n_ref = n_ref;
  cal.lambda_ref = exact;
  cal.c_new = exact / kernel_new(stats);
  cal.c_gm = exact / kernel_gm(stats);
  cal.c_khx = exact / kernel_khx(stats.cell_volumes, dim);
  cal.validate();
  return cal;
}

Calibration calibrate_uniform(int dim, int n_ref, const InverseIterationOptions& solver) {
  const SimplicialMesh mesh = build_mesh(dim, GradingParams{GradingFamily::Uniform, n_ref});
  const double exact = lambda_min_sparse(assemble(mesh, DiffusionTensor(dim)), solver).lambda_min;
  return calibrate(dim, n_ref, exact);
}

void write_calibration(std::ostream& out, const Calibration& cal) {
  char buf[64];
  out << "dim = " << cal.dim << '\n' << "n_ref = " << cal.n_ref << '\n';
  auto put = [&](const char* key, double value) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out << key << " = " << buf << '\n';
  };
  put("lambda_ref", cal.lambda_ref);
  put("c_new", cal.c_new);
  put("c_gm", cal.c_gm);
  put("c_khx", cal.c_khx);
}

void write_calibration(const std::string& path, const Calibration& cal) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_calibration(out, cal);
  if (!out) throw IoError("failed writing calibration to '" + path + "'");
}

Calibration read_calibration(const std::string& path) {
  const KeyValues kv = read_key_values(path);
  Calibration cal;
  cal.dim = kv.get_int("dim");
  cal.n_ref = kv.get_int("n_ref");
  cal.lambda_ref = kv.get_double("lambda_ref");
  cal.c_new = kv.get_double("c_new");
  cal.c_gm = kv.get_double("c_gm");
  cal.c_khx = kv.get_double("c_khx");
  cal.validate();
  return cal;
}

BoundReport bound_report(const PatchStats& stats, double lambda_exact, const Calibration& cal) {
  BoundReport r;
  r.n_free = stats.n_free;
  r.lambda_exact = lambda_exact;
  r.lambda_new = estimate_new(stats, cal);
  r.lambda_gm = estimate_gm(stats, cal);
  r.lambda_khx = estimate_khx(stats.cell_volumes, stats.dim, cal);
  r.stats = stats;
  return r;
}

}  // namespace patchbound
