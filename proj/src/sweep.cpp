#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "patchbound/errors.hpp"
#include "patchbound/fem.hpp"
#include "patchbound/harness.hpp"
#include "patchbound/mesh.hpp"
#include "patchbound/patch_stats.hpp"
#include "patchbound/spectra.hpp"

namespace patchbound {

namespace {

int max_n(int dim) { return dim == 2 ? 256 : 16; }

bool is_integer(double v) { return std::floor(v) == v; }

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::N: return "n";
    case SweepAxis::Eps: return "eps";
    case SweepAxis::Beta: return "beta";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "n" || name == "N") return SweepAxis::N;
  if (name == "eps") return SweepAxis::Eps;
  if (name == "beta") return SweepAxis::Beta;
  throw InvalidArgument("unknown sweep axis '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (dim != 2 && dim != 3) throw InvalidArgument("sweep dimension must be 2 or 3");
  if (values.empty()) throw InvalidArgument("sweep needs at least one value");
  for (double v : values) {
    if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument("sweep values must be positive");
  }
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    increasing = increasing && values[i] > values[i - 1];
    decreasing = decreasing && values[i] < values[i - 1];
  }
  if (!increasing && !decreasing)
    throw InvalidArgument("sweep values must be strictly monotone");
  if (!(tol > 1e-14 && tol < 1e-2)) throw InvalidArgument("tol must lie in (1e-14, 1e-2)");
  if (n_ref < 0) throw InvalidArgument("n_ref must be positive");
  if (calibration && calibration->dim != dim)
    throw InvalidArgument("calibration dimension does not match the sweep");
  if (axis == SweepAxis::N) {
    for (double v : values) {
      if (!is_integer(v)) throw InvalidArgument("n values must be integers");
    }
  }
  for (double v : values) {
    const GradingParams p = params_at(v);
    if (p.n > max_n(dim)) {
      throw InvalidArgument("n = " + std::to_string(p.n) + " exceeds the " +
                            std::to_string(dim) + "D cap of " + std::to_string(max_n(dim)));
    }
    p.validate();
  }
}

GradingParams SweepSpec::params_at(double value) const {
  GradingParams p = params;
  switch (axis) {
    case SweepAxis::N: p.n = static_cast<int>(value); break;
    case SweepAxis::Eps: p.eps = value; break;
    case SweepAxis::Beta: p.beta = value; break;
  }
  return p;
}

SweepSpec sweep_spec_from(const KeyValues& kv) {
  SweepSpec spec;
  if (kv.has("dim")) spec.dim = kv.get_int("dim");
  if (kv.has("family")) spec.params.family = parse_family(kv.get_string("family"));
  if (kv.has("layer")) spec.params.layer_position = parse_layer_position(kv.get_string("layer"));
  if (kv.has("n")) spec.params.n = kv.get_int("n");
  if (kv.has("eps")) spec.params.eps = kv.get_double("eps");
  if (kv.has("beta")) spec.params.beta = kv.get_double("beta");
  if (kv.has("c_sigma")) spec.params.c_sigma = kv.get_double("c_sigma");
  if (kv.has("axis")) spec.axis = parse_axis(kv.get_string("axis"));
  if (kv.has("values")) spec.values = parse_number_list(kv.get_string("values"));
  if (kv.has("tol")) spec.tol = kv.get_double("tol");
  if (kv.has("n_ref")) spec.n_ref = kv.get_int("n_ref");
  for (const auto& [key, value] : kv.entries()) {
    static const std::vector<std::string> known{"dim", "family", "layer", "n",   "eps", "beta",
                                                "c_sigma", "axis", "values", "tol", "n_ref",
                                                "out", "normalize", "timing", "calibration", "csv"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidArgument("unknown configuration key '" + key + "'");
  }
  return spec;
}

BoundReport analyze(int dim, const GradingParams& params, const Calibration& cal, double tol) {
  const SimplicialMesh mesh = build_mesh(dim, params);
  const PatchStats stats = patch_stats(mesh);
  const SparseSPD a = assemble(mesh, DiffusionTensor(dim));
  const EigenResult eig = lambda_min_sparse(a, tol);
  return bound_report(stats, eig.lambda_min, cal);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int n_ref = spec.n_ref > 0 ? spec.n_ref : default_reference_n(spec.dim);
  const Calibration cal = spec.calibration
                              ? *spec.calibration
                              : calibrate_uniform(spec.dim, n_ref, {spec.tol, 500});

  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    const auto start = std::chrono::steady_clock::now();
    BoundReport report;
    try {
      report = analyze(spec.dim, spec.params_at(value), cal, spec.tol);
    } catch (const NumericalError& e) {
      std::ostringstream err;
      err << "sweep value " << to_string(spec.axis) << " = " << value << ": " << e.what();
      throw NumericalError(err.str());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    SweepRow row;
    row.param = value;
    row.n_free = static_cast<long>(report.n_free);
    row.lambda_exact = report.lambda_exact;
    row.lambda_new = report.lambda_new;
    row.lambda_gm = report.lambda_gm;
    row.lambda_khx = report.lambda_khx;
    row.omega_min = report.stats.omega_min;
    row.k_min = report.stats.k_min;
    row.m_const = report.stats.m_const;
    row.h_const = report.stats.h_const;
    row.seconds = spec.record_timing ? elapsed.count() : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void print_report(std::ostream& out, const BoundReport& r) {
  auto line = [&out](const char* key, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-14s %.10g\n", key, value);
    out << buf;
  };
  line("N", static_cast<double>(r.n_free));
  line("N_ele", static_cast<double>(r.stats.n_cells));
  line("lambda_exact", r.lambda_exact);
  line("lambda_new", r.lambda_new);
  line("lambda_gm", r.lambda_gm);
  line("lambda_khx", r.lambda_khx);
  line("omega_min", r.stats.omega_min);
  line("K_min", r.stats.k_min);
  line("M", r.stats.m_const);
  line("H", r.stats.h_const);
}

}  // namespace patchbound
