#include "patchbound/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "patchbound/bounds.hpp"
#include "patchbound/errors.hpp"
#include "patchbound/fem.hpp"
#include "patchbound/harness.hpp"
#include "patchbound/mesh.hpp"

namespace patchbound {

namespace {

// Flags are collected as text and merged over an optional config file, so
// both sources go through the same parser.
struct FlagSet {
  std::map<std::string, std::string> text;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app, const std::string& key, const std::string& flag,
           const std::string& help) {
    opts[key] = app->add_option(flag, text[key], help);
  }

  KeyValues overlay(KeyValues kv) const {
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) kv.set(key, text.at(key));
    }
    return kv;
  }
};

void add_mesh_flags(CLI::App* app, FlagSet& f) {
  f.add(app, "dim", "--dim", "Spatial dimension (2 or 3)");
  f.add(app, "family", "--family", "uniform | shishkin | bakhvalov | power | single_layer");
  f.add(app, "layer", "--layer", "boundary | internal (shishkin and bakhvalov only)");
  f.add(app, "n", "--n", "Intervals per direction");
  f.add(app, "eps", "--eps", "Layer parameter in (0, 1)");
  f.add(app, "beta", "--beta", "Power-grading exponent (>= 1)");
  f.add(app, "c_sigma", "--c-sigma", "Transition constant for shishkin/bakhvalov");
}

std::ostream& open_or(std::ofstream& file, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

Calibration load_or_compute_calibration(const KeyValues& kv, int dim, int n_ref, double tol) {
  if (const auto path = kv.find("calibration")) {
    Calibration cal = read_calibration(*path);
    if (cal.dim != dim) throw InvalidArgument("calibration file is for another dimension");
    return cal;
  }
  return calibrate_uniform(dim, n_ref > 0 ? n_ref : default_reference_n(dim), {tol, 500});
}

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

int run_mesh(const KeyValues& kv, const std::string& matrix_path, std::ostream& out) {
  const SweepSpec spec = sweep_spec_from(kv);
  spec.params.validate();
  const SimplicialMesh mesh = build_mesh(spec.dim, spec.params);
  std::ofstream file;
  write_mesh(open_or(file, kv.find("out").value_or(""), out), mesh);
  if (!matrix_path.empty()) write_matrix(matrix_path, assemble(mesh, DiffusionTensor(spec.dim)));
  return 0;
}

int run_analyze(const KeyValues& kv, std::ostream& out) {
  const SweepSpec spec = sweep_spec_from(kv);
  spec.params.validate();
  const Calibration cal = load_or_compute_calibration(kv, spec.dim, spec.n_ref, spec.tol);
  const BoundReport report = analyze(spec.dim, spec.params, cal, spec.tol);
  print_report(out, report);
  if (const auto csv = kv.find("csv")) {
    SweepRow row;
    row.param = spec.params.n;
    row.n_free = static_cast<long>(report.n_free);
    row.lambda_exact = report.lambda_exact;
    row.lambda_new = report.lambda_new;
    row.lambda_gm = report.lambda_gm;
    row.lambda_khx = report.lambda_khx;
    row.omega_min = report.stats.omega_min;
    row.k_min = report.stats.k_min;
    row.m_const = report.stats.m_const;
    row.h_const = report.stats.h_const;
    ensure_parent_dir(*csv);
    emit_csv({row}, *csv);
  }
  return 0;
}

int run_sweep_command(const KeyValues& kv, bool normalize, bool timing, std::ostream& out) {
  const auto prefix = kv.find("out");
  if (!prefix || prefix->empty()) throw InvalidArgument("sweep needs --out (or 'out' in the config)");
  SweepSpec spec = sweep_spec_from(kv);
  spec.record_timing = timing || kv.find("timing").value_or("") == "true";
  normalize = normalize || kv.find("normalize").value_or("") == "true";
  if (kv.has("calibration")) spec.calibration = read_calibration(kv.get_string("calibration"));

  const std::vector<SweepRow> rows = run_sweep(spec);
  ensure_parent_dir(*prefix + ".csv");
  emit_csv(rows, *prefix + ".csv");
  out << "wrote " << *prefix << ".csv (" << rows.size() << " rows)\n";
  if (rows.size() >= 2) {
    SvgOptions opt;
    opt.x_axis = default_x_axis(spec.axis);
    opt.normalize = normalize;
    opt.title = std::string(to_string(spec.params.family)) + " " + std::to_string(spec.dim) +
                "D, sweep over " + std::string(to_string(spec.axis));
    emit_svg_loglog(rows, {Column::Exact, Column::New, Column::Gm, Column::Khx},
                    *prefix + ".svg", opt);
    out << "wrote " << *prefix << ".svg\n";
  }
  return 0;
}

int run_calibrate(const KeyValues& kv, std::ostream& out) {
  const int dim = kv.has("dim") ? kv.get_int("dim") : 2;
  const int n_ref = kv.has("n_ref") ? kv.get_int("n_ref") : default_reference_n(dim);
  const double tol = kv.has("tol") ? kv.get_double("tol") : 1e-8;
  const Calibration cal = calibrate_uniform(dim, n_ref, {tol, 500});
  write_calibration(out, cal);
  if (const auto path = kv.find("out"); path && !path->empty()) {
    ensure_parent_dir(*path);
    write_calibration(*path, cal);
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smallest-eigenvalue bounds for P1 stiffness matrices on graded meshes",
               "patchbound"};
  app.require_subcommand(1);

  FlagSet mesh_flags, analyze_flags, sweep_flags, cal_flags;
  std::string matrix_path;
  bool normalize = false, timing = false;
  std::string config_path;

  auto* mesh = app.add_subcommand("mesh", "Generate a mesh and export it as text");
  add_mesh_flags(mesh, mesh_flags);
  mesh_flags.add(mesh, "out", "--out", "Output file (default: standard output)");
  mesh->add_option("--matrix", matrix_path, "Also write the stiffness matrix (i j value)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Exact eigenvalue and estimates for one mesh");
  add_mesh_flags(analyze_cmd, analyze_flags);
  analyze_flags.add(analyze_cmd, "tol", "--tol", "Eigensolver tolerance");
  analyze_flags.add(analyze_cmd, "n_ref", "--nref", "Calibration reference size");
  analyze_flags.add(analyze_cmd, "calibration", "--calibration", "Calibration file");
  analyze_flags.add(analyze_cmd, "csv", "--csv", "Also write the row as CSV");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep with CSV and SVG output");
  sweep->add_option("--config", config_path, "key = value file; flags override it");
  add_mesh_flags(sweep, sweep_flags);
  sweep_flags.add(sweep, "axis", "--axis", "n | eps | beta");
  sweep_flags.add(sweep, "values", "--values", "Comma-separated sweep values");
  sweep_flags.add(sweep, "tol", "--tol", "Eigensolver tolerance");
  sweep_flags.add(sweep, "n_ref", "--nref", "Calibration reference size");
  sweep_flags.add(sweep, "calibration", "--calibration", "Calibration file");
  sweep_flags.add(sweep, "out", "--out", "Output prefix for .csv and .svg");
  sweep->add_flag("--normalize", normalize, "Plot N * lambda");
  sweep->add_flag("--timing", timing, "Record wall time per row (output no longer byte-stable)");

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Calibrate estimators on a uniform mesh");
  cal_flags.add(calibrate_cmd, "dim", "--dim", "Spatial dimension (2 or 3)");
  cal_flags.add(calibrate_cmd, "n_ref", "--nref", "Reference intervals per direction");
  cal_flags.add(calibrate_cmd, "tol", "--tol", "Eigensolver tolerance");
  cal_flags.add(calibrate_cmd, "out", "--out", "Store the calibration in this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*mesh) return run_mesh(mesh_flags.overlay({}), matrix_path, out);
    if (*analyze_cmd) return run_analyze(analyze_flags.overlay({}), out);
    if (*sweep) {
      KeyValues base = config_path.empty() ? KeyValues{} : read_key_values(config_path);
      return run_sweep_command(sweep_flags.overlay(std::move(base)), normalize, timing, out);
    }
    if (*calibrate_cmd) return run_calibrate(cal_flags.overlay({}), out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 1;
}

}  // namespace patchbound
