#ifndef PATCHBOUND_HARNESS_HPP
#define PATCHBOUND_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patchbound/bounds.hpp"
#include "patchbound/config.hpp"
#include "patchbound/nodes.hpp"

namespace patchbound {

enum class SweepAxis { N, Eps, Beta };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct SweepSpec {
  int dim = 2;
  GradingParams params;  // fixed parameters; the swept one is overridden per point
  SweepAxis axis = SweepAxis::N;
  std::vector<double> values;
  double tol = 1e-8;
  int n_ref = 0;  // 0 selects default_reference_n(dim)
  std::optional<Calibration> calibration;
  bool record_timing = false;  // otherwise the seconds column is 0 for byte-stable output

  // Throws InvalidArgument on empty, nonpositive or non-monotone values, or
  // sizes beyond the desk-scale caps (2D n <= 256, 3D n <= 16).
  void validate() const;
  GradingParams params_at(double value) const;
};

// Builds a spec from "key = value" entries: dim, family, layer, n, eps, beta,
// c_sigma, axis, values, tol, n_ref.
SweepSpec sweep_spec_from(const KeyValues& kv);

struct SweepRow {
  double param = 0;
  long n_free = 0;
  double lambda_exact = 0;
  double lambda_new = 0;
  double lambda_gm = 0;
  double lambda_khx = 0;
  double omega_min = 0;
  double k_min = 0;
  int m_const = 0;
  double h_const = 0;
  double seconds = 0;
};

// Mesh, stiffness matrix, exact eigenvalue and estimates for one parameter set.
BoundReport analyze(int dim, const GradingParams& params, const Calibration& cal,
                    double tol = 1e-8);

// Rows sorted by sweep value. Eigensolver failures are rethrown as
// NumericalError naming the sweep value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "param,n_free,lambda_exact,lambda_new,lambda_gm,lambda_khx,omega_min,k_min,M,H,seconds";

void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> parse_csv(std::istream& in);

enum class Column { Exact, New, Gm, Khx };
enum class XAxis { NFree, Param, InverseParam };

std::string_view legend_label(Column column);
XAxis default_x_axis(SweepAxis axis);

struct SvgOptions {
  XAxis x_axis = XAxis::NFree;
  bool normalize = false;  // plot N * lambda instead of lambda
  std::string title;
  int width = 640;
  int height = 480;
};

// Log-log plot, one polyline per column plus a slope -1 guide. Throws
// InvalidArgument for fewer than two rows or nonpositive values.
void emit_svg_loglog(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<Column>& columns, const SvgOptions& options = {});
void emit_svg_loglog(const std::vector<SweepRow>& rows, const std::vector<Column>& columns,
                     const std::string& path, const SvgOptions& options = {});

// Aligned two-column table of a bound report.
void print_report(std::ostream& out, const BoundReport& report);

}  // namespace patchbound

#endif  // PATCHBOUND_HARNESS_HPP
