#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "patchbound/errors.hpp"
#include "patchbound/harness.hpp"

namespace patchbound {

namespace {

constexpr double kLeft = 80, kRight = 150, kTop = 40, kBottom = 60;

const char* color(Column c) {
  switch (c) {
    case Column::Exact: return "#000000";
    case Column::New: return "#d62728";
    case Column::Gm: return "#1f77b4";
    case Column::Khx: return "#2ca02c";
  }
  return "#777777";
}

double value_of(const SweepRow& r, Column c) {
  switch (c) {
    case Column::Exact: return r.lambda_exact;
    case Column::New: return r.lambda_new;
    case Column::Gm: return r.lambda_gm;
    case Column::Khx: return r.lambda_khx;
  }
  return 0;
}

double x_of(const SweepRow& r, XAxis axis) {
  switch (axis) {
    case XAxis::NFree: return static_cast<double>(r.n_free);
    case XAxis::Param: return r.param;
    case XAxis::InverseParam: return 1.0 / r.param;
  }
  return 0;
}

const char* x_label(XAxis axis) {
  switch (axis) {
    case XAxis::NFree: return "N";
    case XAxis::Param: return "parameter";
    case XAxis::InverseParam: return "1 / parameter";
  }
  return "";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Affine map of log10 values onto a pixel interval.
struct LogScale {
  double lo, hi, p0, p1;
  double operator()(double v) const { return p0 + (std::log10(v) - lo) / (hi - lo) * (p1 - p0); }
};

LogScale make_scale(double vmin, double vmax, double p0, double p1) {
  double lo = std::log10(vmin), hi = std::log10(vmax);
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi, p0, p1};
}

}  // namespace

std::string_view legend_label(Column column) {
  switch (column) {
    case Column::Exact: return "λ_min";
    case Column::New: return "λ̄";
    case Column::Gm: return "λ̄_GM";
    case Column::Khx: return "λ̄_KHX";
  }
  return "";
}

XAxis default_x_axis(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::N: return XAxis::NFree;
    case SweepAxis::Eps: return XAxis::InverseParam;
    case SweepAxis::Beta: return XAxis::Param;
  }
  return XAxis::NFree;
}

void emit_svg_loglog(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<Column>& columns, const SvgOptions& opt) {
  if (rows.size() < 2) throw InvalidArgument("log-log plot needs at least two rows");
  if (columns.empty()) throw InvalidArgument("log-log plot needs at least one column");

  auto y_of = [&](const SweepRow& r, Column c) {
    return opt.normalize ? value_of(r, c) * static_cast<double>(r.n_free) : value_of(r, c);
  };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& r : rows) {
    const double x = x_of(r, opt.x_axis);
    if (!(x > 0) || !std::isfinite(x)) throw InvalidArgument("log-log plot: nonpositive x value");
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    for (Column c : columns) {
      const double y = y_of(r, c);
      if (!(y > 0) || !std::isfinite(y))
        throw InvalidArgument("log-log plot: nonpositive value in column " +
                              std::string(legend_label(c)));
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }

  const double w = opt.width, h = opt.height;
  const double fx0 = kLeft, fx1 = w - kRight, fy0 = kTop, fy1 = h - kBottom;
  const LogScale sx = make_scale(xmin, xmax, fx0, fx1);
  const LogScale sy = make_scale(ymin, ymax, fy1, fy0);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
      << "<defs><clipPath id=\"frame\"><rect x=\"" << fmt(fx0) << "\" y=\"" << fmt(fy0)
      << "\" width=\"" << fmt(fx1 - fx0) << "\" height=\"" << fmt(fy1 - fy0)
      << "\"/></clipPath></defs>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    out << "<text x=\"" << fmt(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << xml_escape(opt.title) << "</text>\n";
  }

  // Decade grid lines and labels.
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = static_cast<int>(std::ceil(sx.lo - 1e-9)); k <= static_cast<int>(std::floor(sx.hi + 1e-9)); ++k) {
    const double px = sx(std::pow(10.0, k));
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(fy0) << "\" x2=\"" << fmt(px) << "\" y2=\""
        << fmt(fy1) << "\"/>\n<text x=\"" << fmt(px) << "\" y=\"" << fmt(fy1 + 16)
        << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">1e" << k << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(sy.lo - 1e-9)); k <= static_cast<int>(std::floor(sy.hi + 1e-9)); ++k) {
    const double py = sy(std::pow(10.0, k));
    out << "<line x1=\"" << fmt(fx0) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(fx1) << "\" y2=\""
        << fmt(py) << "\"/>\n<text x=\"" << fmt(fx0 - 6) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">1e" << k << "</text>\n";
  }
  out << "</g>\n";

  out << "<rect x=\"" << fmt(fx0) << "\" y=\"" << fmt(fy0) << "\" width=\"" << fmt(fx1 - fx0)
      << "\" height=\"" << fmt(fy1 - fy0) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt((fx0 + fx1) / 2) << "\" y=\"" << fmt(h - 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label(opt.x_axis) << "</text>\n";
  out << "<text x=\"18\" y=\"" << fmt((fy0 + fy1) / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << fmt((fy0 + fy1) / 2) << ")\">" << (opt.normalize ? "N λ" : "λ") << "</text>\n";

  // Reference guide through the first point of the first column: slope -1,
  // or flat when plotting N * lambda.
  {
    const double xa = x_of(rows.front(), opt.x_axis);
    const double ya = y_of(rows.front(), columns.front());
    const double slope = opt.normalize ? 0.0 : -1.0;
    const double y_lo = ya * std::pow(xmin / xa, slope);
    const double y_hi = ya * std::pow(xmax / xa, slope);
    out << "<line clip-path=\"url(#frame)\" x1=\"" << fmt(sx(xmin)) << "\" y1=\"" << fmt(sy(y_lo))
        << "\" x2=\"" << fmt(sx(xmax)) << "\" y2=\"" << fmt(sy(y_hi))
        << "\" stroke=\"#999999\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
  }

  for (Column c : columns) {
    out << "<polyline fill=\"none\" stroke=\"" << color(c) << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& r : rows) {
      out << (first ? "" : " ") << fmt(sx(x_of(r, opt.x_axis))) << ',' << fmt(sy(y_of(r, c)));
      first = false;
    }
    out << "\"/>\n";
  }

  // Legend.
  double ly = fy0 + 10;
  out << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (Column c : columns) {
    out << "<line x1=\"" << fmt(fx1 + 15) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(fx1 + 45)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color(c) << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(fx1 + 52) << "\" y=\"" << fmt(ly + 4) << "\">" << legend_label(c)
        << "</text>\n";
    ly += 22;
  }
  out << "<line x1=\"" << fmt(fx1 + 15) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(fx1 + 45)
      << "\" y2=\"" << fmt(ly) << "\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n"
      << "<text x=\"" << fmt(fx1 + 52) << "\" y=\"" << fmt(ly + 4) << "\">"
      << (opt.normalize ? "slope 0" : "slope -1") << "</text>\n";
  out << "</g>\n</svg>\n";
}

void emit_svg_loglog(const std::vector<SweepRow>& rows, const std::vector<Column>& columns,
                     const std::string& path, const SvgOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_svg_loglog(out, rows, columns, options);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace patchbound
