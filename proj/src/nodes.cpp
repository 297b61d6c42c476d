#include "patchbound/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patchbound/errors.hpp"

namespace patchbound {

namespace {

bool is_layered(GradingFamily family) { return family != GradingFamily::Uniform; }

bool uses_layer_position(GradingFamily family) {
  return family == GradingFamily::Shishkin || family == GradingFamily::BakhvalovType;
}

// Appends n/2 equal steps from the last fine node to 1.
void fill_coarse_part(Eigen::VectorXd& x, int n) {
  const int half = n / 2;
  const double start = x[half];
  const double step = (1.0 - start) / (n - half);
  for (int i = half + 1; i < n; ++i) x[i] = start + (i - half) * step;
  x[n] = 1.0;
}

void require_family(const GradingParams& p, GradingFamily expected) {
  if (p.family != expected)
    throw InvalidArgument("expected " + std::string(to_string(expected)) + " parameters, got " +
                          std::string(to_string(p.family)));
  p.validate();
}

}  // namespace

std::string_view to_string(GradingFamily family) {
  switch (family) {
    case GradingFamily::Uniform: return "uniform";
    case GradingFamily::Shishkin: return "shishkin";
    case GradingFamily::BakhvalovType: return "bakhvalov";
    case GradingFamily::PowerGraded: return "power";
    case GradingFamily::SingleLayer: return "single_layer";
  }
  return "unknown";
}

std::string_view to_string(LayerPosition position) {
  return position == LayerPosition::Boundary ? "boundary" : "internal";
}

GradingFamily parse_family(std::string_view name) {
  for (auto f : {GradingFamily::Uniform, GradingFamily::Shishkin, GradingFamily::BakhvalovType,
                 GradingFamily::PowerGraded, GradingFamily::SingleLayer}) {
    if (name == to_string(f)) return f;
  }
  if (name == "bakhvalov_type") return GradingFamily::BakhvalovType;
  if (name == "power_graded") return GradingFamily::PowerGraded;
  if (name == "single") return GradingFamily::SingleLayer;
  throw InvalidArgument("unknown mesh family '" + std::string(name) + "'");
}

LayerPosition parse_layer_position(std::string_view name) {
  if (name == "boundary") return LayerPosition::Boundary;
  if (name == "internal") return LayerPosition::Internal;
  throw InvalidArgument("unknown layer position '" + std::string(name) + "'");
}

void GradingParams::validate() const {
  std::ostringstream err;
  if (n < 2) {
    err << "n = " << n << " is too small (need n >= 2)";
  } else if (is_layered(family) && n % 2 != 0) {
    err << "n = " << n << " must be even for the " << to_string(family) << " family";
  } else if (family == GradingFamily::Shishkin && n < 4) {
    err << "shishkin nodes need n >= 4";
  } else if (uses_layer_position(family) && layer_position == LayerPosition::Internal &&
             (n % 4 != 0 || (family == GradingFamily::Shishkin && n < 8))) {
    err << "internal " << to_string(family) << " layers need n divisible by 4"
        << (family == GradingFamily::Shishkin ? " and n >= 8" : "");
  } else if (!(eps > 0.0 && eps < 1.0)) {
    err << "eps = " << eps << " must lie in (0, 1)";
  } else if (!(beta >= 1.0) || !std::isfinite(beta)) {
    err << "beta = " << beta << " must be >= 1";
  } else if (!(c_sigma > 0.0) || !std::isfinite(c_sigma)) {
    err << "c_sigma = " << c_sigma << " must be positive";
  }
  const auto msg = err.str();
  if (!msg.empty()) throw InvalidArgument(msg);
}

NodeSet1D::NodeSet1D(Eigen::VectorXd nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidArgument("node set needs at least two nodes");
  if (nodes_[0] != 0.0 || nodes_[nodes_.size() - 1] != 1.0)
    throw InvalidArgument("node set must start at 0 and end at 1");
  for (Eigen::Index i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      std::ostringstream err;
      err << "node set not strictly increasing at index " << i << " (" << nodes_[i - 1]
          << " >= " << nodes_[i] << ")";
      throw InvalidArgument(err.str());
    }
  }
}

double NodeSet1D::min_step() const {
  const auto n = nodes_.size();
  return (nodes_.tail(n - 1) - nodes_.head(n - 1)).minCoeff();
}

double NodeSet1D::max_step() const {
  const auto n = nodes_.size();
  return (nodes_.tail(n - 1) - nodes_.head(n - 1)).maxCoeff();
}

NodeSet1D uniform_nodes(int n) {
  if (n < 2) throw InvalidArgument("uniform_nodes: n = " + std::to_string(n) + " is too small");
  Eigen::VectorXd x(n + 1);
  for (int i = 0; i <= n; ++i) x[i] = static_cast<double>(i) / n;
  return NodeSet1D(std::move(x));
}

NodeSet1D shishkin_nodes(const GradingParams& p) {
  require_family(p, GradingFamily::Shishkin);
  const int n = p.n;
  const double tau = std::min(1.0, 2.0 * p.c_sigma * p.eps * std::log(static_cast<double>(n)));
  if (tau >= 1.0) return uniform_nodes(n);

  Eigen::VectorXd x(n + 1);
  for (int i = 0; i <= n / 2; ++i) x[i] = tau * static_cast<double>(i) / n;
  fill_coarse_part(x, n);
  return NodeSet1D(std::move(x));
}

NodeSet1D bakhvalov_nodes(const GradingParams& p) {
  require_family(p, GradingFamily::BakhvalovType);
  const int n = p.n;
  const double sigma = -p.c_sigma * p.eps * std::log(p.eps);
  if (sigma >= 0.5) return uniform_nodes(n);

  Eigen::VectorXd x(n + 1);
  for (int i = 0; i <= n / 2; ++i) {
    const double t = static_cast<double>(i) / n;
    x[i] = -p.c_sigma * p.eps * std::log(1.0 - 2.0 * (1.0 - p.eps) * t);
  }
  x[0] = 0.0;
  fill_coarse_part(x, n);
  return NodeSet1D(std::move(x));
}

NodeSet1D power_nodes(const GradingParams& p) {
  require_family(p, GradingFamily::PowerGraded);
  const int n = p.n;
  Eigen::VectorXd x(n + 1);
  for (int i = 0; i <= n / 2; ++i) x[i] = 0.5 * std::pow(2.0 * i / n, p.beta);
  for (int i = n / 2 + 1; i <= n; ++i) x[i] = 1.0 - x[n - i];
  return NodeSet1D(std::move(x));
}

NodeSet1D single_layer_nodes(const GradingParams& p) {
  require_family(p, GradingFamily::SingleLayer);
  const int n = p.n;
  const int mid = n / 2;
  Eigen::VectorXd x(n + 2);
  for (int i = 0; i <= mid; ++i) x[i] = static_cast<double>(i) / n;
  x[mid + 1] = 0.5 + p.eps / n;
  for (int i = mid + 1; i <= n; ++i) x[i + 1] = static_cast<double>(i) / n;
  return NodeSet1D(std::move(x));
}

NodeSet1D internalize(const NodeSet1D& boundary) {
  const auto m = boundary.size();
  Eigen::VectorXd x(2 * m - 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    x[k] = 0.5 * (1.0 - boundary[m - 1 - k]);
    x[m - 1 + k] = 0.5 * (1.0 + boundary[k]);
  }
  x[0] = 0.0;
  x[2 * m - 2] = 1.0;
  return NodeSet1D(std::move(x));
}

NodeSet1D make_nodes(const GradingParams& p) {
  p.validate();
  if (uses_layer_position(p.family) && p.layer_position == LayerPosition::Internal) {
    GradingParams half = p;
    half.n = p.n / 2;
    half.layer_position = LayerPosition::Boundary;
    return internalize(make_nodes(half));
  }
  switch (p.family) {
    case GradingFamily::Uniform: return uniform_nodes(p.n);
    case GradingFamily::Shishkin: return shishkin_nodes(p);
    case GradingFamily::BakhvalovType: return bakhvalov_nodes(p);
    case GradingFamily::PowerGraded: return power_nodes(p);
    case GradingFamily::SingleLayer: return single_layer_nodes(p);
  }
  throw InvalidArgument("make_nodes: unhandled family");
}

}  // namespace patchbound
