#ifndef PATCHBOUND_NODES_HPP
#define PATCHBOUND_NODES_HPP

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace patchbound {

enum class GradingFamily { Uniform, Shishkin, BakhvalovType, PowerGraded, SingleLayer };
enum class LayerPosition { Boundary, Internal };

std::string_view to_string(GradingFamily family);
std::string_view to_string(LayerPosition position);
GradingFamily parse_family(std::string_view name);
LayerPosition parse_layer_position(std::string_view name);

// Parameters of a one-dimensional graded node family on [0, 1].
//   n      intervals per direction
//   eps    layer parameter (Shishkin, Bakhvalov, SingleLayer)
//   beta   grading exponent (PowerGraded)
//   c_sigma transition constant (Shishkin, Bakhvalov)
struct GradingParams {
  GradingFamily family = GradingFamily::Uniform;
  int n = 2;
  double eps = 0.05;
  double beta = 3.0;
  double c_sigma = 1.0;
  LayerPosition layer_position = LayerPosition::Boundary;

  // Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

// Strictly increasing coordinates with first node 0 and last node 1.
class NodeSet1D {
public:
  // Validates monotonicity and endpoints; throws InvalidArgument otherwise.
  explicit NodeSet1D(Eigen::VectorXd nodes);

  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  Eigen::Index size() const noexcept { return nodes_.size(); }
  Eigen::Index intervals() const noexcept { return nodes_.size() - 1; }
  double operator[](Eigen::Index i) const { return nodes_[i]; }

  double min_step() const;
  double max_step() const;

private:
  Eigen::VectorXd nodes_;
};

NodeSet1D uniform_nodes(int n);

// Fine part x_i = min{1, 2 c_sigma eps ln n} i/n for i <= n/2, the remaining
// n/2 steps equidistant up to 1. Collapses to uniform when the clamp is hit.
NodeSet1D shishkin_nodes(const GradingParams& p);

// Fine part x_i = -c_sigma eps ln(1 - 2(1 - eps) i/n) for i <= n/2, the
// remaining n/2 steps equidistant. Falls back to uniform nodes when the
// transition point would pass 1/2.
NodeSet1D bakhvalov_nodes(const GradingParams& p);

// x_i = (2i/n)^beta / 2 on the lower half, reflected onto the upper half.
NodeSet1D power_nodes(const GradingParams& p);

// Uniform nodes plus one extra node at 1/2 + eps/n, producing a single
// interval of width eps/n next to the midpoint.
NodeSet1D single_layer_nodes(const GradingParams& p);

// Mirrors a boundary-layer node set about 1/2 so that its fine region sits
// in the middle of [0, 1]. Output has 2 * intervals + 1 nodes.
NodeSet1D internalize(const NodeSet1D& boundary);

// Dispatches on p.family and p.layer_position. Internal layers are built from
// the boundary family at n/2 intervals, so the result still has n intervals.
NodeSet1D make_nodes(const GradingParams& p);

}  // namespace patchbound

#endif  // PATCHBOUND_NODES_HPP
