#ifndef KGRAPH_BRATTELI_HPP
#define KGRAPH_BRATTELI_HPP

#include <functional>
#include <vector>

#include "kgraph/measure.hpp"
#include "kgraph/spectral.hpp"

namespace kgraph {

/// Finite path in the stationary layered diagram of the graph: the level-m
/// edge (1-indexed) has color ((m-1) mod k) + 1, so colors cycle level by
/// level.  Infinite paths appear only as truncations.
struct BratteliPath {
  int root = -1;  // vertex at level 0
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
  BratteliPath prefix(int n) const {
    BratteliPath p;
    p.root = root;
    p.edges.assign(edges.begin(), edges.begin() + n);
    return p;
  }
  bool operator==(const BratteliPath& o) const { return root == o.root && edges == o.edges; }
};

/// 0-based color of the 1-indexed level.
int level_color(const KGraph& g, int level);
/// Degree of any length-n path: colors are filled cyclically.
Degree degree_for_length(const KGraph& g, int n);

Path to_path(const KGraph& g, const BratteliPath& p);
/// Inverse of to_path; requires the degree of `p` to match a cyclic fill.
BratteliPath from_path(const KGraph& g, const Path& p);

/// Visits all length-n paths in declaration-derived order.
void for_each_level_path(const KGraph& g, int n, const std::function<bool(const BratteliPath&)>& fn);
std::vector<BratteliPath> enumerate_level(const KGraph& g, int n);
long long count_level_paths(const KGraph& g, int n);

/// The weight w(p) = exp(-y(p)) (rho^{-d(p)} xi_{s(p)})^{1/theta}.  Its
/// theta-th power is mu of the corresponding cylinder, which makes it
/// exponentially self-similar with exponent theta.
class WeightFn {
 public:
  WeightFn(const KGraph& g, const WeightFunctor& y, const SpectralData& sd);
  // views only: the referenced objects must outlive the weight function
  WeightFn(const KGraph&&, const WeightFunctor&, const SpectralData&) = delete;
  WeightFn(const KGraph&, const WeightFunctor&&, const SpectralData&) = delete;
  WeightFn(const KGraph&, const WeightFunctor&, const SpectralData&&) = delete;

  double operator()(const BratteliPath& p) const;
  double theta() const { return sd_->theta; }
  bool conditions_hold() const { return conditions_; }
  const KGraph& graph() const { return *g_; }
  const WeightFunctor& functor() const { return *y_; }
  const SpectralData& spectral() const { return *sd_; }

  /// Throws PropertyViolation when used by metric operations without the
  /// applicable weight condition.
  void require_conditions(const char* what) const;

 private:
  const KGraph* g_;
  const WeightFunctor* y_;
  const SpectralData* sd_;
  bool conditions_;
};

/// |w(p)^theta - sum over length-(|p|+m) extensions of w^theta|.
double self_similarity_residual(const WeightFn& w, const BratteliPath& p, int m);

struct UltraDistance {
  double value = 0.0;
  /// False when the truncations coincide: the value is then only an upper
  /// bound for the distance of any pair of infinite extensions.
  bool exact = true;
};
/// Distance of two equal-length truncations: 1 across distinct roots,
/// otherwise the weight of the longest common prefix.
UltraDistance ultrametric(const WeightFn& w, const BratteliPath& a, const BratteliPath& b);

/// diam Z(p) = w(p) under the weight conditions.
double diameter(const WeightFn& w, const BratteliPath& p);

}  // namespace kgraph

#endif
