#include "kgraph/bratteli.hpp"

#include <cmath>

namespace kgraph {

int level_color(const KGraph& g, int level) { return (level - 1) % g.colors(); }

Degree degree_for_length(const KGraph& g, int n) {
  Degree d(g.colors());
  for (int m = 1; m <= n; ++m) ++d[level_color(g, m)];
  return d;
}

Path to_path(const KGraph& g, const BratteliPath& p) {
  if (p.edges.empty()) return vertex_path(g, p.root);
  for (int m = 1; m <= p.length(); ++m)
    if (g.edge(p.edges[static_cast<size_t>(m - 1)]).color != level_color(g, m))
      throw InputError("level " + std::to_string(m) + " edge has the wrong color");
  if (g.edge(p.edges.front()).rng != p.root) throw InputError("root does not match the first edge");
  return path_from_edges(g, p.edges);
}

BratteliPath from_path(const KGraph& g, const Path& p) {
  if (p.deg != degree_for_length(g, p.deg.total()))
    throw InputError("degree " + p.deg.to_string() + " is not a cyclic level fill");
  BratteliPath out;
  out.root = p.range;
  Path rest = p;
  for (int m = 1; m <= p.deg.total(); ++m) {
    int c = level_color(g, m);
    Degree step = Degree::unit(g.colors(), c);
    Path head = subpath(g, rest, Degree(g.colors()), step);
    out.edges.push_back(head.edges.at(0));
    rest = shift(g, rest, step);
  }
  return out;
}

namespace {

bool walk_levels(const KGraph& g, BratteliPath& acc, int n, int at,
                 const std::function<bool(const BratteliPath&)>& fn) {
  if (acc.length() == n) return fn(acc);
  int c = level_color(g, acc.length() + 1);
  for (int e : g.edges_from(c, at)) {
    acc.edges.push_back(e);
    bool keep = walk_levels(g, acc, n, g.edge(e).src, fn);
    acc.edges.pop_back();
    if (!keep) return false;
  }
  return true;
}

}  // namespace

void for_each_level_path(const KGraph& g, int n, const std::function<bool(const BratteliPath&)>& fn) {
  BratteliPath acc;
  acc.edges.reserve(static_cast<size_t>(n));
  for (int v = 0; v < g.vertex_count(); ++v) {
    acc.root = v;
    if (!walk_levels(g, acc, n, v, fn)) return;
  }
}

std::vector<BratteliPath> enumerate_level(const KGraph& g, int n) {
  std::vector<BratteliPath> out;
  for_each_level_path(g, n, [&](const BratteliPath& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

long long count_level_paths(const KGraph& g, int n) {
  // product of coordinate matrices in level order, summed over endpoints
  SquareMatrix<long long> m = SquareMatrix<long long>::identity(g.vertex_count());
  for (int level = 1; level <= n; ++level) m = m * g.coordinate_matrix(level_color(g, level));
  long long total = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int w = 0; w < g.vertex_count(); ++w) total += m(v, w);
  return total;
}

WeightFn::WeightFn(const KGraph& g, const WeightFunctor& y, const SpectralData& sd)
    : g_(&g), y_(&y), sd_(&sd), conditions_(metric_conditions_hold(g, sd)) {
  if (!(sd.theta > 0.0)) throw InputError("weights need theta > 0");
}

double WeightFn::operator()(const BratteliPath& p) const {
  Path path = to_path(*g_, p);
  double inner = sd_->xi[static_cast<size_t>(path.source(*g_))] / sd_->rho_power(path.deg);
  return std::exp(-(*y_)(path)) * std::pow(inner, 1.0 / sd_->theta);
}

void WeightFn::require_conditions(const char* what) const {
  if (!conditions_)
    throw PropertyViolation(std::string(what) +
                            " requires the spectral weight condition, which fails here");
}

double self_similarity_residual(const WeightFn& w, const BratteliPath& p, int m) {
  const KGraph& g = w.graph();
  double base = std::pow(w(p), w.theta());
  double sum = 0.0;
  int at = to_path(g, p).source(g);
  BratteliPath ext = p;
  std::function<bool(BratteliPath&, int, int)> rec = [&](BratteliPath& acc, int level_at, int left) {
    if (left == 0) {
      sum += std::pow(w(acc), w.theta());
      return true;
    }
    int c = level_color(g, acc.length() + 1);
    for (int e : g.edges_from(c, level_at)) {
      acc.edges.push_back(e);
      rec(acc, g.edge(e).src, left - 1);
      acc.edges.pop_back();
    }
    return true;
  };
  rec(ext, at, m);
  return std::abs(base - sum);
}

UltraDistance ultrametric(const WeightFn& w, const BratteliPath& a, const BratteliPath& b) {
  w.require_conditions("the ultrametric");
  if (a.length() != b.length())
    throw InputError("ultrametric compares equal-length truncations");
  if (a.root != b.root) return {1.0, true};
  int common = 0;
  while (common < a.length() && a.edges[static_cast<size_t>(common)] == b.edges[static_cast<size_t>(common)])
    ++common;
  if (common == a.length()) return {w(a), false};
  return {w(a.prefix(common)), true};
}

double diameter(const WeightFn& w, const BratteliPath& p) {
  w.require_conditions("diameter");
  return w(p);
}

}  // namespace kgraph
