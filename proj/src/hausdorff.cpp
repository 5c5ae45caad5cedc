#include "kgraph/hausdorff.hpp"

#include <cmath>

#include "kgraph/parallel.hpp"

namespace kgraph {

namespace {

// Per-path weight^s, decomposed over edges so subtree sums never rebuild the
// path: crossing edge e of color c multiplies by (exp(-y(e)) rho_c^{-1/theta})^s,
// and the leaf contributes xi_{source}^{s/theta}.
struct CoverTerms {
  std::vector<double> edge_factor;  // per edge
  std::vector<double> leaf_factor;  // per vertex
};

CoverTerms cover_terms(const WeightFn& w, double s) {
  const KGraph& g = w.graph();
  const SpectralData& sd = w.spectral();
  CoverTerms t;
  t.edge_factor.reserve(static_cast<size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    int c = g.edge(e).color;
    double base = std::exp(-w.functor().edge(e)) * std::pow(sd.rho[static_cast<size_t>(c)], -1.0 / sd.theta);
    t.edge_factor.push_back(std::pow(base, s));
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    t.leaf_factor.push_back(std::pow(sd.xi[static_cast<size_t>(v)], s / sd.theta));
  return t;
}

double subtree_sum(const KGraph& g, const CoverTerms& t, int at, int next_level, int remaining,
                   double acc) {
  if (remaining == 0) return acc * t.leaf_factor[static_cast<size_t>(at)];
  double sum = 0.0;
  int c = level_color(g, next_level);
  for (int e : g.edges_from(c, at))
    sum += subtree_sum(g, t, g.edge(e).src, next_level + 1, remaining - 1,
                       acc * t.edge_factor[static_cast<size_t>(e)]);
  return sum;
}

}  // namespace

namespace {

void guard_path_count(const KGraph& g, int M) {
  const double limit = 50'000'000.0;
  // row-sum bound on the path count, evaluated in floating point so the
  // guard itself cannot overflow
  double worst_row = 0.0;
  for (int c = 0; c < g.colors(); ++c)
    for (int v = 0; v < g.vertex_count(); ++v) {
      double row = 0.0;
      for (int w = 0; w < g.vertex_count(); ++w)
        row += static_cast<double>(g.coordinate_matrix(c)(v, w));
      worst_row = std::max(worst_row, row);
    }
  if (g.vertex_count() * std::pow(worst_row, M) > limit)
    throw ComputeError("cover depth " + std::to_string(M) + " exceeds the path-count guard");
}

}  // namespace

double cover_sum_serial(const WeightFn& w, int M, double s) {
  w.require_conditions("cover sums");
  const KGraph& g = w.graph();
  guard_path_count(g, M);
  CoverTerms t = cover_terms(w, s);
  double sum = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) sum += subtree_sum(g, t, v, 1, M, 1.0);
  return sum;
}

double cover_sum(const WeightFn& w, int M, double s, bool parallel) {
  w.require_conditions("cover sums");
  const KGraph& g = w.graph();
  guard_path_count(g, M);
  CoverTerms t = cover_terms(w, s);

  // Split on a prefix deep enough to feed every thread, then give each
  // prefix its own serial subtree.
  int split = 0;
  while (split < M && count_level_paths(g, split) < 4LL * par::max_threads()) ++split;
  struct Prefix {
    int source;
    double acc;
  };
  std::vector<Prefix> prefixes;
  for_each_level_path(g, split, [&](const BratteliPath& p) {
    double acc = 1.0;
    for (int e : p.edges) acc *= t.edge_factor[static_cast<size_t>(e)];
    int src = p.edges.empty() ? p.root : g.edge(p.edges.back()).src;
    prefixes.push_back({src, acc});
    return true;
  });

  std::vector<double> partial(prefixes.size(), 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i)
    partial[static_cast<size_t>(i)] = subtree_sum(g, t, prefixes[static_cast<size_t>(i)].source,
                                                  split + 1, M - split,
                                                  prefixes[static_cast<size_t>(i)].acc);
  return par::tree_sum(std::move(partial));
}

namespace {

enum class Side { Below, Above, Flat };

Side classify(const WeightFn& w, int m_max, double s, bool parallel, int* evals) {
  int lo = std::max(1, m_max / 2);
  double prev = cover_sum(w, lo, s, parallel);
  ++*evals;
  bool any_up = false, any_down = false;
  const double guard = 1e-12;
  for (int M = lo + 1; M <= m_max; ++M) {
    double cur = cover_sum(w, M, s, parallel);
    ++*evals;
    double dlog = std::log(cur) - std::log(prev);
    if (dlog > guard) any_up = true;
    if (dlog < -guard) any_down = true;
    prev = cur;
  }
  if (any_up && any_down)
    throw ComputeError("cover sums are not monotone across the depth window at s = " +
                       std::to_string(s));
  if (any_up) return Side::Below;
  if (any_down) return Side::Above;
  return Side::Flat;
}

}  // namespace

DimensionEstimate dimension_estimate(const WeightFn& w, int m_max, double tol, double s_hi,
                                     bool parallel) {
  w.require_conditions("dimension estimation");
  if (m_max < 2) throw InputError("dimension estimation needs m_max >= 2");
  DimensionEstimate est;
  double lo = 1e-9;
  if (classify(w, m_max, lo, parallel, &est.cover_sum_evaluations) != Side::Below)
    throw ComputeError("cover sums do not grow near s = 0; the path space looks degenerate");
  double hi = s_hi;
  while (classify(w, m_max, hi, parallel, &est.cover_sum_evaluations) != Side::Above) {
    hi *= 2.0;
    if (hi > 64.0) throw ComputeError("no upper bracket for the dimension below s = 64");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    Side side = classify(w, m_max, mid, parallel, &est.cover_sum_evaluations);
    if (side == Side::Flat) {
      // flat within noise: the midpoint is the dimension to working accuracy
      lo = hi = mid;
      break;
    }
    (side == Side::Below ? lo : hi) = mid;
  }
  est.lo = lo;
  est.hi = hi;
  est.value = 0.5 * (lo + hi);
  return est;
}

HausdorffValue hausdorff_measure(const WeightFn& w, const BratteliPath& p) {
  w.require_conditions("Hausdorff measure");
  HausdorffValue out;
  out.measure = std::pow(w(p), w.theta());
  double m = mu(w.graph(), w.functor(), w.spectral(), to_path(w.graph(), p));
  out.deviation_from_mu = std::abs(out.measure - m);
  return out;
}

}  // namespace kgraph
