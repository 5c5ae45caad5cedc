#ifndef KGRAPH_TESTS_FIXTURES_HPP
#define KGRAPH_TESTS_FIXTURES_HPP

#include <string>

#include "kgraph/functor.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/spectral.hpp"

namespace kgraph::test {

inline std::string fixture(const std::string& name) {
  return std::string(KGRAPH_FIXTURE_DIR) + "/" + name;
}

inline KGraph one_vertex() { return KGraph::validate(parse_graph_file(fixture("one_vertex.kgraph"))); }

inline KGraph three_vertex() {
  return KGraph::validate(parse_graph_file(fixture("three_vertex.kgraph")));
}

/// Explicit functor on the one-vertex fixture.
inline WeightFunctor one_vertex_functor(const KGraph& g, double e1, double e2, double f1, double f2) {
  WeightFunctor y = WeightFunctor::zero(g);
  y.edge_values[static_cast<size_t>(g.edge_index("e1"))] = e1;
  y.edge_values[static_cast<size_t>(g.edge_index("e2"))] = e2;
  y.edge_values[static_cast<size_t>(g.edge_index("f1"))] = f1;
  y.edge_values[static_cast<size_t>(g.edge_index("f2"))] = f2;
  return y;
}

/// First sampled functor (scanning seeds upward) whose spectral data at
/// `theta` satisfies the weight condition the metric layer needs.
inline WeightFunctor admissible_sample(const KGraph& g, double theta, uint64_t seed0 = 1) {
  FunctorSpace space = solve_constraints(g);
  for (uint64_t s = seed0; s < seed0 + 64; ++s) {
    WeightFunctor y = sample_nonnegative(g, space, s);
    if (metric_conditions_hold(g, pf_data(g, y, theta))) return y;
  }
  throw ComputeError("no admissible sample in 64 seeds");
}

}  // namespace kgraph::test

#endif
