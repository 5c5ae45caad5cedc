#ifndef KGRAPH_FUNCTOR_HPP
#define KGRAPH_FUNCTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kgraph/graph.hpp"
#include "kgraph/rational.hpp"

namespace kgraph {

/// Additive nonnegative edge weighting: vanishes on vertices, additive under
/// composition, constant across refactorizations (enforced by the square
/// constraints).
struct WeightFunctor {
  std::vector<double> edge_values;

  static WeightFunctor zero(const KGraph& g) {
    WeightFunctor y;
    y.edge_values.assign(static_cast<size_t>(g.edge_count()), 0.0);
    return y;
  }

  double edge(int e) const { return edge_values.at(static_cast<size_t>(e)); }

  double operator()(const Path& p) const {
    double s = 0.0;
    for (int e : p.edges) s += edge_values.at(static_cast<size_t>(e));
    return s;
  }

  bool is_zero() const {
    for (double v : edge_values)
      if (v != 0.0) return false;
    return true;
  }
};

/// Solution space of the square constraints, over all edges, in exact
/// rational arithmetic.  The space is linear (the zero functor always
/// solves); `particular` is kept as the canonical origin.
struct FunctorSpace {
  int edge_count = 0;
  int rank = 0;                             // rank of the constraint matrix
  std::vector<int> free_edges;              // free columns, ascending
  std::vector<std::vector<Rational>> basis; // one vector per free edge
  std::vector<Rational> particular;         // all zeros

  int free_count() const { return static_cast<int>(free_edges.size()); }
};

FunctorSpace solve_constraints(const KGraph& g);

/// Largest violation of y(e)+y(f) = y(f')+y(e') over the declared squares.
double max_square_residual(const KGraph& g, const WeightFunctor& y);
/// Same check in exact rational arithmetic over the (dyadic) double values.
bool squares_hold_exactly(const KGraph& g, const WeightFunctor& y);

/// Deterministic rejection sampler over the nonnegative cone of the space.
/// Free coordinates are dyadic uniforms in [0,1); dependent edges are filled
/// in exactly.  Throws ComputeError with a witness after max_attempts.
WeightFunctor sample_nonnegative(const KGraph& g, const FunctorSpace& space, uint64_t seed,
                                 int max_attempts = 1000);

WeightFunctor parse_functor_text(const KGraph& g, std::istream& in, const std::string& origin = "<input>");
WeightFunctor parse_functor_file(const KGraph& g, const std::string& path);
void write_functor_template(const KGraph& g, const FunctorSpace& space, std::ostream& out);

/// Floating-point rank of the same constraint matrix; used to cross-check
/// the exact elimination.
int floating_constraint_rank(const KGraph& g, double pivot_tol = 1e-9);

}  // namespace kgraph

#endif
