#ifndef KGRAPH_PERIODICITY_HPP
#define KGRAPH_PERIODICITY_HPP

#include <optional>
#include <vector>

#include "kgraph/spectral.hpp"

namespace kgraph {

// ---- integer lattices ------------------------------------------------------

/// Canonical (Hermite-style) row basis of the lattice spanned by the input
/// rows: row echelon over Z, positive pivots, entries above pivots reduced.
std::vector<std::vector<long long>> hermite_basis(std::vector<std::vector<long long>> rows, int k);

bool lattice_contains(const std::vector<std::vector<long long>>& hnf_basis,
                      const std::vector<int>& v);

/// Structure of the annihilator N = {z in T^k : z^m = 1 for all lattice m}
/// and of its own annihilator N_perp back in Z^k.  For any subgroup of Z^k
/// the double annihilator recovers the subgroup; tests rely on that.
struct AnnihilatorData {
  std::vector<long long> invariant_factors;            // d_1 | d_2 | ...
  int torus_rank = 0;                                  // k - rank
  std::vector<std::vector<long long>> n_perp_basis;    // canonical basis of N_perp
};
AnnihilatorData character_annihilator(const std::vector<std::vector<long long>>& basis, int k);

// ---- periodicity of the graph ----------------------------------------------

struct PeriodicCheck {
  bool refuted = false;
  int depth = 0;
  std::optional<Path> witness;  // a refuting extension
};

/// Depth-bounded test of "the m-shift and n-shift agree on every infinite
/// path out of v".  Refutations are exact; agreement is only certified to
/// the given depth.
PeriodicCheck check_periodic(const KGraph& g, int v, const Degree& m, const Degree& n, int depth,
                             int cap = 64);

/// Depth-bounded test of "a x = b x for every infinite path x"; requires
/// common source and range.
PeriodicCheck periodic_pair(const KGraph& g, const Path& a, const Path& b, int depth, int cap = 64);

struct PeriodicityGroup {
  std::vector<std::vector<long long>> basis;  // canonical rows in Z^k
  struct Witness {
    int vertex;
    Degree m, n;
  };
  std::vector<Witness> witnesses;  // one per accepted generator
  int depth = 0;
  int base_vertex = 0;
};

/// Scans shift pairs (m, n) <= max_degree at one vertex (the groups at all
/// vertices coincide on strongly connected graphs) and returns the lattice
/// generated by the verified differences m - n.
PeriodicityGroup per_group(const KGraph& g, const Degree& max_degree, int depth, int base_vertex = 0,
                           int cap = 64);

/// Default certification depth: |vertices| + 1.
int default_periodicity_depth(const KGraph& g);

// ---- aperiodicity criterion --------------------------------------------------

struct CollisionWitness {
  Path a, b;
  double lhs = 0.0, rhs = 0.0;
};

/// Searches paths of distinct degrees <= max_degree whose modified weights
/// y(p) + (1/beta) sum d_i ln rho_i collide within tol (relative).  A
/// collision is necessary for periodicity; a clean sweep certifies the
/// criterion's hypothesis over the searched range.
std::optional<CollisionWitness> aperiodicity_collision(const KGraph& g, const WeightFunctor& y,
                                                       const SpectralData& sd, const Degree& max_degree,
                                                       double tol = 1e-9, int cap = 16);

}  // namespace kgraph

#endif
