#ifndef KGRAPH_GRAPH_HPP
#define KGRAPH_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/errors.hpp"
#include "kgraph/matrix.hpp"

namespace kgraph {

/// Raw description of a colored graph with commuting squares, as read from a
/// graph file.  `validate` turns this into a KGraph or throws InputError.
struct GraphSpec {
  std::vector<std::string> vertices;
  struct EdgeDecl {
    std::string id;
    std::string src;
    std::string rng;
    int color = 0;  // 0-based
  };
  std::vector<EdgeDecl> edges;
  struct SquareDecl {
    // e.f = fp.ep, with e,ep of one color and f,fp of another
    std::string e, f, fp, ep;
  };
  std::vector<SquareDecl> squares;
  int colors = 0;
};

GraphSpec parse_graph_text(std::istream& in, const std::string& origin = "<input>");
GraphSpec parse_graph_file(const std::string& path);

struct ValidateOptions {
  int connectivity_cap = 12;  // max |n|_1 searched for a positivity witness
};

class KGraph;

/// Morphism in canonical normal form: edge word grouped by color in
/// nondecreasing color order, stored in composition order (range end first).
struct Path {
  int range = -1;
  Degree deg;
  std::vector<int> edges;

  int source(const KGraph& g) const;
  bool is_vertex() const { return edges.empty(); }

  bool operator==(const Path& o) const { return range == o.range && deg == o.deg && edges == o.edges; }
  bool operator!=(const Path& o) const { return !(*this == o); }
  bool operator<(const Path& o) const {  // deterministic ordering for containers
    if (range != o.range) return range < o.range;
    if (deg != o.deg) return deg < o.deg;
    return edges < o.edges;
  }
};

struct PathHash {
  size_t operator()(const Path& p) const {
    size_t h = std::hash<int>()(p.range);
    for (int d : p.deg.c) h = h * 1000003u + static_cast<size_t>(d) + 17u;
    for (int e : p.edges) h = h * 1000003u + static_cast<size_t>(e) + 101u;
    return h;
  }
};

/// Validated finite k-graph.  Immutable after construction; all path
/// operations are pure functions and safe to use concurrently.
class KGraph {
 public:
  struct Edge {
    std::string id;
    int src = -1;
    int rng = -1;
    int color = -1;
  };

  static KGraph validate(const GraphSpec& spec, const ValidateOptions& opt = {});

  int colors() const { return k_; }
  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::string& vertex_id(int v) const { return vertex_ids_[static_cast<size_t>(v)]; }
  int vertex_index(const std::string& id) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int edge_index(const std::string& id) const;
  const std::vector<int>& edges_of_color(int c) const { return by_color_[static_cast<size_t>(c)]; }
  /// Color-c edges with range v, in declaration order.
  const std::vector<int>& edges_from(int c, int v) const {
    return out_[static_cast<size_t>(c)][static_cast<size_t>(v)];
  }

  /// Rewrites the adjacent two-edge word (e,f) to the paired word of swapped
  /// colors.  Only defined for composable pairs of distinct colors.
  std::pair<int, int> square_image(int e, int f) const;

  const SquareMatrix<long long>& coordinate_matrix(int c) const { return coord_[static_cast<size_t>(c)]; }
  const std::vector<SquareMatrix<long long>>& coordinate_matrices() const { return coord_; }
  /// Degrees F with sum_{n in F} A^n entrywise positive.
  const std::vector<Degree>& connectivity_witness() const { return witness_; }

 private:
  int k_ = 0;
  std::vector<std::string> vertex_ids_;
  std::unordered_map<std::string, int> vertex_by_id_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> edge_by_id_;
  std::vector<std::vector<int>> by_color_;
  std::vector<std::vector<std::vector<int>>> out_;                // out_[color][range vertex]
  std::unordered_map<uint64_t, std::pair<int, int>> square_map_;  // both directions
  std::vector<SquareMatrix<long long>> coord_;
  std::vector<Degree> witness_;

  friend struct GraphChecks;
};

// ---- path operations -------------------------------------------------------

Path vertex_path(const KGraph& g, int v);
/// Builds the normal form of a composable edge word (composition order).
Path path_from_edges(const KGraph& g, const std::vector<int>& word);
Path compose(const KGraph& g, const Path& a, const Path& b);
/// The unique factor lambda(p,q); requires 0 <= p <= q <= d(lambda).
Path subpath(const KGraph& g, const Path& p, const Degree& lo, const Degree& hi);
Path shift(const KGraph& g, const Path& p, const Degree& m);

/// Visits v Lambda^n (optionally restricted to source w) in a fixed
/// declaration-derived order.  The callback returns false to stop early.
/// Returns false if stopped early.
bool for_each_path(const KGraph& g, int v, const Degree& n, std::optional<int> w,
                   const std::function<bool(const Path&)>& fn, int cap = 12);
std::vector<Path> enumerate_paths(const KGraph& g, int v, const Degree& n, std::optional<int> w = {},
                                  int cap = 12);
/// All paths of every degree <= max coordinatewise, any range, fixed order.
std::vector<Path> enumerate_paths_up_to(const KGraph& g, const Degree& max, int cap = 12);

/// Minimal common extensions: pairs (xi, zeta) with a.xi == b.zeta of degree
/// d(a) v d(b).  Requires r(a) == r(b).
std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& a, const Path& b, int cap = 12);

std::string format_path(const KGraph& g, const Path& p);
std::string format_degree(const Degree& d);

/// Searches for finite F with sum_{n in F} M^n positive, scanning degrees by
/// ascending |n|_1 (color-1-major within a level) and keeping only degrees
/// that enlarge the positivity pattern.  Shared by validation (on the A_i)
/// and by the spectral module (on the B_i).
std::optional<std::vector<Degree>> positivity_witness(const std::vector<SquareMatrix<double>>& family,
                                                      int cap);

}  // namespace kgraph

#endif
