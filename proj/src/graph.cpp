#include "kgraph/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace kgraph {

namespace {

uint64_t pair_key(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

GraphSpec parse_graph_text(std::istream& in, const std::string& origin) {
  GraphSpec spec;
  std::string line;
  std::string section;
  int current_color = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw InputError(origin + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section == "vertices" || section == "squares") {
        current_color = -1;
      } else if (section.rfind("edges.color_", 0) == 0) {
        current_color = std::atoi(section.c_str() + 12) - 1;
        if (current_color < 0) fail("edge colors are numbered from 1");
        spec.colors = std::max(spec.colors, current_color + 1);
        section = "edges";
      } else {
        fail("unknown section [" + section + "]");
      }
      continue;
    }
    std::vector<std::string> f = split_fields(line);
    if (section == "vertices") {
      if (f.size() != 1) fail("vertex lines hold a single identifier");
      spec.vertices.push_back(f[0]);
    } else if (section == "edges") {
      if (f.size() != 3) fail("edge lines are: id src rng");
      spec.edges.push_back({f[0], f[1], f[2], current_color});
    } else if (section == "squares") {
      if (f.size() != 4) fail("square lines are: e f f' e'  (meaning e.f = f'.e')");
      spec.squares.push_back({f[0], f[1], f[2], f[3]});
    } else {
      fail("content before any section header");
    }
  }
  return spec;
}

GraphSpec parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return parse_graph_text(in, path);
}

int KGraph::vertex_index(const std::string& id) const {
  auto it = vertex_by_id_.find(id);
  if (it == vertex_by_id_.end()) throw InputError("unknown vertex: " + id);
  return it->second;
}

int KGraph::edge_index(const std::string& id) const {
  auto it = edge_by_id_.find(id);
  if (it == edge_by_id_.end()) throw InputError("unknown edge: " + id);
  return it->second;
}

std::pair<int, int> KGraph::square_image(int e, int f) const {
  auto it = square_map_.find(pair_key(e, f));
  if (it == square_map_.end())
    throw ComputeError("no square for adjacent pair " + edge(e).id + "." + edge(f).id);
  return it->second;
}

namespace {

// Rewrites word[i] word[i+1] (distinct colors) through its square.
void swap_adjacent(const KGraph& g, std::vector<int>& word, size_t i) {
  auto [a, b] = g.square_image(word[i], word[i + 1]);
  word[i] = a;
  word[i + 1] = b;
}

// Bubble pass: colors end up nondecreasing; each swap removes one inversion.
void normalize_word(const KGraph& g, std::vector<int>& word) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      if (g.edge(word[i]).color > g.edge(word[i + 1]).color) {
        swap_adjacent(g, word, i);
        moved = true;
      }
    }
  }
}

Degree word_degree(const KGraph& g, const std::vector<int>& word) {
  Degree d(g.colors());
  for (int e : word) ++d[g.edge(e).color];
  return d;
}

void check_composable(const KGraph& g, const std::vector<int>& word, int range) {
  int at = range;
  for (int e : word) {
    if (g.edge(e).rng != at)
      throw InputError("edge word is not composable at edge " + g.edge(e).id);
    at = g.edge(e).src;
  }
}

}  // namespace

int Path::source(const KGraph& g) const {
  return edges.empty() ? range : g.edge(edges.back()).src;
}

Path vertex_path(const KGraph& g, int v) {
  Path p;
  p.range = v;
  p.deg = Degree(g.colors());
  return p;
}

Path path_from_edges(const KGraph& g, const std::vector<int>& word) {
  if (word.empty()) throw InputError("empty edge word has no range; use vertex_path");
  Path p;
  p.range = g.edge(word.front()).rng;
  check_composable(g, word, p.range);
  p.edges = word;
  normalize_word(g, p.edges);
  p.deg = word_degree(g, word);
  return p;
}

Path compose(const KGraph& g, const Path& a, const Path& b) {
  if (a.source(g) != b.range)
    throw InputError("compose: source/range mismatch (" + g.vertex_id(a.source(g)) + " vs " +
                     g.vertex_id(b.range) + ")");
  if (b.is_vertex()) return a;
  if (a.is_vertex()) return b;
  Path p;
  p.range = a.range;
  p.edges = a.edges;
  p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
  normalize_word(g, p.edges);
  p.deg = a.deg.plus(b.deg);
  return p;
}

namespace {

// Splits p as head.tail with d(head) = cut.  Works on a mutable word: for
// each color in increasing order, the leading edge of that color is bubbled
// to the front and popped.  Uniqueness of the result is the factorization
// property of the graph.
std::pair<Path, Path> split_at(const KGraph& g, const Path& p, const Degree& cut) {
  std::vector<int> word = p.edges;
  std::vector<int> head;
  for (int c = 0; c < g.colors(); ++c) {
    for (int t = 0; t < cut[c]; ++t) {
      size_t pos = 0;
      while (pos < word.size() && g.edge(word[pos]).color != c) ++pos;
      for (size_t j = pos; j > 0; --j) swap_adjacent(g, word, j - 1);
      head.push_back(word.front());
      word.erase(word.begin());
    }
  }
  Path h;
  h.range = p.range;
  h.deg = cut;
  h.edges = std::move(head);
  Path t;
  t.range = h.source(g);
  t.deg = p.deg.minus(cut);
  t.edges = std::move(word);
  return {std::move(h), std::move(t)};
}

}  // namespace

Path subpath(const KGraph& g, const Path& p, const Degree& lo, const Degree& hi) {
  if (!hi.dominates(lo) || !p.deg.dominates(hi))
    throw InputError("subpath: need 0 <= lo <= hi <= degree, got lo=" + lo.to_string() +
                     " hi=" + hi.to_string() + " deg=" + p.deg.to_string());
  auto [head, tail] = split_at(g, p, lo);
  (void)head;
  return split_at(g, tail, hi.minus(lo)).first;
}

Path shift(const KGraph& g, const Path& p, const Degree& m) {
  if (!p.deg.dominates(m)) throw InputError("shift: amount exceeds degree");
  return split_at(g, p, m).second;
}

namespace {

bool walk_paths(const KGraph& g, Path& acc, const Degree& n, int color, int placed,
                std::optional<int> want_source, const std::function<bool(const Path&)>& fn) {
  if (color == g.colors()) {
    if (want_source && acc.source(g) != *want_source) return true;
    return fn(acc);
  }
  if (placed == n[color]) return walk_paths(g, acc, n, color + 1, 0, want_source, fn);
  int at = acc.source(g);
  for (int e : g.edges_from(color, at)) {
    acc.edges.push_back(e);
    ++acc.deg[color];
    bool keep = walk_paths(g, acc, n, color, placed + 1, want_source, fn);
    --acc.deg[color];
    acc.edges.pop_back();
    if (!keep) return false;
  }
  return true;
}

}  // namespace

bool for_each_path(const KGraph& g, int v, const Degree& n, std::optional<int> w,
                   const std::function<bool(const Path&)>& fn, int cap) {
  if (n.total() > cap)
    throw ComputeError("enumeration cap exceeded: |" + n.to_string() + "|_1 > " + std::to_string(cap));
  Path acc = vertex_path(g, v);
  acc.edges.reserve(static_cast<size_t>(n.total()));
  return walk_paths(g, acc, n, 0, 0, w, fn);
}

std::vector<Path> enumerate_paths(const KGraph& g, int v, const Degree& n, std::optional<int> w, int cap) {
  std::vector<Path> out;
  for_each_path(
      g, v, n, w,
      [&](const Path& p) {
        out.push_back(p);
        return true;
      },
      cap);
  return out;
}

std::vector<Path> enumerate_paths_up_to(const KGraph& g, const Degree& max, int cap) {
  // all degrees <= max, ascending |n|_1 then color-1-major
  std::vector<Degree> degs;
  Degree d(g.colors());
  std::function<void(int)> rec = [&](int c) {
    if (c == g.colors()) {
      degs.push_back(d);
      return;
    }
    for (int i = 0; i <= max[c]; ++i) {
      d[c] = i;
      rec(c + 1);
    }
  };
  rec(0);
  std::stable_sort(degs.begin(), degs.end(), [](const Degree& a, const Degree& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return b.c < a.c;  // color-1-major
  });
  std::vector<Path> out;
  for (const Degree& n : degs)
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto paths = enumerate_paths(g, v, n, {}, cap);
      out.insert(out.end(), paths.begin(), paths.end());
    }
  return out;
}

std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& a, const Path& b, int cap) {
  if (a.range != b.range) throw InputError("lambda_min: ranges differ");
  Degree top = a.deg.join(b.deg);
  std::vector<std::pair<Path, Path>> out;
  // walk common extensions mu = a.xi of full degree and keep those extending b
  for_each_path(
      g, a.source(g), top.minus(a.deg), {},
      [&](const Path& xi) {
        Path mu = compose(g, a, xi);
        if (subpath(g, mu, Degree(g.colors()), b.deg) == b) {
          out.emplace_back(xi, shift(g, mu, b.deg));
        }
        return true;
      },
      cap);
  return out;
}

std::string format_path(const KGraph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_id(p.range);
  std::string s;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ".";
    s += g.edge(p.edges[i]).id;
  }
  return s;
}

std::string format_degree(const Degree& d) { return d.to_string(); }

std::optional<std::vector<Degree>> positivity_witness(const std::vector<SquareMatrix<double>>& family,
                                                      int cap) {
  const int k = static_cast<int>(family.size());
  const int n = family.at(0).size();
  for (const auto& m : family) {
    bool nonzero = false;
    for (int i = 0; i < n && !nonzero; ++i)
      for (int j = 0; j < n && !nonzero; ++j)
        if (m(i, j) > 0.0) nonzero = true;
    if (!nonzero) return std::nullopt;  // zero matrix: family cannot be irreducible
  }
  SquareMatrix<double> acc(n);
  std::vector<Degree> chosen;
  for (int level = 1; level <= cap; ++level) {
    // degrees with |n|_1 == level, color-1-major order
    std::vector<Degree> degs;
    Degree d(k);
    std::function<void(int, int)> rec = [&](int c, int left) {
      if (c == k - 1) {
        d[c] = left;
        degs.push_back(d);
        return;
      }
      for (int i = left; i >= 0; --i) {
        d[c] = i;
        rec(c + 1, left - i);
      }
    };
    rec(0, level);
    for (const Degree& deg : degs) {
      SquareMatrix<double> p = family_power(family, deg);
      bool helps = false;
      for (int i = 0; i < n && !helps; ++i)
        for (int j = 0; j < n && !helps; ++j)
          if (!(acc(i, j) > 0.0) && p(i, j) > 0.0) helps = true;
      if (!helps) continue;
      acc += p;
      chosen.push_back(deg);
      if (acc.entrywise_positive()) return chosen;
    }
  }
  return std::nullopt;
}

// ---- validation ------------------------------------------------------------

struct GraphChecks {
  static KGraph run(const GraphSpec& spec, const ValidateOptions& opt) {
    KGraph g;
    if (spec.colors < 1) throw InputError("graph declares no edge colors");
    g.k_ = spec.colors;
    if (spec.vertices.empty()) throw InputError("graph declares no vertices");
    for (const auto& v : spec.vertices) {
      if (g.vertex_by_id_.count(v)) throw InputError("duplicate vertex id: " + v);
      g.vertex_by_id_[v] = static_cast<int>(g.vertex_ids_.size());
      g.vertex_ids_.push_back(v);
    }
    g.by_color_.resize(static_cast<size_t>(g.k_));
    g.out_.assign(static_cast<size_t>(g.k_),
                  std::vector<std::vector<int>>(static_cast<size_t>(g.vertex_count())));
    for (const auto& e : spec.edges) {
      if (g.edge_by_id_.count(e.id)) throw InputError("duplicate edge id: " + e.id);
      auto src = g.vertex_by_id_.find(e.src);
      auto rng = g.vertex_by_id_.find(e.rng);
      if (src == g.vertex_by_id_.end() || rng == g.vertex_by_id_.end())
        throw InputError("edge " + e.id + " has undeclared endpoint");
      int idx = static_cast<int>(g.edges_.size());
      g.edge_by_id_[e.id] = idx;
      g.edges_.push_back({e.id, src->second, rng->second, e.color});
      g.by_color_[static_cast<size_t>(e.color)].push_back(idx);
      g.out_[static_cast<size_t>(e.color)][static_cast<size_t>(rng->second)].push_back(idx);
    }
    for (int c = 0; c < g.k_; ++c)
      if (g.by_color_[static_cast<size_t>(c)].empty())
        throw InputError("color " + std::to_string(c + 1) + " has no edges");

    install_squares(g, spec);
    if (g.k_ >= 3) check_cubes(g);
    build_matrices(g);
    check_commutation(g);
    check_connectivity(g, opt);
    return g;
  }

  static void install_squares(KGraph& g, const GraphSpec& spec) {
    // Forward and backward entries, plus bijectivity of the pairing for each
    // unordered color pair.  A word may belong to exactly one square in
    // either role, so usage is tracked across both sides.
    std::set<std::pair<int, int>> used;
    for (const auto& sq : spec.squares) {
      int e = g.edge_index(sq.e), f = g.edge_index(sq.f);
      int fp = g.edge_index(sq.fp), ep = g.edge_index(sq.ep);
      const auto& E = g.edge(e);
      const auto& F = g.edge(f);
      const auto& FP = g.edge(fp);
      const auto& EP = g.edge(ep);
      if (E.color == F.color) throw InputError("square " + sq.e + "." + sq.f + " pairs equal colors");
      if (E.color != EP.color || F.color != FP.color)
        throw InputError("square " + sq.e + "." + sq.f + " = " + sq.fp + "." + sq.ep +
                         " mixes colors inconsistently");
      if (E.src != F.rng || FP.src != EP.rng)
        throw InputError("square " + sq.e + "." + sq.f + " = " + sq.fp + "." + sq.ep +
                         " is not composable");
      if (E.rng != FP.rng || F.src != EP.src)
        throw InputError("square " + sq.e + "." + sq.f + " = " + sq.fp + "." + sq.ep +
                         " does not preserve range/source");
      if (!used.insert({e, f}).second)
        throw InputError("square pairing is not a bijection: " + sq.e + "." + sq.f +
                         " appears in two squares");
      if (!used.insert({fp, ep}).second)
        throw InputError("square pairing is not a bijection: " + sq.fp + "." + sq.ep +
                         " appears in two squares");
      g.square_map_[pair_key(e, f)] = {fp, ep};
      g.square_map_[pair_key(fp, ep)] = {e, f};
    }
    // every composable mixed-color word must be covered
    for (int eidx = 0; eidx < static_cast<int>(g.edges_.size()); ++eidx) {
      const auto& e = g.edge(eidx);
      for (int c = 0; c < g.k_; ++c) {
        if (c == e.color) continue;
        for (int fidx : g.edges_from(c, e.src))
          if (!g.square_map_.count(pair_key(eidx, fidx)))
            throw InputError("square pairing is not a bijection: no square for " + e.id + "." +
                             g.edge(fidx).id);
      }
    }
  }

  // For k >= 3: resorting any descending 3-color word by the two hexagon
  // routes must agree, otherwise the factorization is ill-defined.
  static void check_cubes(KGraph& g) {
    auto sort_by = [&](std::vector<int> w, bool left_first) {
      while (true) {
        int pos = -1;
        for (size_t i = 0; i + 1 < w.size(); ++i)
          if (g.edge(w[i]).color > g.edge(w[i + 1]).color) {
            pos = static_cast<int>(i);
            if (left_first) break;
          }
        if (pos < 0) return w;
        swap_adjacent(g, w, static_cast<size_t>(pos));
      }
    };
    for (int a = 0; a < g.k_; ++a)
      for (int b = 0; b < a; ++b)
        for (int c = 0; c < b; ++c)
          for (int e1 : g.by_color_[static_cast<size_t>(a)])
            for (int e2 : g.by_color_[static_cast<size_t>(b)]) {
              if (g.edge(e1).src != g.edge(e2).rng) continue;
              for (int e3 : g.by_color_[static_cast<size_t>(c)]) {
                if (g.edge(e2).src != g.edge(e3).rng) continue;
                std::vector<int> w = {e1, e2, e3};
                if (sort_by(w, true) != sort_by(w, false))
                  throw InputError("cube condition fails on word " + g.edge(e1).id + "." +
                                   g.edge(e2).id + "." + g.edge(e3).id);
              }
            }
  }

  static void build_matrices(KGraph& g) {
    int n = g.vertex_count();
    for (int c = 0; c < g.k_; ++c) {
      SquareMatrix<long long> m(n);
      for (int e : g.by_color_[static_cast<size_t>(c)]) ++m(g.edge(e).rng, g.edge(e).src);
      g.coord_.push_back(std::move(m));
    }
  }

  static void check_commutation(KGraph& g) {
    for (int i = 0; i < g.k_; ++i)
      for (int j = i + 1; j < g.k_; ++j)
        if (!(g.coord_[static_cast<size_t>(i)] * g.coord_[static_cast<size_t>(j)] ==
              g.coord_[static_cast<size_t>(j)] * g.coord_[static_cast<size_t>(i)]))
          throw InputError("coordinate matrices for colors " + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + " do not commute");
  }

  static void check_connectivity(KGraph& g, const ValidateOptions& opt) {
    std::vector<SquareMatrix<double>> family;
    for (const auto& m : g.coord_) {
      SquareMatrix<double> d(m.size());
      for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) d(i, j) = static_cast<double>(m(i, j));
      family.push_back(std::move(d));
    }
    auto w = positivity_witness(family, opt.connectivity_cap);
    if (!w)
      throw InputError("graph is not strongly connected (no positivity witness with |n|_1 <= " +
                       std::to_string(opt.connectivity_cap) + ")");
    g.witness_ = std::move(*w);
  }
};

KGraph KGraph::validate(const GraphSpec& spec, const ValidateOptions& opt) {
  return GraphChecks::run(spec, opt);
}

}  // namespace kgraph
