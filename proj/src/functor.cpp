#include "kgraph/functor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "kgraph/rng.hpp"

namespace kgraph {

namespace {

// Every square appears exactly once among composable ordered pairs with
// ascending colors (its partner word has the colors swapped).
template <typename Fn>
void for_each_square(const KGraph& g, Fn&& fn) {
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const auto& e = g.edge(ei);
    for (int c = e.color + 1; c < g.colors(); ++c)
      for (int f : g.edges_from(c, e.src)) {
        auto [fp, ep] = g.square_image(ei, f);
        fn(ei, f, fp, ep);
      }
  }
}

// One row per square: y(e) + y(f) - y(f') - y(e') = 0.
// Degenerate squares (e.g. e.f = f.e) produce zero rows; they drop out.
std::vector<std::vector<Rational>> constraint_rows(const KGraph& g) {
  std::vector<std::vector<Rational>> rows;
  for_each_square(g, [&](int e, int f, int fp, int ep) {
    std::vector<Rational> row(static_cast<size_t>(g.edge_count()), Rational(0));
    auto bump = [&](int idx, long long v) {
      row[static_cast<size_t>(idx)] = row[static_cast<size_t>(idx)] + Rational(v);
    };
    bump(e, 1);
    bump(f, 1);
    bump(fp, -1);
    bump(ep, -1);
    rows.push_back(std::move(row));
  });
  return rows;
}

}  // namespace

FunctorSpace solve_constraints(const KGraph& g) {
  const int cols = g.edge_count();
  std::vector<std::vector<Rational>> rows = constraint_rows(g);

  // exact reduced row echelon form
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][static_cast<size_t>(c)].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = Rational(1) / rows[r][static_cast<size_t>(c)];
    for (int j = 0; j < cols; ++j) rows[r][static_cast<size_t>(j)] = rows[r][static_cast<size_t>(j)] * inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][static_cast<size_t>(c)].is_zero()) continue;
      Rational m = rows[i][static_cast<size_t>(c)];
      for (int j = 0; j < cols; ++j)
        rows[i][static_cast<size_t>(j)] = rows[i][static_cast<size_t>(j)] - m * rows[r][static_cast<size_t>(j)];
    }
    pivot_col.push_back(c);
    ++r;
  }

  FunctorSpace sp;
  sp.edge_count = cols;
  sp.rank = static_cast<int>(pivot_col.size());
  sp.particular.assign(static_cast<size_t>(cols), Rational(0));
  std::set<int> pivots(pivot_col.begin(), pivot_col.end());
  for (int c = 0; c < cols; ++c)
    if (!pivots.count(c)) sp.free_edges.push_back(c);
  for (int fc : sp.free_edges) {
    std::vector<Rational> v(static_cast<size_t>(cols), Rational(0));
    v[static_cast<size_t>(fc)] = Rational(1);
    for (size_t i = 0; i < pivot_col.size(); ++i)
      v[static_cast<size_t>(pivot_col[i])] = -rows[i][static_cast<size_t>(fc)];
    sp.basis.push_back(std::move(v));
  }
  return sp;
}

double max_square_residual(const KGraph& g, const WeightFunctor& y) {
  double worst = 0.0;
  for_each_square(g, [&](int e, int f, int fp, int ep) {
    worst = std::max(worst, std::abs(y.edge(e) + y.edge(f) - y.edge(fp) - y.edge(ep)));
  });
  return worst;
}

bool squares_hold_exactly(const KGraph& g, const WeightFunctor& y) {
  bool ok = true;
  for_each_square(g, [&](int e, int f, int fp, int ep) {
    Rational lhs = Rational::from_double_exact(y.edge(e)) + Rational::from_double_exact(y.edge(f));
    Rational rhs = Rational::from_double_exact(y.edge(fp)) + Rational::from_double_exact(y.edge(ep));
    if (lhs != rhs) ok = false;
  });
  return ok;
}

WeightFunctor sample_nonnegative(const KGraph& g, const FunctorSpace& space, uint64_t seed,
                                 int max_attempts) {
  Rng rng(seed);
  std::string witness;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Rational> coeff;
    coeff.reserve(space.basis.size());
    for (size_t j = 0; j < space.basis.size(); ++j)
      coeff.push_back(Rational::from_double_exact(rng.dyadic_unit()));
    std::vector<Rational> vals = space.particular;
    for (size_t j = 0; j < space.basis.size(); ++j)
      for (int e = 0; e < space.edge_count; ++e)
        vals[static_cast<size_t>(e)] =
            vals[static_cast<size_t>(e)] + coeff[j] * space.basis[j][static_cast<size_t>(e)];
    bool ok = true;
    for (int e = 0; e < space.edge_count; ++e)
      if (vals[static_cast<size_t>(e)].is_negative()) {
        ok = false;
        witness = "edge " + g.edge(e).id + " = " + vals[static_cast<size_t>(e)].to_string();
        break;
      }
    if (!ok) continue;
    WeightFunctor y;
    y.edge_values.reserve(vals.size());
    for (const Rational& v : vals) y.edge_values.push_back(v.to_double());
    return y;
  }
  throw ComputeError("nonnegative functor sampling failed after " + std::to_string(max_attempts) +
                     " attempts; last violation: " + witness);
}

WeightFunctor parse_functor_text(const KGraph& g, std::istream& in, const std::string& origin) {
  WeightFunctor y = WeightFunctor::zero(g);
  std::vector<bool> set(static_cast<size_t>(g.edge_count()), false);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string id;
    if (!(ls >> id)) continue;
    double v = 0.0;
    if (!(ls >> v)) throw InputError(origin + ":" + std::to_string(line_no) + ": expected: edge-id value");
    int e = g.edge_index(id);
    if (v < 0.0) throw InputError(origin + ":" + std::to_string(line_no) + ": negative weight for " + id);
    y.edge_values[static_cast<size_t>(e)] = v;
    set[static_cast<size_t>(e)] = true;
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (!set[static_cast<size_t>(e)])
      throw InputError(origin + ": functor file gives no value for edge " + g.edge(e).id);
  return y;
}

WeightFunctor parse_functor_file(const KGraph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open functor file: " + path);
  return parse_functor_text(g, in, path);
}

void write_functor_template(const KGraph& g, const FunctorSpace& space, std::ostream& out) {
  out << "# functor template: edge-id value\n";
  out << "# " << space.free_count() << " free variable(s); constraint rank " << space.rank << "\n";
  std::set<int> free(space.free_edges.begin(), space.free_edges.end());
  for (int e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).id << " 0.0";
    if (free.count(e)) {
      out << "   # free";
    } else {
      out << "   # determined by:";
      bool any = false;
      for (size_t j = 0; j < space.basis.size(); ++j) {
        const Rational& c = space.basis[j][static_cast<size_t>(e)];
        if (c.is_zero()) continue;
        out << (c.is_negative() ? " - " : (any ? " + " : " "));
        Rational mag = c.is_negative() ? -c : c;
        if (mag != Rational(1)) out << mag.to_string() << "*";
        out << g.edge(space.free_edges[j]).id;
        any = true;
      }
      if (!any) out << " 0";
    }
    out << "\n";
  }
}

int floating_constraint_rank(const KGraph& g, double pivot_tol) {
  std::vector<std::vector<Rational>> exact = constraint_rows(g);
  std::vector<std::vector<double>> rows;
  for (const auto& r : exact) {
    std::vector<double> d;
    d.reserve(r.size());
    for (const Rational& x : r) d.push_back(x.to_double());
    rows.push_back(std::move(d));
  }
  int cols = g.edge_count();
  size_t r = 0;
  int rank = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    size_t best = r;
    for (size_t i = r; i < rows.size(); ++i)
      if (std::abs(rows[i][static_cast<size_t>(c)]) > std::abs(rows[best][static_cast<size_t>(c)]))
        best = i;
    if (std::abs(rows[best][static_cast<size_t>(c)]) <= pivot_tol) continue;
    std::swap(rows[r], rows[best]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      double m = rows[i][static_cast<size_t>(c)] / rows[r][static_cast<size_t>(c)];
      if (m == 0.0) continue;
      for (int j = 0; j < cols; ++j) rows[i][static_cast<size_t>(j)] -= m * rows[r][static_cast<size_t>(j)];
    }
    ++rank;
    ++r;
  }
  return rank;
}

}  // namespace kgraph
