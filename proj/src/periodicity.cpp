#include "kgraph/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace kgraph {

// ---- lattices ----------------------------------------------------------------

std::vector<std::vector<long long>> hermite_basis(std::vector<std::vector<long long>> rows, int k) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const std::vector<long long>& r) {
                              return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
                            }),
             rows.end());
  size_t top = 0;
  for (int col = 0; col < k && top < rows.size(); ++col) {
    // gcd-reduce the column below `top` by repeated division
    while (true) {
      size_t piv = rows.size();
      for (size_t i = top; i < rows.size(); ++i)
        if (rows[i][static_cast<size_t>(col)] != 0 &&
            (piv == rows.size() || std::llabs(rows[i][static_cast<size_t>(col)]) <
                                       std::llabs(rows[piv][static_cast<size_t>(col)])))
          piv = i;
      if (piv == rows.size()) break;  // column clear below top
      std::swap(rows[top], rows[piv]);
      bool cleared = true;
      for (size_t i = top + 1; i < rows.size(); ++i) {
        long long q = rows[i][static_cast<size_t>(col)] / rows[top][static_cast<size_t>(col)];
        if (q != 0)
          for (int j = 0; j < k; ++j) rows[i][static_cast<size_t>(j)] -= q * rows[top][static_cast<size_t>(j)];
        if (rows[i][static_cast<size_t>(col)] != 0) cleared = false;
      }
      if (cleared) {
        if (rows[top][static_cast<size_t>(col)] < 0)
          for (int j = 0; j < k; ++j) rows[top][static_cast<size_t>(j)] = -rows[top][static_cast<size_t>(j)];
        // reduce entries above the pivot
        for (size_t i = 0; i < top; ++i) {
          long long q = rows[i][static_cast<size_t>(col)];
          long long p = rows[top][static_cast<size_t>(col)];
          long long f = (q % p + p) % p;
          long long mult = (q - f) / p;
          if (mult != 0)
            for (int j = 0; j < k; ++j)
              rows[i][static_cast<size_t>(j)] -= mult * rows[top][static_cast<size_t>(j)];
        }
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  return rows;
}

bool lattice_contains(const std::vector<std::vector<long long>>& hnf_basis, const std::vector<int>& v) {
  std::vector<long long> r(v.begin(), v.end());
  for (const auto& row : hnf_basis) {
    int piv = 0;
    while (piv < static_cast<int>(row.size()) && row[static_cast<size_t>(piv)] == 0) ++piv;
    if (piv == static_cast<int>(row.size())) continue;
    if (r[static_cast<size_t>(piv)] % row[static_cast<size_t>(piv)] != 0) {
      // can't clear this coordinate with later rows (echelon form)
      if (r[static_cast<size_t>(piv)] != 0) return false;
      continue;
    }
    long long q = r[static_cast<size_t>(piv)] / row[static_cast<size_t>(piv)];
    if (q != 0)
      for (size_t j = 0; j < row.size(); ++j) r[j] -= q * row[j];
  }
  return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
}

namespace {

struct SmithResult {
  std::vector<long long> diag;                  // nonzero invariant factors
  std::vector<std::vector<long long>> v_inv;    // k x k, rows of V^{-1}
};

// Smith form U G V = diag(d_i) for an r x k integer matrix G.  Only the
// invariant factors and V^{-1} are needed downstream.
SmithResult smith_form(std::vector<std::vector<long long>> g, int k) {
  const size_t rows = g.size();
  std::vector<std::vector<long long>> vinv(static_cast<size_t>(k),
                                           std::vector<long long>(static_cast<size_t>(k), 0));
  for (int i = 0; i < k; ++i) vinv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

  auto col_swap = [&](int a, int b) {
    for (size_t i = 0; i < rows; ++i) std::swap(g[i][static_cast<size_t>(a)], g[i][static_cast<size_t>(b)]);
    std::swap(vinv[static_cast<size_t>(a)], vinv[static_cast<size_t>(b)]);  // inverse op: row swap
  };
  auto col_add = [&](int dst, int src, long long q) {  // col_dst += q col_src
    for (size_t i = 0; i < rows; ++i)
      g[i][static_cast<size_t>(dst)] += q * g[i][static_cast<size_t>(src)];
    for (int j = 0; j < k; ++j)  // inverse op on V^{-1}: row_src -= q row_dst
      vinv[static_cast<size_t>(src)][static_cast<size_t>(j)] -=
          q * vinv[static_cast<size_t>(dst)][static_cast<size_t>(j)];
  };
  auto col_neg = [&](int a) {
    for (size_t i = 0; i < rows; ++i) g[i][static_cast<size_t>(a)] = -g[i][static_cast<size_t>(a)];
    for (int j = 0; j < k; ++j)
      vinv[static_cast<size_t>(a)][static_cast<size_t>(j)] = -vinv[static_cast<size_t>(a)][static_cast<size_t>(j)];
  };
  auto row_swap = [&](size_t a, size_t b) { std::swap(g[a], g[b]); };
  auto row_add = [&](size_t dst, size_t src, long long q) {
    for (int j = 0; j < k; ++j) g[dst][static_cast<size_t>(j)] += q * g[src][static_cast<size_t>(j)];
  };

  size_t t = 0;
  for (int c = 0; c < k && t < rows; ++c) {
    // find a pivot in the submatrix
    size_t pi = rows;
    int pj = -1;
    for (size_t i = t; i < rows; ++i)
      for (int j = c; j < k; ++j)
        if (g[i][static_cast<size_t>(j)] != 0 &&
            (pi == rows || std::llabs(g[i][static_cast<size_t>(j)]) <
                               std::llabs(g[pi][static_cast<size_t>(pj)])))
          pi = i, pj = j;
    if (pi == rows) break;
    row_swap(t, pi);
    col_swap(c, pj);
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = t + 1; i < rows; ++i)
        if (g[i][static_cast<size_t>(c)] != 0) {
          long long q = g[i][static_cast<size_t>(c)] / g[t][static_cast<size_t>(c)];
          row_add(i, t, -q);
          if (g[i][static_cast<size_t>(c)] != 0) {
            row_swap(t, i);
            again = true;
          }
        }
      for (int j = c + 1; j < k; ++j)
        if (g[t][static_cast<size_t>(j)] != 0) {
          long long q = g[t][static_cast<size_t>(j)] / g[t][static_cast<size_t>(c)];
          col_add(j, c, -q);
          if (g[t][static_cast<size_t>(j)] != 0) {
            col_swap(c, j);
            again = true;
          }
        }
    }
    if (g[t][static_cast<size_t>(c)] < 0) col_neg(c);
    ++t;
  }
  SmithResult out;
  for (size_t i = 0; i < t; ++i) out.diag.push_back(g[i][i]);
  out.v_inv = std::move(vinv);
  return out;
}

// Canonical invariant factors of a diagonal form: pairwise gcd/lcm sweeps
// converge to the divisor chain and preserve the equivalence class.
std::vector<long long> divisor_chain(std::vector<long long> diag) {
  for (size_t pass = 0; pass + 1 < diag.size(); ++pass)
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
      long long gg = std::gcd(diag[i], diag[i + 1]);
      long long l = diag[i] / gg * diag[i + 1];
      diag[i] = gg;
      diag[i + 1] = l;
    }
  return diag;
}

}  // namespace

AnnihilatorData character_annihilator(const std::vector<std::vector<long long>>& basis, int k) {
  AnnihilatorData out;
  if (basis.empty()) {
    out.torus_rank = k;  // N = T^k, N_perp = 0
    return out;
  }
  SmithResult s = smith_form(basis, k);
  out.invariant_factors = divisor_chain(s.diag);
  int r = static_cast<int>(s.diag.size());
  out.torus_rank = k - r;
  // N_perp is spanned by d_i * (row i of V^{-1}), valid for any diagonal form
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> row = s.v_inv[static_cast<size_t>(i)];
    for (auto& x : row) x *= s.diag[static_cast<size_t>(i)];
    rows.push_back(std::move(row));
  }
  out.n_perp_basis = hermite_basis(std::move(rows), k);
  return out;
}

// ---- periodicity checks --------------------------------------------------------

int default_periodicity_depth(const KGraph& g) { return g.vertex_count() + 1; }

PeriodicCheck check_periodic(const KGraph& g, int v, const Degree& m, const Degree& n, int depth,
                             int cap) {
  Degree block = Degree::uniform(g.colors(), depth);
  Degree full = m.join(n).plus(block);
  PeriodicCheck out;
  out.depth = depth;
  for_each_path(
      g, v, full, {},
      [&](const Path& p) {
        if (subpath(g, p, m, m.plus(block)) != subpath(g, p, n, n.plus(block))) {
          out.refuted = true;
          out.witness = p;
          return false;
        }
        return true;
      },
      cap);
  return out;
}

PeriodicCheck periodic_pair(const KGraph& g, const Path& a, const Path& b, int depth, int cap) {
  if (a.source(g) != b.source(g) || a.range != b.range)
    throw InputError("periodic_pair needs common source and range");
  PeriodicCheck out;
  out.depth = depth;
  Degree common = a.deg.meet(b.deg).plus(Degree::uniform(g.colors(), depth));
  Degree zero(g.colors());
  for_each_path(
      g, a.source(g), Degree::uniform(g.colors(), depth), {},
      [&](const Path& ext) {
        Path pa = compose(g, a, ext);
        Path pb = compose(g, b, ext);
        if (subpath(g, pa, zero, common) != subpath(g, pb, zero, common)) {
          out.refuted = true;
          out.witness = ext;
          return false;
        }
        return true;
      },
      cap);
  return out;
}

PeriodicityGroup per_group(const KGraph& g, const Degree& max_degree, int depth, int base_vertex,
                           int cap) {
  PeriodicityGroup out;
  out.depth = depth;
  out.base_vertex = base_vertex;
  const int k = g.colors();

  std::vector<Degree> degs;
  Degree d(k);
  std::function<void(int)> rec = [&](int c) {
    if (c == k) {
      degs.push_back(d);
      return;
    }
    for (int i = 0; i <= max_degree[c]; ++i) {
      d[c] = i;
      rec(c + 1);
    }
  };
  rec(0);
  std::stable_sort(degs.begin(), degs.end(), [](const Degree& a, const Degree& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return b.c < a.c;
  });

  std::vector<std::vector<long long>> raw;
  for (size_t i = 0; i < degs.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      const Degree& m = degs[i];
      const Degree& n = degs[j];
      std::vector<int> diff = m.signed_difference(n);
      if (lattice_contains(out.basis, diff)) continue;  // already generated
      PeriodicCheck chk = check_periodic(g, base_vertex, m, n, depth, cap);
      if (chk.refuted) continue;
      raw.push_back(std::vector<long long>(diff.begin(), diff.end()));
      out.basis = hermite_basis(raw, k);
      out.witnesses.push_back({base_vertex, m, n});
    }
  return out;
}

// ---- aperiodicity criterion ------------------------------------------------------

std::optional<CollisionWitness> aperiodicity_collision(const KGraph& g, const WeightFunctor& y,
                                                       const SpectralData& sd, const Degree& max_degree,
                                                       double tol, int cap) {
  const int k = g.colors();
  std::vector<Degree> degs;
  Degree d(k);
  std::function<void(int)> rec = [&](int c) {
    if (c == k) {
      degs.push_back(d);
      return;
    }
    for (int i = 0; i <= max_degree[c]; ++i) {
      d[c] = i;
      rec(c + 1);
    }
  };
  rec(0);
  std::stable_sort(degs.begin(), degs.end(), [](const Degree& a, const Degree& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return b.c < a.c;
  });

  double beta = sd.theta;
  auto modified_weight = [&](const Path& p) {
    return y(p) + sd.log_rho_dot(std::vector<int>(p.deg.c.begin(), p.deg.c.end())) / beta;
  };

  for (size_t i = 0; i < degs.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      if (degs[i] == degs[j]) continue;
      std::optional<CollisionWitness> found;
      // collect values for the smaller-degree side once
      std::vector<std::pair<double, Path>> side;
      for (int v = 0; v < g.vertex_count(); ++v)
        for_each_path(
            g, v, degs[j], {},
            [&](const Path& p) {
              side.emplace_back(modified_weight(p), p);
              return true;
            },
            cap);
      for (int v = 0; v < g.vertex_count() && !found; ++v)
        for_each_path(
            g, v, degs[i], {},
            [&](const Path& p) {
              double w = modified_weight(p);
              for (const auto& [w2, p2] : side) {
                double scale = std::max({1.0, std::abs(w), std::abs(w2)});
                if (std::abs(w - w2) <= tol * scale) {
                  found = CollisionWitness{p, p2, w, w2};
                  return false;
                }
              }
              return true;
            },
            cap);
      if (found) return found;
    }
  return std::nullopt;
}

}  // namespace kgraph
