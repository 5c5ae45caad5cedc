#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "kgraph/bratteli.hpp"

using namespace kgraph;
using doctest::Approx;

namespace {

WeightFn make_weight(const KGraph& g, const WeightFunctor& y, const SpectralData& sd) {
  return WeightFn(g, y, sd);
}

}  // namespace

TEST_CASE("level colors cycle and level counts follow the matrices") {
  KGraph g = test::three_vertex();
  CHECK(level_color(g, 1) == 0);
  CHECK(level_color(g, 2) == 1);
  CHECK(level_color(g, 3) == 0);
  CHECK(degree_for_length(g, 5) == Degree{3, 2});

  for (int n = 0; n <= 6; ++n) {
    CHECK(static_cast<long long>(enumerate_level(g, n).size()) == count_level_paths(g, n));
    // per-level edge multiplicities follow the coordinate matrix of the color
    for (const BratteliPath& p : enumerate_level(g, n))
      for (int m = 1; m <= n; ++m)
        CHECK(g.edge(p.edges[static_cast<size_t>(m - 1)]).color == level_color(g, m));
  }
}

TEST_CASE("level paths convert to graph paths and back") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    for (int n = 0; n <= 5; ++n) {
      auto level = enumerate_level(g, n);
      // degree-preserving bijection onto the cyclic-degree path set
      size_t total = 0;
      for (int v = 0; v < g.vertex_count(); ++v)
        total += enumerate_paths(g, v, degree_for_length(g, n)).size();
      CHECK(level.size() == total);
      for (const BratteliPath& p : level) {
        Path q = to_path(g, p);
        CHECK(q.deg == degree_for_length(g, n));
        CHECK(from_path(g, q) == p);
      }
    }
  }
}

TEST_CASE("conversion rejects non-cyclic degrees and bad colors") {
  KGraph g = test::three_vertex();
  Path two_blue = enumerate_paths(g, g.vertex_index("u"), Degree{2, 0})[0];
  CHECK_THROWS_AS(from_path(g, two_blue), InputError);
  BratteliPath bad;
  bad.root = g.vertex_index("u");
  bad.edges = {g.edge_index("d0")};  // red edge at a blue level
  CHECK_THROWS_AS(to_path(g, bad), InputError);
}

TEST_CASE("weights: roots, dyadic decay, and the mu relation") {
  SUBCASE("one-vertex undeformed weight is dyadic in the length") {
    KGraph g = test::one_vertex();
    WeightFunctor y = WeightFunctor::zero(g);
    for (double theta : {0.6, 1.0, 1.7}) {
      SpectralData sd = pf_data(g, y, theta);
      WeightFn w = make_weight(g, y, sd);
      for (int n = 0; n <= 5; ++n)
        for (const BratteliPath& p : enumerate_level(g, n))
          CHECK(w(p) == Approx(std::pow(2.0, -n / theta)).epsilon(1e-12));
    }
  }
  SUBCASE("roots carry xi^{1/theta}") {
    KGraph g = test::three_vertex();
    WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 3);
    SpectralData sd = pf_data(g, y, 1.3);
    WeightFn w = make_weight(g, y, sd);
    for (int v = 0; v < g.vertex_count(); ++v) {
      BratteliPath root;
      root.root = v;
      CHECK(w(root) ==
            Approx(std::pow(sd.xi[static_cast<size_t>(v)], 1.0 / 1.3)).epsilon(1e-13));
    }
  }
  SUBCASE("w^theta equals mu on every cylinder") {
    for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
      WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 5);
      SpectralData sd = pf_data(g, y, 0.9);
      WeightFn w = make_weight(g, y, sd);
      for (int n = 0; n <= 5; ++n)
        for (const BratteliPath& p : enumerate_level(g, n))
          CHECK(std::pow(w(p), 0.9) == Approx(mu(g, y, sd, to_path(g, p))).epsilon(1e-12));
    }
  }
  SUBCASE("theta must be positive") {
    KGraph g = test::one_vertex();
    WeightFunctor y = WeightFunctor::zero(g);
    SpectralData sd = pf_data(g, y, 0.0);
    CHECK_THROWS_AS(WeightFn(g, y, sd), InputError);
  }
}

TEST_CASE("weight axioms hold exhaustively to depth 6") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    WeightFunctor y = test::admissible_sample(g, 1.2, 8);
    SpectralData sd = pf_data(g, y, 1.2);
    WeightFn w = make_weight(g, y, sd);
    REQUIRE(w.conditions_hold());
    double prev_sup = 2.0;
    for (int n = 0; n <= 6; ++n) {
      double sup = 0.0;
      for (const BratteliPath& p : enumerate_level(g, n)) {
        double wp = w(p);
        CHECK(wp > 0.0);
        if (n == 0) CHECK(wp <= 1.0);
        if (n >= 1) CHECK(wp <= w(p.prefix(n - 1)) + 1e-15);  // monotone under extension
        sup = std::max(sup, wp);
      }
      CHECK(sup < prev_sup);  // strict decay observed level by level
      prev_sup = sup;
    }
  }
}

TEST_CASE("self-similarity residuals") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 13);
    SpectralData sd = pf_data(g, y, 1.4);  // self-similarity needs no weight condition
    WeightFn w = make_weight(g, y, sd);
    for (int n = 0; n <= 4; ++n)
      for (const BratteliPath& p : enumerate_level(g, n)) {
        CHECK(self_similarity_residual(w, p, 0) == 0.0);
        for (int m = 1; m <= 3; ++m) CHECK(self_similarity_residual(w, p, m) <= 1e-12);
      }
  }
}

TEST_CASE("ultrametric distances") {
  KGraph g = test::one_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w = make_weight(g, y, sd);
  auto depth5 = enumerate_level(g, 5);

  SUBCASE("coinciding truncations return a flagged bound") {
    UltraDistance d = ultrametric(w, depth5[0], depth5[0]);
    CHECK_FALSE(d.exact);
    CHECK(d.value == Approx(w(depth5[0])));
  }
  SUBCASE("diverging truncations measure the common prefix") {
    UltraDistance d = ultrametric(w, depth5[0], depth5[1]);
    CHECK(d.exact);
    CHECK(d.value == Approx(std::pow(2.0, -4.0)));  // they split at the last level
  }
  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(ultrametric(w, depth5[0], depth5[0].prefix(3)), InputError);
  }
  SUBCASE("distinct roots are at distance one") {
    KGraph h = test::three_vertex();
    WeightFunctor yh = WeightFunctor::zero(h);
    SpectralData sdh = pf_data(h, yh, 1.0);
    WeightFn wh = make_weight(h, yh, sdh);
    auto l2 = enumerate_level(h, 2);
    bool seen = false;
    for (const auto& a : l2)
      for (const auto& b : l2)
        if (a.root != b.root) {
          CHECK(ultrametric(wh, a, b).value == 1.0);
          seen = true;
        }
    CHECK(seen);
  }
  SUBCASE("strong triangle inequality, exhaustively at depth 5") {
    for (const auto& a : depth5)
      for (const auto& b : depth5)
        for (const auto& c : depth5) {
          double ab = ultrametric(w, a, b).value;
          double ac = ultrametric(w, a, c).value;
          double cb = ultrametric(w, c, b).value;
          CHECK(ab <= std::max(ac, cb) + 1e-15);
        }
  }
}

TEST_CASE("diameters equal weights and are attained by divergent extensions") {
  KGraph g = test::one_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w = make_weight(g, y, sd);

  for (const BratteliPath& p : enumerate_level(g, 3)) {
    double diam = diameter(w, p);
    CHECK(diam == Approx(0.125));
    // two extensions that split immediately realize the diameter
    double best = 0.0;
    for (const BratteliPath& a : enumerate_level(g, 5))
      for (const BratteliPath& b : enumerate_level(g, 5)) {
        if (!(a.prefix(3) == p) || !(b.prefix(3) == p)) continue;
        UltraDistance d = ultrametric(w, a, b);
        if (d.exact) best = std::max(best, d.value);
      }
    CHECK(best == Approx(diam));
  }

  // nested cylinders have nonincreasing diameters
  for (const BratteliPath& p : enumerate_level(g, 4))
    CHECK(diameter(w, p) <= diameter(w, p.prefix(3)) + 1e-15);
}

TEST_CASE("metric operations refuse to run without the weight condition") {
  KGraph g = test::three_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  for (const char* id : {"c0", "a1", "b0", "d1"})
    y.edge_values[static_cast<size_t>(g.edge_index(id))] = 3.0;
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w(g, y, sd);
  CHECK_FALSE(w.conditions_hold());
  auto l1 = enumerate_level(g, 1);
  CHECK_THROWS_AS(ultrametric(w, l1[0], l1[0]), PropertyViolation);
  CHECK_THROWS_AS(diameter(w, l1[0]), PropertyViolation);
  // the weight itself stays computable
  CHECK(w(l1[0]) > 0.0);
}
