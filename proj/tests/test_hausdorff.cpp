#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "kgraph/hausdorff.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace kgraph;
using doctest::Approx;

namespace {

// Independent route to the cover sums: transfer matrices per level instead
// of path enumeration.
double cover_sum_by_matrices(const WeightFn& w, int M, double s) {
  const KGraph& g = w.graph();
  const SpectralData& sd = w.spectral();
  int n = g.vertex_count();
  std::vector<double> vec(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    vec[static_cast<size_t>(v)] = std::pow(sd.xi[static_cast<size_t>(v)], s / sd.theta);
  for (int level = M; level >= 1; --level) {
    int c = level_color(g, level);
    SquareMatrix<double> t(n);
    for (int e : g.edges_of_color(c)) {
      double f = std::pow(std::exp(-w.functor().edge(e)) *
                              std::pow(sd.rho[static_cast<size_t>(c)], -1.0 / sd.theta),
                          s);
      t(g.edge(e).rng, g.edge(e).src) += f;
    }
    vec = t.apply(vec);
  }
  double total = 0.0;
  for (double v : vec) total += v;
  return total;
}

}  // namespace

TEST_CASE("closed-form cover sums on the undeformed one-vertex fixture") {
  KGraph g = test::one_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w(g, y, sd);
  for (int M = 0; M <= 8; ++M)
    for (double s : {0.5, 1.0, 1.5}) {
      double expect = std::pow(2.0, M * (1.0 - s));
      CHECK(cover_sum(w, M, s) == Approx(expect).epsilon(1e-12));
      CHECK(cover_sum_serial(w, M, s) == Approx(expect).epsilon(1e-12));
    }
  // M = 0 sums the root weights
  CHECK(cover_sum(w, 0, 2.0) == Approx(1.0));
}

TEST_CASE("parallel kernel matches the serial reference and the matrix route") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    WeightFunctor y = test::admissible_sample(g, 1.1, 2);
    SpectralData sd = pf_data(g, y, 1.1);
    WeightFn w(g, y, sd);
    for (int M : {0, 3, 7, 10})
      for (double s : {0.4, 1.1, 2.3}) {
        double kernel = cover_sum(w, M, s);
        CHECK(kernel == Approx(cover_sum_serial(w, M, s)).epsilon(1e-13));
        CHECK(kernel == Approx(cover_sum_by_matrices(w, M, s)).epsilon(1e-12));
      }
  }
}

#if defined(_OPENMP)
TEST_CASE("cover sums are bitwise identical for any thread count") {
  KGraph g = test::three_vertex();
  WeightFunctor y = test::admissible_sample(g, 0.9, 4);
  SpectralData sd = pf_data(g, y, 0.9);
  WeightFn w(g, y, sd);
  double wide = cover_sum(w, 9, 1.37);
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  double narrow = cover_sum(w, 9, 1.37);
  omp_set_num_threads(saved);
  CHECK(wide == narrow);  // exact equality, not approximate
}
#endif

TEST_CASE("self-similar mass is exactly one at s = theta") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    for (double theta : {0.7, 1.0, 1.6}) {
      WeightFunctor y = test::admissible_sample(g, theta, 6);
      SpectralData sd = pf_data(g, y, theta);
      WeightFn w(g, y, sd);
      for (int M = 0; M <= 8; ++M) CHECK(cover_sum(w, M, theta) == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("cover sums are monotone away from the critical exponent") {
  KGraph g = test::three_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w(g, y, sd);
  for (double s : {0.5, 0.95 - 0.05}) {
    double prev = cover_sum(w, 0, s);
    for (int M = 1; M <= 8; ++M) {
      double cur = cover_sum(w, M, s);
      if (M >= 2) CHECK(cur > prev);  // growth below the dimension
      prev = cur;
    }
  }
  for (double s : {1.05, 1.5}) {
    double prev = cover_sum(w, 1, s);
    for (int M = 2; M <= 8; ++M) {
      double cur = cover_sum(w, M, s);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("dimension estimates recover theta") {
  SUBCASE("undeformed fixtures across several exponents") {
    for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
      WeightFunctor y = WeightFunctor::zero(g);
      for (double theta : {0.6, 1.0, 1.7}) {
        SpectralData sd = pf_data(g, y, theta);
        WeightFn w(g, y, sd);
        DimensionEstimate est = dimension_estimate(w, 10, 1e-3);
        CHECK(std::abs(est.value - theta) <= 0.01);
      }
    }
  }
  SUBCASE("a sampled admissible functor") {
    KGraph g = test::one_vertex();
    WeightFunctor y = test::admissible_sample(g, 0.6, 10);
    SpectralData sd = pf_data(g, y, 0.6);
    WeightFn w(g, y, sd);
    DimensionEstimate est = dimension_estimate(w, 10, 1e-3);
    CHECK(std::abs(est.value - 0.6) <= 0.01);
  }
  SUBCASE("estimates are stable under doubling the depth") {
    KGraph g = test::three_vertex();
    WeightFunctor y = WeightFunctor::zero(g);
    SpectralData sd = pf_data(g, y, 1.3);
    WeightFn w(g, y, sd);
    double at5 = dimension_estimate(w, 5, 1e-3).value;
    double at10 = dimension_estimate(w, 10, 1e-3).value;
    CHECK(std::abs(at5 - at10) <= 2e-3);
  }
}

TEST_CASE("hausdorff measure equals mu cylinder by cylinder") {
  for (const KGraph& g : {test::one_vertex(), test::three_vertex()}) {
    for (double theta : {0.6, 1.0, 1.7}) {
      WeightFunctor y = WeightFunctor::zero(g);
      SpectralData sd = pf_data(g, y, theta);
      WeightFn w(g, y, sd);
      for (int n = 0; n <= 6; ++n)
        for (const BratteliPath& p : enumerate_level(g, n))
          CHECK(hausdorff_measure(w, p).deviation_from_mu <= 1e-12);
    }
  }
  // root cylinders carry the eigenvector entries
  KGraph g = test::three_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w(g, y, sd);
  BratteliPath root;
  root.root = g.vertex_index("u");
  CHECK(hausdorff_measure(w, root).measure ==
        Approx(sd.xi[static_cast<size_t>(g.vertex_index("u"))]).epsilon(1e-13));
}

TEST_CASE("metric refusal propagates to the cover machinery") {
  KGraph g = test::three_vertex();
  WeightFunctor y = WeightFunctor::zero(g);
  for (const char* id : {"c0", "a1", "b0", "d1"})
    y.edge_values[static_cast<size_t>(g.edge_index(id))] = 3.0;
  SpectralData sd = pf_data(g, y, 1.0);
  WeightFn w(g, y, sd);
  CHECK_THROWS_AS(cover_sum(w, 3, 1.0), PropertyViolation);
  CHECK_THROWS_AS(dimension_estimate(w, 8, 1e-3), PropertyViolation);
}
