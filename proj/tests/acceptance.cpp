// Acceptance suite: every numbered criterion below runs at its stated
// tolerance and prints one PASS/FAIL line.  The process exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "kgraph/hausdorff.hpp"
#include "kgraph/kms.hpp"
#include "kgraph/report.hpp"
#include "kgraph/rng.hpp"

using namespace kgraph;

namespace {

struct Criterion {
  int id;
  std::string label;
  double time_limit_s;  // 0: no limit
  std::function<void()> body;
};

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure{msg};
}

void require_close(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol))
    throw Failure{what + ": got " + fmt_double(got) + ", want " + fmt_double(want) + " (tol " +
                  fmt_double(tol) + ")"};
}

int run_all(const std::vector<Criterion>& cs) {
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.body();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verdict == "PASS" && c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      verdict = "FAIL";
      detail = "over time limit of " + fmt_double(c.time_limit_s) + " s";
    }
    std::printf("[%2d] %s  %-58s (%.2f s)%s%s\n", c.id, verdict.c_str(), c.label.c_str(), secs,
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (verdict == "FAIL") ++failed;
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", cs.size() - static_cast<size_t>(failed),
              cs.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main() {
  std::vector<Criterion> cs;
  const double r2 = std::sqrt(2.0);

  cs.push_back({1, "three-vertex eigendata: radii, eigenvector, product", 1.0, [&] {
                  KGraph g = test::three_vertex();
                  WeightFunctor y = WeightFunctor::zero(g);
                  SpectralData sd = pf_data(g, y, 1.0);
                  require_close(sd.rho[0], r2, 1e-10, "rho_1");
                  require_close(sd.rho[1], r2, 1e-10, "rho_2");
                  double denom = 2.0 + r2;
                  require_close(sd.xi[static_cast<size_t>(g.vertex_index("u"))], 1.0 / denom, 1e-10,
                                "xi_u");
                  require_close(sd.xi[static_cast<size_t>(g.vertex_index("v"))], r2 / denom, 1e-10,
                                "xi_v");
                  require_close(sd.xi[static_cast<size_t>(g.vertex_index("w"))], 1.0 / denom, 1e-10,
                                "xi_w");
                  require_close(sd.rho[0] * sd.rho[1], 2.0, 1e-10, "rho product");
                }});

  cs.push_back({2, "loop cylinder mass is half the eigenvector entry", 0.0, [&] {
                  KGraph g = test::three_vertex();
                  WeightFunctor y = WeightFunctor::zero(g);
                  SpectralData sd = pf_data(g, y, 1.0);
                  Path a0b0 = path_from_edges(g, {g.edge_index("a0"), g.edge_index("b0")});
                  double xi_u = sd.xi[static_cast<size_t>(g.vertex_index("u"))];
                  require_close(mu(g, y, sd, a0b0), 0.5 * xi_u, 1e-12, "mu(Z(a0.b0))");
                }});

  cs.push_back({3, "functor spaces: free variable counts 3 and 4", 0.0, [&] {
                  require(solve_constraints(test::one_vertex()).free_count() == 3,
                          "one-vertex free count != 3");
                  require(solve_constraints(test::three_vertex()).free_count() == 4,
                          "three-vertex free count != 4");
                }});

  cs.push_back({4, "markov correspondence at x = 0.3 to depth 8", 0.0, [&] {
                  KGraph g = test::one_vertex();
                  MarkovParams mp = markov_from_x(g, 0.3, 1.0, 1.0);
                  SpectralData sd = pf_data(g, mp.y, mp.theta);
                  Path e1 = path_from_edges(g, {g.edge_index("e1")});
                  require_close(mu(g, mp.y, sd, e1), 0.3, 1e-12, "mu(Z(e1))");
                  for (int len = 1; len <= 8; ++len)
                    for (int bits = 0; bits < (1 << len); ++bits) {
                      std::string word;
                      for (int i = 0; i < len; ++i) word += ((bits >> i) & 1) ? '1' : '0';
                      require_close(mu(g, mp.y, sd, word_path(g, word)), markov_eval(word, 0.3),
                                    1e-12, "word " + word);
                    }
                }});

  cs.push_back({5, "periodicity groups at depth |vertices|+1", 20.0, [&] {
                  auto t0 = std::chrono::steady_clock::now();
                  KGraph g1 = test::one_vertex();
                  PeriodicityGroup p1 =
                      per_group(g1, Degree{2, 2}, default_periodicity_depth(g1));
                  require(p1.basis == std::vector<std::vector<long long>>{{1, -1}},
                          "one-vertex basis is not {(1,-1)}");
                  double s1 =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                  require(s1 < 10.0, "one-vertex group took too long");

                  auto t1 = std::chrono::steady_clock::now();
                  KGraph g2 = test::three_vertex();
                  PeriodicityGroup p2 =
                      per_group(g2, Degree{3, 3}, default_periodicity_depth(g2));
                  require(p2.basis == std::vector<std::vector<long long>>{{2, -2}},
                          "three-vertex basis is not {(2,-2)}");
                  double s2 =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
                  require(s2 < 10.0, "three-vertex group took too long");
                }});

  cs.push_back({6, "KMS sweep: psi and 8 characters, degrees up to (2,2)", 60.0, [&] {
                  for (int which : {0, 1}) {
                    KGraph g = which == 0 ? test::one_vertex() : test::three_vertex();
                    std::vector<Character> zs = sample_characters(g.colors(), 8, 2024);
                    // undeformed system at theta = 1
                    {
                      WeightFunctor y = WeightFunctor::zero(g);
                      SpectralData sd = pf_data(g, y, 1.0);
                      SweepResult res = kms_sweep(g, y, sd, 1.0, Degree{2, 2}, zs);
                      require(res.max_residual() <= 1e-10,
                              "undeformed sweep residual " + fmt_double(res.max_residual()));
                    }
                    // sampled functor at theta = 1.3
                    {
                      WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 42);
                      SpectralData sd = pf_data(g, y, 1.3);
                      SweepResult res = kms_sweep(g, y, sd, 1.3, Degree{2, 2}, zs);
                      require(res.max_residual() <= 1e-10,
                              "sampled sweep residual " + fmt_double(res.max_residual()));
                    }
                  }
                }});

  cs.push_back({7, "one-vertex refutation at beta = theta +/- 0.2", 0.0, [&] {
                  KGraph g = test::one_vertex();
                  WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 42);
                  require(!y.is_zero(), "sampled functor is zero");
                  SpectralData sd = pf_data(g, y, 1.0);
                  for (double beta : {0.8, 1.2}) {
                    SweepResult res = kms_sweep(g, y, sd, beta, Degree{1, 1}, {});
                    require(res.max_residual_psi > 1e-6,
                            "no witness at beta " + fmt_double(beta) + " (max " +
                                fmt_double(res.max_residual_psi) + ")");
                  }
                }});

  cs.push_back({8, "quasi-invariance at beta = theta to degree (3,3)", 0.0, [&] {
                  for (int which : {0, 1}) {
                    KGraph g = which == 0 ? test::one_vertex() : test::three_vertex();
                    struct Run {
                      WeightFunctor y;
                      double theta;
                    };
                    std::vector<Run> runs;
                    runs.push_back({WeightFunctor::zero(g), 1.0});
                    runs.push_back({sample_nonnegative(g, solve_constraints(g), 7), 1.3});
                    for (const Run& r : runs) {
                      SpectralData sd = pf_data(g, r.y, r.theta);
                      auto paths = enumerate_paths_up_to(g, Degree{3, 3});
                      for (const Path& a : paths)
                        for (const Path& b : paths) {
                          if (a.source(g) != b.source(g)) continue;
                          double res = quasi_invariance_residual(g, r.y, sd, r.theta, a, b);
                          require(res <= 1e-12, "residual " + fmt_double(res) + " at " +
                                                    format_path(g, a) + " / " + format_path(g, b));
                        }
                    }
                  }
                }});

  cs.push_back({9, "self-similar cover mass S_M(theta) = 1 for M <= 8", 0.0, [&] {
                  auto check_system = [&](const KGraph& g, const WeightFunctor& y, double theta) {
                    SpectralData sd = pf_data(g, y, theta);
                    WeightFn w(g, y, sd);
                    for (int M = 0; M <= 8; ++M)
                      require_close(cover_sum(w, M, theta), 1.0, 1e-12,
                                    "S_" + std::to_string(M) + " at theta " + fmt_double(theta));
                  };
                  KGraph g1 = test::one_vertex();
                  KGraph g2 = test::three_vertex();
                  check_system(g1, WeightFunctor::zero(g1), 1.0);
                  check_system(g2, WeightFunctor::zero(g2), 1.0);
                  // ten sampled admissible (y, theta) pairs, five per fixture
                  Rng rng(777);
                  for (int i = 0; i < 10; ++i) {
                    const KGraph& g = (i % 2 == 0) ? g1 : g2;
                    double theta = 0.5 + 1.7 * rng.dyadic_unit();
                    WeightFunctor y = test::admissible_sample(g, theta, 100 + i);
                    check_system(g, y, theta);
                  }
                }});

  cs.push_back({10, "Hausdorff dimension is theta; H^theta matches mu", 120.0, [&] {
                  for (int which : {0, 1}) {
                    KGraph g = which == 0 ? test::one_vertex() : test::three_vertex();
                    WeightFunctor y = WeightFunctor::zero(g);
                    for (double theta : {0.6, 1.0, 1.7}) {
                      SpectralData sd = pf_data(g, y, theta);
                      WeightFn w(g, y, sd);
                      DimensionEstimate est = dimension_estimate(w, 10, 1e-3);
                      require(std::abs(est.value - theta) <= 0.01,
                              "dimension " + fmt_double(est.value) + " vs theta " +
                                  fmt_double(theta));
                      for (int n = 0; n <= 6; ++n)
                        for (const BratteliPath& p : enumerate_level(g, n))
                          require(hausdorff_measure(w, p).deviation_from_mu <= 1e-12,
                                  "H^theta vs mu at depth " + std::to_string(n));
                    }
                  }
                }});

  cs.push_back({11, "smoothness evidence on a 50-point grid in [0.5, 2]", 0.0, [&] {
                  auto stable = [](double a, double b) {
                    return std::abs(a - b) <= 1e-4 * std::max(std::abs(b), 1e-9);
                  };
                  for (int which : {0, 1}) {
                    KGraph g = which == 0 ? test::one_vertex() : test::three_vertex();
                    WeightFunctor y = sample_nonnegative(g, solve_constraints(g), 9);
                    require(!y.is_zero(), "sampled functor is zero");
                    std::vector<double> grid;
                    for (int i = 0; i < 50; ++i) grid.push_back(0.5 + 1.5 * i / 49.0);
                    auto prof = theta_profile(g, y, grid, 1e-3);
                    for (const auto& s : prof) {
                      for (int c = 0; c < g.colors(); ++c)
                        require(stable(s.drho_h[static_cast<size_t>(c)],
                                       s.drho_h2[static_cast<size_t>(c)]),
                                "rho derivative unstable at theta " + fmt_double(s.theta));
                      for (int v = 0; v < g.vertex_count(); ++v)
                        require(stable(s.dxi_h[static_cast<size_t>(v)],
                                       s.dxi_h2[static_cast<size_t>(v)]),
                                "xi derivative unstable at theta " + fmt_double(s.theta));
                    }
                    if (g.vertex_count() == 1) {
                      for (size_t i = 1; i < prof.size(); ++i)
                        for (int c = 0; c < g.colors(); ++c)
                          require(prof[i].psi[static_cast<size_t>(c)] <
                                      prof[i - 1].psi[static_cast<size_t>(c)],
                                  "psi not strictly decreasing at theta " +
                                      fmt_double(prof[i].theta));
                    }
                  }
                }});

  cs.push_back({12, "modified-weight collision witnesses on the one-vertex graph", 0.0, [&] {
                  KGraph g = test::one_vertex();
                  FunctorSpace space = solve_constraints(g);
                  for (uint64_t seed = 1; seed <= 5; ++seed) {
                    WeightFunctor y = sample_nonnegative(g, space, seed);
                    double beta = 0.6 + 0.25 * static_cast<double>(seed);
                    SpectralData sd = pf_data(g, y, beta);
                    auto hit = aperiodicity_collision(g, y, sd, Degree{2, 2});
                    require(hit.has_value(), "no collision at seed " + std::to_string(seed));
                    bool unit_pair = (hit->a.deg == Degree{0, 1} && hit->b.deg == Degree{1, 0});
                    require(unit_pair, "collision is not the cross-color unit pair");
                    require(std::abs(hit->lhs - hit->rhs) <=
                                1e-9 * std::max(1.0, std::abs(hit->lhs)),
                            "collision is not tight");
                  }
                }});

  return run_all(cs);
}
