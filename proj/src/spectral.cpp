#include "kgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "kgraph/parallel.hpp"

namespace kgraph {

std::vector<SquareMatrix<double>> build_deformed_matrices(const KGraph& g, const WeightFunctor& y,
                                                          double theta) {
  if (theta < 0.0) throw InputError("deformation parameter must be nonnegative");
  if (y.edge_values.size() != static_cast<size_t>(g.edge_count()))
    throw InputError("functor does not cover the edge set");
  std::vector<SquareMatrix<double>> B;
  B.reserve(static_cast<size_t>(g.colors()));
  for (int c = 0; c < g.colors(); ++c) {
    SquareMatrix<double> m(g.vertex_count());
    for (int e : g.edges_of_color(c))
      m(g.edge(e).rng, g.edge(e).src) += std::exp(-theta * y.edge(e));
    B.push_back(std::move(m));
  }
  return B;
}

std::vector<Degree> check_irreducible_family(const std::vector<SquareMatrix<double>>& family, int cap) {
  auto w = positivity_witness(family, cap);
  if (!w)
    throw ComputeError("family is not irreducible: no positivity witness with |n|_1 <= " +
                       std::to_string(cap));
  return *w;
}

double SpectralData::rho_power(const Degree& d) const {
  double r = 1.0;
  for (int i = 0; i < d.rank(); ++i)
    for (int t = 0; t < d[i]; ++t) r *= rho[static_cast<size_t>(i)];
  return r;
}

double SpectralData::rho_power_signed(const std::vector<int>& d) const {
  double r = 1.0;
  for (size_t i = 0; i < d.size(); ++i) r *= std::pow(rho[i], d[i]);
  return r;
}

double SpectralData::log_rho_dot(const std::vector<int>& d) const {
  double r = 0.0;
  for (size_t i = 0; i < d.size(); ++i) r += d[i] * std::log(rho[i]);
  return r;
}

SpectralData pf_data(const KGraph& g, const WeightFunctor& y, double theta, const PowerOptions& opt) {
  SpectralData sd;
  sd.theta = theta;
  sd.B = build_deformed_matrices(g, y, theta);
  sd.witness = check_irreducible_family(sd.B, opt.witness_cap);

  for (size_t i = 0; i < sd.B.size(); ++i)
    for (size_t j = i + 1; j < sd.B.size(); ++j)
      sd.commutation_defect =
          std::max(sd.commutation_defect, max_abs_difference(sd.B[i] * sd.B[j], sd.B[j] * sd.B[i]));

  const int n = g.vertex_count();
  SquareMatrix<double> mf(n);
  for (const Degree& d : sd.witness) mf += family_power(sd.B, d);

  // Power iteration on the strictly positive matrix B^F; convergence is
  // geometric, so the tight tolerance is cheap.
  std::vector<double> x(static_cast<size_t>(n), 1.0 / n);
  long long it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::vector<double> next = mf.apply(x);
    double norm = 0.0;
    for (double v : next) norm += v;
    if (!(norm > 0.0)) throw ComputeError("power iteration produced a nonpositive vector");
    double delta = 0.0;
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (delta <= opt.tolerance) break;
  }
  if (it == opt.max_iterations) throw ComputeError("power iteration did not converge");
  sd.iterations = it + 1;
  sd.xi = x;

  // The radii come off the common eigenvector: rho_i = ||B_i xi||_1.
  for (const auto& Bi : sd.B) {
    std::vector<double> bx = Bi.apply(sd.xi);
    double norm = 0.0;
    for (double v : bx) norm += v;
    sd.rho.push_back(norm);
  }
  double res = 0.0;
  for (size_t i = 0; i < sd.B.size(); ++i) {
    std::vector<double> bx = sd.B[i].apply(sd.xi);
    for (int v = 0; v < n; ++v)
      res = std::max(res, std::abs(bx[static_cast<size_t>(v)] -
                                   sd.rho[i] * sd.xi[static_cast<size_t>(v)]));
  }
  sd.residual = res;
  for (double v : sd.xi)
    if (!(v > 0.0)) throw PropertyViolation("eigenvector has a nonpositive entry");
  return sd;
}

RhoProductResiduals rho_product_check(const KGraph& g, const WeightFunctor& y, const SpectralData& sd) {
  if (g.colors() != 2) throw InputError("rho product identity needs the two-color three-vertex fixture");
  int a0, b0, c1, d1;
  try {
    a0 = g.edge_index("a0");
    b0 = g.edge_index("b0");
    c1 = g.edge_index("c1");
    d1 = g.edge_index("d1");
  } catch (const InputError&) {
    throw InputError("rho product identity needs edges a0,b0,c1,d1 (three-vertex fixture)");
  }
  RhoProductResiduals r{};
  r.product = sd.rho[0] * sd.rho[1];
  r.vs_c1d1 = std::abs(r.product - 2.0 * std::exp(-sd.theta * (y.edge(c1) + y.edge(d1))));
  r.vs_a0b0 = std::abs(r.product - 2.0 * std::exp(-sd.theta * (y.edge(a0) + y.edge(b0))));
  return r;
}

namespace {

ThetaSample sample_at(const KGraph& g, const WeightFunctor& y, double theta, double h,
                      const PowerOptions& opt) {
  if (theta - h <= 0.0) throw InputError("theta grid touches zero at step size h");
  ThetaSample s;
  s.theta = theta;
  SpectralData at = pf_data(g, y, theta, opt);
  SpectralData hi = pf_data(g, y, theta + h, opt);
  SpectralData lo = pf_data(g, y, theta - h, opt);
  SpectralData hi2 = pf_data(g, y, theta + h / 2, opt);
  SpectralData lo2 = pf_data(g, y, theta - h / 2, opt);
  s.rho = at.rho;
  s.xi = at.xi;
  const int k = g.colors();
  for (int i = 0; i < k; ++i) {
    size_t ii = static_cast<size_t>(i);
    s.drho_h.push_back((hi.rho[ii] - lo.rho[ii]) / (2 * h));
    s.drho_h2.push_back((hi2.rho[ii] - lo2.rho[ii]) / h);
    s.d2rho.push_back((hi.rho[ii] - 2 * at.rho[ii] + lo.rho[ii]) / (h * h));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    size_t vv = static_cast<size_t>(v);
    s.dxi_h.push_back((hi.xi[vv] - lo.xi[vv]) / (2 * h));
    s.dxi_h2.push_back((hi2.xi[vv] - lo2.xi[vv]) / h);
  }
  if (g.vertex_count() == 1) {
    for (int i = 0; i < k; ++i) {
      size_t ii = static_cast<size_t>(i);
      double psi = std::pow(at.rho[ii], 1.0 / theta);
      // slope of rho with theta: sum over color-i edges of -y(e) exp(-theta y(e))
      double drho = 0.0;
      for (int e : g.edges_of_color(i)) drho += -y.edge(e) * std::exp(-theta * y.edge(e));
      double closed = (1.0 / theta) * std::pow(at.rho[ii], (1.0 - theta) / theta) * drho;
      double frozen = (std::pow(hi.rho[ii], 1.0 / theta) - std::pow(lo.rho[ii], 1.0 / theta)) / (2 * h);
      double full = (std::pow(hi.rho[ii], 1.0 / (theta + h)) - std::pow(lo.rho[ii], 1.0 / (theta - h))) /
                    (2 * h);
      s.psi.push_back(psi);
      s.dpsi_closed.push_back(closed);
      s.dpsi_frozen_fd.push_back(frozen);
      s.dpsi_full_fd.push_back(full);
    }
  }
  return s;
}

}  // namespace

std::vector<ThetaSample> theta_profile(const KGraph& g, const WeightFunctor& y,
                                       const std::vector<double>& grid, double h,
                                       const PowerOptions& opt) {
  if (h <= 0.0) throw InputError("finite-difference step must be positive");
  for (double t : grid)
    if (t <= 0.0) throw InputError("theta grid touches zero");
  std::vector<ThetaSample> out(grid.size());
  std::exception_ptr err;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
    try {
      out[static_cast<size_t>(i)] = sample_at(g, y, grid[static_cast<size_t>(i)], h, opt);
    } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

WeightConditions check_weight_conditions(const SpectralData& sd) {
  WeightConditions wc;
  wc.all_rho_above_one = true;
  for (double r : sd.rho)
    if (!(r > 1.0)) wc.all_rho_above_one = false;
  for (size_t i = 0; i < sd.B.size(); ++i) {
    if (sd.rho[i] > sd.B[i].max_entry()) {
      wc.some_rho_dominates_entries = true;
      wc.dominating_color = static_cast<int>(i);
      break;
    }
  }
  for (size_t i = 0; i < sd.B.size(); ++i) {
    bool all_rows = true;
    for (int v = 0; v < sd.B[i].size(); ++v) {
      int nonzero = 0;
      for (int w = 0; w < sd.B[i].size(); ++w)
        if (sd.B[i](v, w) > 0.0) ++nonzero;
      if (nonzero < 2) all_rows = false;
    }
    if (all_rows) {
      wc.row_criterion_applies = true;
      wc.row_criterion_color = static_cast<int>(i);
      break;
    }
  }
  return wc;
}

bool metric_conditions_hold(const KGraph& g, const SpectralData& sd) {
  WeightConditions wc = check_weight_conditions(sd);
  return g.vertex_count() == 1 ? wc.all_rho_above_one : wc.some_rho_dominates_entries;
}

}  // namespace kgraph
