#include "kgraph/kms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kgraph/parallel.hpp"

namespace kgraph {

Monomial make_monomial(const KGraph& g, Path lambda, Path nu) {
  if (lambda.source(g) != nu.source(g)) throw InputError("monomial legs need a common source");
  return Monomial{std::move(lambda), std::move(nu)};
}

void FormalSum::add(const Monomial& m, std::complex<double> c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != 0.0) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

std::complex<double> Character::pow(const std::vector<int>& m) const {
  double turns = 0.0;
  for (size_t i = 0; i < m.size(); ++i) turns += m[i] * angle[i];
  turns -= std::floor(turns);  // reduce mod 1 before exponentiating
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

double cocycle(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& a,
               const Path& b) {
  if (a.source(g) != b.source(g)) throw InputError("cocycle needs same-source paths");
  return y(a) - y(b) + sd.log_rho_dot(a.deg.signed_difference(b.deg)) / sd.theta;
}

std::complex<double> act_phase(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double t,
                               const Monomial& m) {
  return std::polar(1.0, t * cocycle(g, y, sd, m.lambda, m.nu));
}

double act_analytic(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                    const Monomial& m) {
  (void)g;
  double ylam = y(m.lambda), ynu = y(m.nu);
  return std::exp(-beta * (ylam - ynu)) *
         std::exp(beta / sd.theta * sd.log_rho_dot(m.nu.deg.signed_difference(m.lambda.deg)));
}

FormalSum multiply(const KGraph& g, const Monomial& a, const Monomial& b, int cap) {
  FormalSum out;
  if (a.nu.range != b.lambda.range) return out;  // orthogonal projections
  for (const auto& [xi, zeta] : lambda_min(g, a.nu, b.lambda, cap))
    out.add(Monomial{compose(g, a.lambda, xi), compose(g, b.nu, zeta)}, 1.0);
  return out;
}

bool PeriodicityOracle::pair_verified(const Path& a, const Path& b) {
  if (a == b) return true;
  if (a.range != b.range || a.source(g_) != b.source(g_)) return false;
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  bool verified = !periodic_pair(g_, key.first, key.second, depth_, cap_).refuted;
  cache_.emplace(key, verified);
  return verified;
}

std::complex<double> psi_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                               const Monomial& m) {
  if (m.lambda != m.nu) return 0.0;
  return mu(g, y, sd, m.lambda);
}

std::complex<double> psi_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                               const FormalSum& x) {
  std::complex<double> v = 0.0;
  for (const auto& [m, c] : x.terms()) v += c * psi_state(g, y, sd, m);
  return v;
}

OmegaValue omega_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                       const Monomial& m, const Character& z, PeriodicityOracle& oracle) {
  if (!oracle.pair_verified(m.lambda, m.nu)) return {0.0, oracle.depth()};
  std::complex<double> v = z.pow(m.lambda.deg.signed_difference(m.nu.deg)) * mu(g, y, sd, m.lambda);
  return {v, oracle.depth()};
}

std::complex<double> omega_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                                 const FormalSum& x, const Character& z, PeriodicityOracle& oracle) {
  std::complex<double> v = 0.0;
  for (const auto& [m, c] : x.terms()) v += c * omega_state(g, y, sd, m, z, oracle).value;
  return v;
}

double kms_residual_psi(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                        const Monomial& a, const Monomial& b, int cap) {
  std::complex<double> lhs = psi_state(g, y, sd, multiply(g, a, b, cap));
  std::complex<double> rhs = act_analytic(g, y, sd, beta, a) * psi_state(g, y, sd, multiply(g, b, a, cap));
  return std::abs(lhs - rhs);
}

double kms_residual_omega(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                          const Monomial& a, const Monomial& b, const Character& z,
                          PeriodicityOracle& oracle, int cap) {
  std::complex<double> lhs = omega_state(g, y, sd, multiply(g, a, b, cap), z, oracle);
  std::complex<double> rhs =
      act_analytic(g, y, sd, beta, a) * omega_state(g, y, sd, multiply(g, b, a, cap), z, oracle);
  return std::abs(lhs - rhs);
}

double SweepResult::max_residual() const {
  double m = max_residual_psi;
  for (double v : max_residual_omega) m = std::max(m, v);
  return m;
}

namespace {

// Precomputed combinatorics for the exhaustive sweep: path registries, a
// composition table, minimal-extension lists and depth-certified periodicity
// verdicts.  Everything is read-only during the parallel pass.
struct SweepTables {
  std::vector<Path> r1;  // monomial legs
  std::vector<Path> r2;  // products
  std::vector<int> comp;                               // r1 x r1 -> r2 index (-1 if not composable)
  std::vector<std::vector<std::pair<int, int>>> lmin;  // r1 x r1 -> (xi, zeta) index pairs
  std::vector<double> mu2;                             // mu per r2 path
  std::vector<uint8_t> periodic;                       // r2 x r2 verdicts
  std::vector<std::pair<int, int>> monomials;          // (lambda, nu) index pairs
  std::vector<double> fac;                             // analytic factor per monomial
  std::vector<std::vector<int>> ddiff;                 // d(lambda)-d(nu) per monomial

  size_t n1 = 0, n2 = 0;
  int at(int a, int b) const { return comp[static_cast<size_t>(a) * n1 + b]; }
};

SweepTables build_tables(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                         const Degree& cap_degree, int oracle_depth, const SweepOptions& opt) {
  SweepTables t;
  Degree cap2 = cap_degree.plus(cap_degree);
  t.r1 = enumerate_paths_up_to(g, cap_degree, opt.enum_cap);
  t.r2 = enumerate_paths_up_to(g, cap2, 2 * opt.enum_cap);
  t.n1 = t.r1.size();
  t.n2 = t.r2.size();

  std::map<Path, int> r2_index;
  for (size_t i = 0; i < t.r2.size(); ++i) r2_index.emplace(t.r2[i], static_cast<int>(i));
  std::map<Path, int> r1_index;
  for (size_t i = 0; i < t.r1.size(); ++i) r1_index.emplace(t.r1[i], static_cast<int>(i));

  t.comp.assign(t.n1 * t.n1, -1);
  for (size_t a = 0; a < t.n1; ++a)
    for (size_t b = 0; b < t.n1; ++b)
      if (t.r1[a].source(g) == t.r1[b].range)
        t.comp[a * t.n1 + b] = r2_index.at(compose(g, t.r1[a], t.r1[b]));

  t.lmin.assign(t.n1 * t.n1, {});
  for (size_t a = 0; a < t.n1; ++a)
    for (size_t b = 0; b < t.n1; ++b) {
      if (t.r1[a].range != t.r1[b].range) continue;
      auto& list = t.lmin[a * t.n1 + b];
      for (const auto& [xi, zeta] : lambda_min(g, t.r1[a], t.r1[b], opt.enum_cap))
        list.emplace_back(r1_index.at(xi), r1_index.at(zeta));
    }

  t.mu2.reserve(t.n2);
  for (const Path& p : t.r2) t.mu2.push_back(mu(g, y, sd, p));

  // Depth-certified periodicity verdicts.  Entries are independent, so the
  // parallel fill is deterministic.
  t.periodic.assign(t.n2 * t.n2, 0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
#endif
  for (long long a = 0; a < static_cast<long long>(t.n2); ++a) {
    for (size_t b = 0; b < t.n2; ++b) {
      const Path& pa = t.r2[static_cast<size_t>(a)];
      const Path& pb = t.r2[b];
      uint8_t v = 0;
      if (pa == pb)
        v = 1;
      else if (pa.range == pb.range && pa.source(g) == pb.source(g))
        v = periodic_pair(g, pa, pb, oracle_depth, 64).refuted ? 0 : 1;
      t.periodic[static_cast<size_t>(a) * t.n2 + b] = v;
    }
  }

  for (size_t l = 0; l < t.n1; ++l)
    for (size_t n = 0; n < t.n1; ++n) {
      if (t.r1[l].source(g) != t.r1[n].source(g)) continue;
      t.monomials.emplace_back(static_cast<int>(l), static_cast<int>(n));
      Monomial m{t.r1[l], t.r1[n]};
      t.fac.push_back(act_analytic(g, y, sd, beta, m));
      t.ddiff.push_back(t.r1[l].deg.signed_difference(t.r1[n].deg));
    }
  return t;
}

struct Tracker {
  double best = -1.0;
  long long pair_index = -1;
  void consider(double v, long long idx) {
    if (v > best || (v == best && (pair_index < 0 || idx < pair_index))) {
      best = v;
      pair_index = idx;
    }
  }
  void merge(const Tracker& o) {
    if (o.best > best || (o.best == best && o.pair_index >= 0 &&
                          (pair_index < 0 || o.pair_index < pair_index)))
      *this = o;
  }
};

}  // namespace

SweepResult kms_sweep(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                      const Degree& cap_degree, const std::vector<Character>& zs,
                      const SweepOptions& opt) {
  int depth = opt.oracle_depth < 0 ? default_periodicity_depth(g) : opt.oracle_depth;
  SweepTables t = build_tables(g, y, sd, beta, cap_degree, depth, opt);
  const long long M = static_cast<long long>(t.monomials.size());
  const long long total = M * M;
  const size_t nz = zs.size();

  // z^{d(lambda)-d(nu)} per monomial per character; a product of two of
  // these gives the constant character power of every term in a product.
  std::vector<std::vector<std::complex<double>>> zpow(nz);
  for (size_t zi = 0; zi < nz; ++zi) {
    zpow[zi].reserve(static_cast<size_t>(M));
    for (long long m = 0; m < M; ++m) zpow[zi].push_back(zs[zi].pow(t.ddiff[static_cast<size_t>(m)]));
  }

  const int threads = opt.parallel ? par::max_threads() : 1;
  std::vector<Tracker> psi_track(static_cast<size_t>(threads));
  std::vector<std::vector<Tracker>> omega_track(static_cast<size_t>(threads),
                                                std::vector<Tracker>(nz));

#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads) if (opt.parallel)
#endif
  for (long long q = 0; q < total; ++q) {
    const int tid = par::thread_id();
    const long long ai = q / M;
    const long long bi = q % M;
    const auto [lam, nu] = t.monomials[static_cast<size_t>(ai)];
    const auto [rho, eta] = t.monomials[static_cast<size_t>(bi)];

    double s_psi_ab = 0.0, s_per_ab = 0.0;
    for (const auto& [xi, zeta] : t.lmin[static_cast<size_t>(nu) * t.n1 + rho]) {
      int u = t.at(lam, xi);
      int w = t.at(eta, zeta);
      double m = t.mu2[static_cast<size_t>(u)];
      if (u == w) s_psi_ab += m;
      if (t.periodic[static_cast<size_t>(u) * t.n2 + static_cast<size_t>(w)]) s_per_ab += m;
    }
    double s_psi_ba = 0.0, s_per_ba = 0.0;
    for (const auto& [xi, zeta] : t.lmin[static_cast<size_t>(eta) * t.n1 + lam]) {
      int u = t.at(rho, xi);
      int w = t.at(nu, zeta);
      double m = t.mu2[static_cast<size_t>(u)];
      if (u == w) s_psi_ba += m;
      if (t.periodic[static_cast<size_t>(u) * t.n2 + static_cast<size_t>(w)]) s_per_ba += m;
    }

    const double fac = t.fac[static_cast<size_t>(ai)];
    psi_track[static_cast<size_t>(tid)].consider(std::abs(s_psi_ab - fac * s_psi_ba), q);
    for (size_t zi = 0; zi < nz; ++zi) {
      std::complex<double> zd = zpow[zi][static_cast<size_t>(ai)] * zpow[zi][static_cast<size_t>(bi)];
      omega_track[static_cast<size_t>(tid)][zi].consider(std::abs(zd * s_per_ab - fac * zd * s_per_ba),
                                                         q);
    }
  }

  Tracker psi;
  for (const auto& tr : psi_track) psi.merge(tr);
  std::vector<Tracker> omega(nz);
  for (size_t zi = 0; zi < nz; ++zi)
    for (int tid = 0; tid < threads; ++tid) omega[zi].merge(omega_track[static_cast<size_t>(tid)][zi]);

  SweepResult out;
  out.monomials = M;
  out.quadruples = total;
  out.max_residual_psi = std::max(0.0, psi.best);
  auto monomial_at = [&](long long idx) {
    auto [l, n] = t.monomials[static_cast<size_t>(idx)];
    return Monomial{t.r1[static_cast<size_t>(l)], t.r1[static_cast<size_t>(n)]};
  };
  if (psi.pair_index >= 0) {
    out.psi_witness_a = monomial_at(psi.pair_index / M);
    out.psi_witness_b = monomial_at(psi.pair_index % M);
  }
  Tracker worst_omega;
  for (size_t zi = 0; zi < nz; ++zi) {
    out.max_residual_omega.push_back(std::max(0.0, omega[zi].best));
    worst_omega.merge(omega[zi]);
  }
  if (worst_omega.pair_index >= 0) {
    out.omega_witness_a = monomial_at(worst_omega.pair_index / M);
    out.omega_witness_b = monomial_at(worst_omega.pair_index % M);
  }
  return out;
}

SweepResult kms_sweep_serial(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                             const Degree& cap_degree, const std::vector<Character>& zs,
                             SweepOptions opt) {
  // Independent reference path: no tables, every quadruple goes through the
  // generic multiply/state evaluation.
  int depth = opt.oracle_depth < 0 ? default_periodicity_depth(g) : opt.oracle_depth;
  PeriodicityOracle oracle(g, depth);
  std::vector<Path> r1 = enumerate_paths_up_to(g, cap_degree, opt.enum_cap);
  std::vector<Monomial> monomials;
  for (const Path& a : r1)
    for (const Path& b : r1)
      if (a.source(g) == b.source(g)) monomials.push_back(Monomial{a, b});

  SweepResult out;
  out.monomials = static_cast<long long>(monomials.size());
  out.quadruples = out.monomials * out.monomials;
  out.max_residual_omega.assign(zs.size(), 0.0);
  for (const Monomial& a : monomials)
    for (const Monomial& b : monomials) {
      double r = kms_residual_psi(g, y, sd, beta, a, b, 2 * opt.enum_cap);
      if (r > out.max_residual_psi) {
        out.max_residual_psi = r;
        out.psi_witness_a = a;
        out.psi_witness_b = b;
      }
      for (size_t zi = 0; zi < zs.size(); ++zi) {
        double ro = kms_residual_omega(g, y, sd, beta, a, b, zs[zi], oracle, 2 * opt.enum_cap);
        if (ro > out.max_residual_omega[zi]) {
          out.max_residual_omega[zi] = ro;
          out.omega_witness_a = a;
          out.omega_witness_b = b;
        }
      }
    }
  return out;
}

}  // namespace kgraph
