#ifndef KGRAPH_KMS_HPP
#define KGRAPH_KMS_HPP

#include <complex>
#include <map>
#include <unordered_map>
#include <vector>

#include "kgraph/measure.hpp"
#include "kgraph/periodicity.hpp"
#include "kgraph/spectral.hpp"

namespace kgraph {

/// Generator pair (lambda, nu) with common source, standing for the partial
/// isometry product s_lambda s_nu^*.
struct Monomial {
  Path lambda, nu;
  bool operator<(const Monomial& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return nu < o.nu;
  }
  bool operator==(const Monomial& o) const { return lambda == o.lambda && nu == o.nu; }
};

Monomial make_monomial(const KGraph& g, Path lambda, Path nu);

/// Finite complex combination of monomials; zero coefficients are pruned.
/// Ordered storage keeps downstream output deterministic.
class FormalSum {
 public:
  void add(const Monomial& m, std::complex<double> c);
  const std::map<Monomial, std::complex<double>>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

 private:
  std::map<Monomial, std::complex<double>> terms_;
};

/// Point of T^k stored as angles in [0,1)^k (fractions of a full turn).
struct Character {
  std::vector<double> angle;
  static Character one(int k) { return Character{std::vector<double>(static_cast<size_t>(k), 0.0)}; }
  std::complex<double> pow(const std::vector<int>& m) const;
};

/// log of the one-parameter group's scaling on the class of (a, b):
/// y(a) - y(b) + sum_i (d(a)-d(b))_i ln(rho_i) / theta.
double cocycle(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& a,
               const Path& b);

/// Time-t phase attached to a monomial by the gauge action.
std::complex<double> act_phase(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double t,
                               const Monomial& m);

/// Real factor of the analytic continuation to t = i beta:
/// exp(-beta (y(lambda)-y(nu))) rho^{(beta/theta)(d(nu)-d(lambda))}.
double act_analytic(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                    const Monomial& m);

/// s_l s_n^* . s_r s_e^* = sum over minimal common extensions of (n, r).
FormalSum multiply(const KGraph& g, const Monomial& a, const Monomial& b, int cap = 12);

/// Memoizing depth-certified oracle for pair periodicity.
class PeriodicityOracle {
 public:
  PeriodicityOracle(const KGraph& g, int depth, int cap = 64) : g_(g), depth_(depth), cap_(cap) {}
  /// True when (a, b) is verified periodic at the configured depth.
  /// Pairs with mismatched endpoints are refuted outright.
  bool pair_verified(const Path& a, const Path& b);
  int depth() const { return depth_; }

 private:
  const KGraph& g_;
  int depth_;
  int cap_;
  std::map<std::pair<Path, Path>, bool> cache_;
};

/// State from integrating the diagonal expectation against mu:
/// psi(s_l s_n^*) = [l == n] mu(Z(l)).
std::complex<double> psi_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                               const FormalSum& x);
std::complex<double> psi_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                               const Monomial& m);

struct OmegaValue {
  std::complex<double> value;
  int certified_depth;
};
/// Extremal state attached to a character: z^{d(l)-d(n)} mu(Z(l)) on
/// depth-certified periodic pairs, 0 elsewhere.
OmegaValue omega_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                       const Monomial& m, const Character& z, PeriodicityOracle& oracle);
std::complex<double> omega_state(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                                 const FormalSum& x, const Character& z, PeriodicityOracle& oracle);

/// |phi(ab) - phi(b . act_{i beta}(a))| for a single pair of monomials.
double kms_residual_psi(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                        const Monomial& a, const Monomial& b, int cap = 12);
double kms_residual_omega(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                          const Monomial& a, const Monomial& b, const Character& z,
                          PeriodicityOracle& oracle, int cap = 12);

/// Exhaustive residual sweep over all monomial pairs with path degrees
/// bounded by `cap_degree`, for psi and each supplied character state.
struct SweepOptions {
  int oracle_depth = -1;  // -1: |vertices| + 1
  bool parallel = true;
  int enum_cap = 16;
};
struct SweepResult {
  long long monomials = 0;
  long long quadruples = 0;
  double max_residual_psi = 0.0;
  Monomial psi_witness_a, psi_witness_b;
  std::vector<double> max_residual_omega;  // one per character
  Monomial omega_witness_a, omega_witness_b;
  double max_residual() const;
};
SweepResult kms_sweep(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                      const Degree& cap_degree, const std::vector<Character>& zs,
                      const SweepOptions& opt = {});

/// Serial reference of the same sweep; kept for testing and benchmarking.
SweepResult kms_sweep_serial(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, double beta,
                             const Degree& cap_degree, const std::vector<Character>& zs,
                             SweepOptions opt = {});

}  // namespace kgraph

#endif
