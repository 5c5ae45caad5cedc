#ifndef KGRAPH_MEASURE_HPP
#define KGRAPH_MEASURE_HPP

#include <optional>
#include <string>
#include <string_view>

#include "kgraph/spectral.hpp"

namespace kgraph {

/// mu(Z(p)) = exp(-theta y(p)) rho^{-d(p)} xi_{s(p)}: the unique probability
/// measure satisfying the conformality recursion for the deformed family.
double mu(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& p);

/// max over colors i and refinement depths m <= n of
/// |mu(p) - sum_{eta in s(p)Lambda^{m e_i}} mu(p eta)|.
double additivity_residual(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& p,
                           int n, int cap = 12);

/// |e^{beta y(b)} rho^{(beta/theta) d(b)} mu(b) - e^{beta y(a)} rho^{(beta/theta) d(a)} mu(a)|
/// for same-source paths a, b.  Vanishes exactly when beta == theta.
double quasi_invariance_residual(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                                 double beta, const Path& a, const Path& b);

/// Total mu-mass of cylinders Z(m), m of degree (lo join hi) + depth*(1,..,1),
/// on which the two shifts agree.  A finite-depth surrogate for the mass of
/// the shift-agreement set.
double shift_agreement_mass(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                            const Degree& m, const Degree& n, int depth, int cap = 16);

/// Two-state Markov construction on the bundled one-vertex fixture: given
/// x in (0,1/2) and y(e1) > 0, derives y(e2) so the cylinder measure becomes
/// the product measure with one-step probabilities (x, 1-x).
struct MarkovParams {
  WeightFunctor y;
  double theta = 0.0;
  double x = 0.0;
};
MarkovParams markov_from_x(const KGraph& g, double x, double y_e1, std::optional<double> theta = {});

/// Product-measure value x^{#0s} (1-x)^{#1s} of a binary word.
double markov_eval(std::string_view word, double x);

/// The alternating-color path spelled by a binary word on a one-vertex
/// two-color graph with two edges per color (digit selects the edge).
Path word_path(const KGraph& g, std::string_view word);

}  // namespace kgraph

#endif
