#ifndef KGRAPH_SPECTRAL_HPP
#define KGRAPH_SPECTRAL_HPP

#include <vector>

#include "kgraph/functor.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/matrix.hpp"

namespace kgraph {

/// Deformed coordinate matrices B_i(v,w) = sum over color-i edges from w to v
/// of exp(-theta * y(edge)).
std::vector<SquareMatrix<double>> build_deformed_matrices(const KGraph& g, const WeightFunctor& y,
                                                          double theta);

struct PowerOptions {
  double tolerance = 1e-13;
  long long max_iterations = 1000000;
  int witness_cap = 12;
};

/// Common Perron-Frobenius data of the deformed family at a fixed (y, theta):
/// spectral radii, the strictly positive l1-normalized common eigenvector,
/// and the residuals that certify them.
struct SpectralData {
  double theta = 0.0;
  std::vector<SquareMatrix<double>> B;
  std::vector<double> rho;
  std::vector<double> xi;
  std::vector<Degree> witness;  // F with B^F entrywise positive
  double residual = 0.0;        // max_i ||B_i xi - rho_i xi||_inf
  double commutation_defect = 0.0;
  long long iterations = 0;

  double rho_power(const Degree& d) const;                  // prod rho_i^{d_i}
  double rho_power_signed(const std::vector<int>& d) const; // d in Z^k
  double log_rho_dot(const std::vector<int>& d) const;      // sum d_i ln rho_i
};

/// Finds F with sum_{n in F} B^n positive.  Throws ComputeError at the cap.
std::vector<Degree> check_irreducible_family(const std::vector<SquareMatrix<double>>& family, int cap = 12);

SpectralData pf_data(const KGraph& g, const WeightFunctor& y, double theta, const PowerOptions& opt = {});

/// For the bundled three-vertex fixture: residuals of the closed-form
/// product identity rho_1 rho_2 = 2 e^{-theta(y(c1)+y(d1))} = 2 e^{-theta(y(a0)+y(b0))}.
struct RhoProductResiduals {
  double product;
  double vs_c1d1;
  double vs_a0b0;
};
RhoProductResiduals rho_product_check(const KGraph& g, const WeightFunctor& y, const SpectralData& sd);

struct ThetaSample {
  double theta = 0.0;
  std::vector<double> rho, xi;
  // central differences at step h and h/2, plus a second difference at h
  std::vector<double> drho_h, drho_h2, d2rho;
  std::vector<double> dxi_h, dxi_h2;
  // one-vertex graphs only: psi_i = rho_i^{1/theta}, its closed-form slope
  // with the outer exponent frozen, the matching frozen-exponent difference
  // quotient, and the full difference quotient of psi itself
  std::vector<double> psi, dpsi_closed, dpsi_frozen_fd, dpsi_full_fd;
};

/// Samples rho_i(theta), xi(theta) and their finite-difference derivatives
/// over a grid.  Grid points are independent and evaluated concurrently.
std::vector<ThetaSample> theta_profile(const KGraph& g, const WeightFunctor& y,
                                       const std::vector<double>& grid, double h,
                                       const PowerOptions& opt = {});

struct WeightConditions {
  bool all_rho_above_one = false;        // (w-I)
  bool some_rho_dominates_entries = false;  // (w-II)
  int dominating_color = -1;
  bool row_criterion_applies = false;  // some B_i has >= 2 nonzeros per row
  int row_criterion_color = -1;
};
WeightConditions check_weight_conditions(const SpectralData& sd);
/// The condition the metric modules require: (w-I) on one-vertex graphs,
/// (w-II) otherwise.
bool metric_conditions_hold(const KGraph& g, const SpectralData& sd);

}  // namespace kgraph

#endif
