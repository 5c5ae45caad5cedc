#ifndef KGRAPH_HAUSDORFF_HPP
#define KGRAPH_HAUSDORFF_HPP

#include "kgraph/bratteli.hpp"

namespace kgraph {

/// S_M(s) = sum over length-M level paths of w(p)^s.  The parallel kernel
/// splits on a prefix level and combines subtree sums through a fixed-shape
/// tree, so results are identical for any thread count.
double cover_sum(const WeightFn& w, int M, double s, bool parallel = true);
/// Straightforward depth-first accumulation; reference for the kernel.
double cover_sum_serial(const WeightFn& w, int M, double s);

struct DimensionEstimate {
  double value = 0.0;
  double lo = 0.0, hi = 0.0;
  int cover_sum_evaluations = 0;
};

/// Bisection on the exponent: s is below the dimension when M -> S_M(s)
/// grows across the upper window of depths, above when it shrinks.  A mixed
/// signature is reported as an error, never resolved silently.
DimensionEstimate dimension_estimate(const WeightFn& w, int m_max, double tol, double s_hi = 4.0,
                                     bool parallel = true);

struct HausdorffValue {
  double measure = 0.0;           // w(p)^theta
  double deviation_from_mu = 0.0; // |w(p)^theta - mu(Z(p))|
};
HausdorffValue hausdorff_measure(const WeightFn& w, const BratteliPath& p);

}  // namespace kgraph

#endif
