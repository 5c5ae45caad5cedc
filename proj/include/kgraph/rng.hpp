#ifndef KGRAPH_RNG_HPP
#define KGRAPH_RNG_HPP

#include <cstdint>
#include <random>

namespace kgraph {

/// Seeded generator with platform-independent mappings.  std:: distributions
/// are implementation defined, so uniform draws are derived from raw bits.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t bits() { return gen_(); }

  /// Uniform dyadic rational in [0,1) with denominator 2^16.  Dyadics of this
  /// size survive double arithmetic exactly, which keeps sampled functors
  /// checkable by exact rational re-evaluation.
  double dyadic_unit() { return static_cast<double>(gen_() >> 48) / 65536.0; }

  /// Uniform in [0,1) at full double resolution.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  uint64_t below(uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kgraph

#endif
