#ifndef KGRAPH_REPORT_HPP
#define KGRAPH_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kgraph/hausdorff.hpp"
#include "kgraph/kms.hpp"

namespace kgraph {

struct RunConfig {
  std::string graph_file;
  std::string functor = "zero";  // "zero" | "sample" | path to a functor file
  double theta = 1.0;
  std::optional<double> beta;     // default: theta
  int max_degree = 2;             // per-coordinate cap for scans
  std::optional<int> depth;       // periodicity depth; default |V| + 1
  int m_max = 10;
  std::optional<double> tol;      // per-command default when absent
  uint64_t seed = 1;
  std::string out_dir;            // when set, CSV artifacts are written here
};

/// Loads and validates the graph and resolves the functor choice.
struct LoadedSystem {
  KGraph g;
  FunctorSpace space;
  WeightFunctor y;
};
LoadedSystem load_system(const RunConfig& cfg);

// Every command prints a human summary to `out`; with cfg.out_dir set, the
// matching CSV artifacts are written as side effects.  Errors are thrown
// (InputError/ComputeError/PropertyViolation) and mapped to exit codes by
// the CLI.
void cmd_validate(const RunConfig& cfg, std::ostream& out);
void cmd_functor_space(const RunConfig& cfg, std::ostream& out);
void cmd_spectral(const RunConfig& cfg, std::ostream& out);
void cmd_measure(const RunConfig& cfg, std::ostream& out);
void cmd_periodicity(const RunConfig& cfg, std::ostream& out);
void cmd_kms_check(const RunConfig& cfg, std::ostream& out);
void cmd_weight(const RunConfig& cfg, std::ostream& out);
void cmd_hausdorff(const RunConfig& cfg, std::ostream& out);
void cmd_report(const RunConfig& cfg, std::ostream& out);

// CSV writers, exposed for tests (byte-identical output for equal input).
void write_theta_profile_csv(std::ostream& out, const KGraph& g,
                             const std::vector<ThetaSample>& samples);
void write_measure_csv(std::ostream& out, const KGraph& g, const WeightFunctor& y,
                       const SpectralData& sd, int max_degree);
void write_cover_grid_csv(std::ostream& out, const WeightFn& w, int m_max,
                          const std::vector<double>& exponents);
void write_kms_csv(std::ostream& out, const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                   double beta, const Degree& cap, const std::vector<Character>& zs, int oracle_depth);

/// Full-precision decimal rendering used by every CSV artifact.
std::string fmt_double(double v);

std::vector<Character> sample_characters(int k, int count, uint64_t seed);

}  // namespace kgraph

#endif
