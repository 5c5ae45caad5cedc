#include <CLI11.hpp>
#include <iostream>

#include "kgraph/report.hpp"

namespace {

void add_common_flags(CLI::App* sub, kgraph::RunConfig& cfg) {
  sub->add_option("--graph", cfg.graph_file, "graph file")->required();
  sub->add_option("--functor", cfg.functor, "functor: zero | sample | <file>")
      ->capture_default_str();
  sub->add_option("--theta", cfg.theta, "deformation parameter")->capture_default_str();
  sub->add_option_function<double>(
      "--beta", [&cfg](const double& v) { cfg.beta = v; }, "inverse temperature (default: theta)");
  sub->add_option("--max-degree", cfg.max_degree, "per-coordinate degree cap for scans")
      ->capture_default_str();
  sub->add_option_function<int>(
      "--depth", [&cfg](const int& v) { cfg.depth = v; },
      "periodicity certification depth (default: vertices + 1)");
  sub->add_option("--mmax", cfg.m_max, "maximum cover depth")->capture_default_str();
  sub->add_option_function<double>(
      "--tol", [&cfg](const double& v) { cfg.tol = v; }, "tolerance (per-command default)");
  sub->add_option("--out", cfg.out_dir, "directory for CSV artifacts");
  sub->add_option("--seed", cfg.seed, "seed for sampled functors and characters")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral, measure, KMS and Hausdorff computations on finite k-graphs"};
  app.require_subcommand(1);

  kgraph::RunConfig cfg;
  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(const kgraph::RunConfig&, std::ostream&);
  };
  const Cmd cmds[] = {
      {"validate", "validate a graph file", kgraph::cmd_validate},
      {"functor-space", "solve the square constraints", kgraph::cmd_functor_space},
      {"spectral", "deformed matrices and their common eigendata", kgraph::cmd_spectral},
      {"measure", "cylinder measures and their residuals", kgraph::cmd_measure},
      {"periodicity", "periodicity group and aperiodicity criterion", kgraph::cmd_periodicity},
      {"kms-check", "KMS condition residual sweep", kgraph::cmd_kms_check},
      {"weight", "weight conditions and level decay", kgraph::cmd_weight},
      {"hausdorff", "cover sums and dimension estimate", kgraph::cmd_hausdorff},
      {"report", "run every stage and collect artifacts", kgraph::cmd_report},
  };
  for (const Cmd& c : cmds) add_common_flags(app.add_subcommand(c.name, c.help), cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const Cmd& c : cmds)
      if (app.get_subcommand(c.name)->parsed()) {
        c.fn(cfg, std::cout);
        return 0;
      }
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const kgraph::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const kgraph::PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 3;
  } catch (const kgraph::ComputeError& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
