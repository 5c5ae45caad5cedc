#include "kgraph/measure.hpp"

#include <cmath>

namespace kgraph {

double mu(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& p) {
  return std::exp(-sd.theta * y(p)) / sd.rho_power(p.deg) * sd.xi[static_cast<size_t>(p.source(g))];
}

double additivity_residual(const KGraph& g, const WeightFunctor& y, const SpectralData& sd, const Path& p,
                           int n, int cap) {
  double base = mu(g, y, sd, p);
  double worst = 0.0;
  for (int c = 0; c < g.colors(); ++c)
    for (int m = 1; m <= n; ++m) {
      Degree refine = Degree(g.colors());
      refine[c] = m;
      double sum = 0.0;
      for_each_path(
          g, p.source(g), refine, {},
          [&](const Path& eta) {
            sum += mu(g, y, sd, compose(g, p, eta));
            return true;
          },
          cap);
      worst = std::max(worst, std::abs(base - sum));
    }
  return worst;
}

double quasi_invariance_residual(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                                 double beta, const Path& a, const Path& b) {
  if (a.source(g) != b.source(g)) throw InputError("quasi-invariance residual needs same-source paths");
  auto side = [&](const Path& p) {
    double scale = std::exp(beta * y(p));
    for (int i = 0; i < g.colors(); ++i)
      scale *= std::pow(sd.rho[static_cast<size_t>(i)], beta / sd.theta * p.deg[i]);
    return scale * mu(g, y, sd, p);
  };
  return std::abs(side(b) - side(a));
}

double shift_agreement_mass(const KGraph& g, const WeightFunctor& y, const SpectralData& sd,
                            const Degree& m, const Degree& n, int depth, int cap) {
  Degree top = m.join(n);
  Degree full = top.plus(Degree::uniform(g.colors(), depth));
  Degree block = Degree::uniform(g.colors(), depth);
  double mass = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for_each_path(
        g, v, full, {},
        [&](const Path& p) {
          if (subpath(g, p, m, m.plus(block)) == subpath(g, p, n, n.plus(block)))
            mass += mu(g, y, sd, p);
          return true;
        },
        cap);
  }
  return mass;
}

MarkovParams markov_from_x(const KGraph& g, double x, double y_e1, std::optional<double> theta) {
  if (!(x > 0.0 && x < 0.5)) throw InputError("markov construction needs x in (0, 1/2)");
  if (!(y_e1 > 0.0)) throw InputError("markov construction needs y(e1) > 0");
  int e1, e2, f1, f2;
  try {
    e1 = g.edge_index("e1");
    e2 = g.edge_index("e2");
    f1 = g.edge_index("f1");
    f2 = g.edge_index("f2");
  } catch (const InputError&) {
    throw InputError("markov construction needs edges e1,e2,f1,f2 (one-vertex fixture)");
  }
  if (g.vertex_count() != 1 || g.colors() != 2)
    throw InputError("markov construction needs the one-vertex two-color fixture");
  double gap = std::log((1.0 - x) / x);
  double bound = gap / y_e1;
  MarkovParams out;
  out.x = x;
  if (theta) {
    if (!(*theta > bound))
      throw InputError("theta = " + std::to_string(*theta) + " is inadmissible: needs theta > " +
                       std::to_string(bound) + " or y(e2) would be negative");
    out.theta = *theta;
  } else {
    out.theta = (bound < 1.0) ? 1.0 : 1.2 * bound;
  }
  double y_e2 = y_e1 - gap / out.theta;
  out.y = WeightFunctor::zero(g);
  out.y.edge_values[static_cast<size_t>(e1)] = y_e1;
  out.y.edge_values[static_cast<size_t>(e2)] = y_e2;
  out.y.edge_values[static_cast<size_t>(f1)] = y_e1;
  out.y.edge_values[static_cast<size_t>(f2)] = y_e2;
  double residual = max_square_residual(g, out.y);
  if (residual > 1e-12)
    throw PropertyViolation("markov functor violates the square constraints by " +
                            std::to_string(residual));
  return out;
}

double markov_eval(std::string_view word, double x) {
  if (!(x > 0.0 && x < 1.0)) throw InputError("markov_eval needs x in (0,1)");
  double v = 1.0;
  for (char ch : word) {
    if (ch == '0')
      v *= x;
    else if (ch == '1')
      v *= 1.0 - x;
    else
      throw InputError("markov words are binary");
  }
  return v;
}

Path word_path(const KGraph& g, std::string_view word) {
  if (g.vertex_count() != 1 || g.colors() != 2 || g.edges_of_color(0).size() != 2 ||
      g.edges_of_color(1).size() != 2)
    throw InputError("word paths need a one-vertex two-color graph with two edges per color");
  if (word.empty()) return vertex_path(g, 0);
  std::vector<int> edges;
  for (size_t i = 0; i < word.size(); ++i) {
    int digit = word[i] == '0' ? 0 : word[i] == '1' ? 1 : throw InputError("markov words are binary");
    edges.push_back(g.edges_of_color(static_cast<int>(i % 2))[static_cast<size_t>(digit)]);
  }
  return path_from_edges(g, edges);
}

}  // namespace kgraph
