#ifndef KGRAPH_DEGREE_HPP
#define KGRAPH_DEGREE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "kgraph/errors.hpp"

namespace kgraph {

/// Element of N^k: one nonnegative count per edge color.
struct Degree {
  std::vector<int> c;

  Degree() = default;
  explicit Degree(int k) : c(static_cast<size_t>(k), 0) {}
  Degree(std::initializer_list<int> init) : c(init) {}

  static Degree unit(int k, int color) {
    Degree d(k);
    d.c[static_cast<size_t>(color)] = 1;
    return d;
  }
  static Degree uniform(int k, int value) {
    Degree d(k);
    std::fill(d.c.begin(), d.c.end(), value);
    return d;
  }

  int rank() const { return static_cast<int>(c.size()); }
  int operator[](int i) const { return c[static_cast<size_t>(i)]; }
  int& operator[](int i) { return c[static_cast<size_t>(i)]; }

  int total() const { return std::accumulate(c.begin(), c.end(), 0); }
  bool is_zero() const { return total() == 0; }

  bool operator==(const Degree& o) const { return c == o.c; }
  bool operator!=(const Degree& o) const { return c != o.c; }
  // lexicographic, used only for deterministic orderings
  bool operator<(const Degree& o) const { return c < o.c; }

  bool dominates(const Degree& o) const {  // o <= *this coordinatewise
    for (int i = 0; i < rank(); ++i)
      if (o.c[static_cast<size_t>(i)] > c[static_cast<size_t>(i)]) return false;
    return true;
  }

  Degree plus(const Degree& o) const {
    Degree r = *this;
    for (int i = 0; i < rank(); ++i) r[i] += o[i];
    return r;
  }
  Degree minus(const Degree& o) const {
    Degree r = *this;
    for (int i = 0; i < rank(); ++i) {
      r[i] -= o[i];
      if (r[i] < 0) throw InputError("degree subtraction went negative");
    }
    return r;
  }
  Degree join(const Degree& o) const {  // coordinatewise max
    Degree r = *this;
    for (int i = 0; i < rank(); ++i) r[i] = std::max(r[i], o[i]);
    return r;
  }
  Degree meet(const Degree& o) const {  // coordinatewise min
    Degree r = *this;
    for (int i = 0; i < rank(); ++i) r[i] = std::min(r[i], o[i]);
    return r;
  }

  std::vector<int> signed_difference(const Degree& o) const {  // in Z^k
    std::vector<int> r(c.size());
    for (int i = 0; i < rank(); ++i) r[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] - o[i];
    return r;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ",";
      s += std::to_string((*this)[i]);
    }
    return s + ")";
  }
};

}  // namespace kgraph

#endif
