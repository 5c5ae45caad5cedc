#ifndef KGRAPH_MATRIX_HPP
#define KGRAPH_MATRIX_HPP

#include <cmath>
#include <cstdlib>
#include <vector>

#include "kgraph/degree.hpp"

namespace kgraph {

/// Dense square matrix over the vertex set.  Everything here is desk scale;
/// no attempt is made to be clever.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, T{}) {}

  int size() const { return n_; }
  T operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  SquareMatrix operator*(const SquareMatrix& o) const {
    SquareMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int l = 0; l < n_; ++l) {
        T x = (*this)(i, l);
        if (x == T{}) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += x * o(l, j);
      }
    return r;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> r(static_cast<size_t>(n_), T{});
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[static_cast<size_t>(i)] += (*this)(i, j) * x[static_cast<size_t>(j)];
    return r;
  }

  bool entrywise_positive() const {
    for (const T& x : a_)
      if (!(x > T{})) return false;
    return true;
  }

  T max_entry() const {
    T m{};
    for (const T& x : a_)
      if (x > m) m = x;
    return m;
  }

  bool operator==(const SquareMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  int n_ = 0;
  std::vector<T> a_;
};

template <typename T>
SquareMatrix<T> matrix_power(const SquareMatrix<T>& m, int e) {
  SquareMatrix<T> r = SquareMatrix<T>::identity(m.size());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

/// prod_i M_i^{n_i} for a commuting family; ordering is fixed for determinism.
template <typename T>
SquareMatrix<T> family_power(const std::vector<SquareMatrix<T>>& family, const Degree& n) {
  SquareMatrix<T> r = SquareMatrix<T>::identity(family.at(0).size());
  for (size_t i = 0; i < family.size(); ++i)
    for (int e = 0; e < n[static_cast<int>(i)]; ++e) r = r * family[i];
  return r;
}

inline double max_abs_difference(const SquareMatrix<double>& a, const SquareMatrix<double>& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace kgraph

#endif
