#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace skewflow {

using Vec = std::vector<double>;

/// Element of the state space V = R^n. The norm convention on V is l1.
struct VectorValue {
  Vec c;
  VectorValue() = default;
  explicit VectorValue(Vec v) : c(std::move(v)) {}
  VectorValue(std::initializer_list<double> v) : c(v) {}
  int dim() const { return static_cast<int>(c.size()); }
};

/// Element of the dual space V*. The dual of l1 is l-infinity.
struct DualVector {
  Vec c;
  DualVector() = default;
  explicit DualVector(Vec v) : c(std::move(v)) {}
  DualVector(std::initializer_list<double> v) : c(v) {}
  int dim() const { return static_cast<int>(c.size()); }
};

inline double norm_l1(const Vec& v) {
  double s = 0;
  for (double x : v) s += std::abs(x);
  return s;
}

inline double norm_linf(const Vec& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double norm(const VectorValue& v) { return norm_l1(v.c); }
inline double norm(const DualVector& w) { return norm_linf(w.c); }

/// Dense square matrix, row-major.
struct Matrix {
  int n = 0;
  Vec a;  // n*n entries

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const Vec& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
  Matrix r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const double xv = x(i, k);
      if (xv == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += xv * y(k, j);
    }
  return r;
}

inline Vec apply(const Matrix& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.n) throw std::invalid_argument("vector dimension mismatch");
  Vec r(v.size(), 0.0);
  for (int i = 0; i < m.n; ++i) {
    double s = 0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

/// Transpose action: (M^T w)_j = sum_i M_ij w_i. This is the adjoint on V*
/// once V is identified with R^n.
inline Vec apply_transpose(const Matrix& m, const Vec& w) {
  if (static_cast<int>(w.size()) != m.n) throw std::invalid_argument("vector dimension mismatch");
  Vec r(w.size(), 0.0);
  for (int j = 0; j < m.n; ++j) {
    double s = 0;
    for (int i = 0; i < m.n; ++i) s += m(i, j) * w[static_cast<std::size_t>(i)];
    r[static_cast<std::size_t>(j)] = s;
  }
  return r;
}

inline double max_abs_entry(const Matrix& m) {
  double r = 0;
  for (double x : m.a) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace skewflow
