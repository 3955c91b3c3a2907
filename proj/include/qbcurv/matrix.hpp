#pragma once

// Minimal matrices over exact scalars. Eigen covers the float side; these
// exist because the exact field types are not Eigen-friendly (no ordering,
// no sqrt) and the sizes involved are tiny.

#include "scalar.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qbcurv {

template <class T, int R, int C = R>
struct Mat {
  std::array<T, static_cast<std::size_t>(R* C)> d{};

  static constexpr int rows() { return R; }
  static constexpr int cols() { return C; }

  const T& operator()(int i, int j) const { return d[i * C + j]; }
  T& operator()(int i, int j) { return d[i * C + j]; }

  static Mat identity() {
    static_assert(R == C);
    Mat m;
    for (int i = 0; i < R; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat constant(const T& v) {
    Mat m;
    m.d.fill(v);
    return m;
  }

  friend bool operator==(const Mat& x, const Mat& y) { return x.d == y.d; }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat m;
    for (std::size_t n = 0; n < m.d.size(); ++n) m.d[n] = x.d[n] + y.d[n];
    return m;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat m;
    for (std::size_t n = 0; n < m.d.size(); ++n) m.d[n] = x.d[n] - y.d[n];
    return m;
  }
  friend Mat operator-(const Mat& x) {
    Mat m;
    for (std::size_t n = 0; n < m.d.size(); ++n) m.d[n] = -x.d[n];
    return m;
  }
  friend Mat operator*(const T& c, const Mat& x) {
    Mat m;
    for (std::size_t n = 0; n < m.d.size(); ++n) m.d[n] = c * x.d[n];
    return m;
  }
};

template <class T, int R, int K, int C>
Mat<T, R, C> operator*(const Mat<T, R, K>& x, const Mat<T, K, C>& y) {
  Mat<T, R, C> m;
  for (int i = 0; i < R; ++i)
    for (int k = 0; k < K; ++k) {
      if (is_zero(x(i, k))) continue;
      for (int j = 0; j < C; ++j) m(i, j) += x(i, k) * y(k, j);
    }
  return m;
}

template <class T, int R, int C>
Mat<T, C, R> transpose(const Mat<T, R, C>& x) {
  Mat<T, C, R> m;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) m(j, i) = x(i, j);
  return m;
}

template <class T, int R, int C>
Mat<T, C, R> adjoint(const Mat<T, R, C>& x) {
  Mat<T, C, R> m;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) m(j, i) = conj(x(i, j));
  return m;
}

template <class T, int N>
T trace(const Mat<T, N, N>& x) {
  T t{};
  for (int i = 0; i < N; ++i) t += x(i, i);
  return t;
}

/// Sum of squared moduli of the entries.
template <class T, int R, int C>
real_t<T> frob2(const Mat<T, R, C>& x) {
  real_t<T> s{};
  for (const auto& e : x.d) s += abs2(e);
  return s;
}

template <class T, int N>
bool is_diagonal(const Mat<T, N, N>& x) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j && !is_zero(x(i, j))) return false;
  return true;
}

/// Gauss-Jordan inverse over an exact field. Throws on a singular input.
template <class T, int N>
Mat<T, N, N> inverse(Mat<T, N, N> a) {
  Mat<T, N, N> inv = Mat<T, N, N>::identity();
  for (int c = 0; c < N; ++c) {
    int piv = c;
    while (piv < N && is_zero(a(piv, c))) ++piv;
    if (piv == N) throw std::domain_error("inverse: singular matrix");
    if (piv != c)
      for (int j = 0; j < N; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    const T p = a(c, c);
    for (int j = 0; j < N; ++j) {
      a(c, j) = a(c, j) / p;
      inv(c, j) = inv(c, j) / p;
    }
    for (int r = 0; r < N; ++r) {
      if (r == c || is_zero(a(r, c))) continue;
      const T f = a(r, c);
      for (int j = 0; j < N; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Row-major dense square matrix, used for the 49x49 Gram operator and the
/// small real quadratic forms of the certificates.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<T> d_;
};

/// v^T M v.
template <class T>
T quadratic_form(const DenseMatrix<T>& m, const std::vector<T>& v) {
  if (static_cast<int>(v.size()) != m.size()) throw std::invalid_argument("quadratic_form: size mismatch");
  T s{};
  for (int i = 0; i < m.size(); ++i) {
    if (is_zero(v[i])) continue;
    T row{};
    for (int j = 0; j < m.size(); ++j)
      if (!is_zero(v[j])) row += m(i, j) * v[j];
    s += v[i] * row;
  }
  return s;
}

/// Gram matrix of a real quadratic form q on Q^n, recovered by polarization:
/// M_ii = q(e_i), M_ij = (q(e_i + e_j) - q(e_i) - q(e_j)) / 2.
template <class Form>
DenseMatrix<Rational> gram_of_form(int n, Form&& q) {
  DenseMatrix<Rational> m(n);
  std::vector<Rational> v(n);
  std::vector<Rational> diag(n);
  for (int i = 0; i < n; ++i) {
    v[i] = 1;
    diag[i] = q(v);
    m(i, i) = diag[i];
    v[i] = 0;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v[i] = 1;
      v[j] = 1;
      m(i, j) = (q(v) - diag[i] - diag[j]) / 2;
      m(j, i) = m(i, j);
      v[i] = 0;
      v[j] = 0;
    }
  return m;
}

}  // namespace qbcurv
