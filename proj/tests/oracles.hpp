#pragma once

// Test-only oracles. Nothing here calls into the code paths it is used to
// check: brackets are plain rational matrix products, the Killing form is
// half a trace written out by hand, and characteristic polynomials come from
// Faddeev-LeVerrier.

#include "qbcurv/matrix.hpp"
#include "qbcurv/scalar.hpp"

#include <array>
#include <random>
#include <vector>

namespace oracle {

using qbcurv::Rational;
using RMat = std::array<std::array<Rational, 7>, 7>;  // 0-based

inline RMat gen(int i, int j) {  // 1-based generator indices
  RMat m{};
  m[i - 1][j - 1] += 1;
  m[7 - j][7 - i] -= 1;
  return m;
}

inline RMat mul(const RMat& a, const RMat& b) {
  RMat c{};
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < 7; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline RMat bracket(const RMat& a, const RMat& b) {
  RMat ab = mul(a, b), ba = mul(b, a), c{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) c[i][j] = ab[i][j] - ba[i][j];
  return c;
}

inline RMat bar(const RMat& a) {  // real entries: -transpose
  RMat c{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) c[i][j] = -a[j][i];
  return c;
}

inline Rational half_trace(const RMat& a, const RMat& b) {
  Rational t = 0;
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k)
      if (!a[i][k].is_zero() && !b[k][i].is_zero()) t += a[i][k] * b[k][i];
  return t / 2;
}

/// The general graded curvature formula on frame positions 0..6, evaluated
/// with unscaled generators (F16 instead of F16/sqrt2). Grade balance forces
/// equally many grade-two slots on each side of the bar, so the sqrt2 factors
/// combine into (1/2)^(number of unbarred grade-two slots).
inline Rational raw_curvature(int p, int q, int r, int s) {
  static const std::array<std::pair<int, int>, 7> idx{{{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {1, 6}}};
  auto g = [](int n) { return n == 6 ? 2 : 1; };
  const int i = g(p), j = g(q), k = g(r), l = g(s);
  if (i + k != j + l) return 0;
  const RMat x = gen(idx[p].first, idx[p].second);
  const RMat y = gen(idx[q].first, idx[q].second);
  const RMat z = gen(idx[r].first, idx[r].second);
  const RMat w = gen(idx[s].first, idx[s].second);
  const RMat yb = bar(y), wb = bar(w);
  auto xi = [](int v) { return v > 0 ? 1 : 0; };
  Rational v = Rational((k - j) * xi(k - j)) * half_trace(bracket(x, wb), bracket(yb, z)) -
               Rational(k * l, i + k) * half_trace(bracket(x, z), bracket(yb, wb)) +
               Rational(k * xi(i - j) + l * xi(j - i) + l * (i == j) * (k == l)) * half_trace(bracket(x, yb), bracket(z, wb));
  const int twos = (i == 2) + (k == 2);
  for (int n = 0; n < twos; ++n) v /= 2;
  return v;
}

/// Coefficients c_0..c_n of det(lambda I - M) (c_n = 1), Faddeev-LeVerrier.
template <int N>
std::vector<Rational> charpoly(const qbcurv::Mat<Rational, N>& m) {
  using M = qbcurv::Mat<Rational, N>;
  std::vector<Rational> c(N + 1);
  c[N] = 1;
  M mk;  // M_0 = 0
  for (int k = 1; k <= N; ++k) {
    M next = m * mk + c[N - k + 1] * M::identity();
    mk = next;
    c[N - k] = -trace(m * mk) / k;
  }
  return c;
}

/// Coefficients of prod (lambda - r_i).
inline std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{1};
  for (const auto& r : roots) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t n = 0; n < c.size(); ++n) {
      next[n + 1] += c[n];
      next[n] -= r * c[n];
    }
    c = next;
  }
  return c;
}

inline Rational random_rational(std::mt19937_64& rng, int range = 9, int den = 7) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> d(1, den);
  return Rational(num(rng), d(rng));
}

template <int N>
qbcurv::Mat<qbcurv::ExactComplex, N> random_exact_hermitian(std::mt19937_64& rng) {
  qbcurv::Mat<qbcurv::ExactComplex, N> p;
  for (int i = 0; i < N; ++i) {
    p(i, i) = qbcurv::ExactComplex(random_rational(rng));
    for (int j = i + 1; j < N; ++j) {
      p(i, j) = qbcurv::ExactComplex(random_rational(rng), random_rational(rng));
      p(j, i) = conj(p(i, j));
    }
  }
  return p;
}

template <int N>
qbcurv::Mat<std::complex<double>, N> random_float_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  qbcurv::Mat<std::complex<double>, N> p;
  for (int i = 0; i < N; ++i) {
    p(i, i) = g(rng);
    for (int j = i + 1; j < N; ++j) {
      p(i, j) = {g(rng), g(rng)};
      p(j, i) = std::conj(p(i, j));
    }
  }
  return p;
}

}  // namespace oracle
