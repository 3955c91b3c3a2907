#pragma once

// Matrix model of so(7, C): 7x7 matrices with a_{ij} = -a_{j'i'}, j' = 8 - j.
// All matrix indices in this header are 1-based to match the usual
// notation F_{ij} = e_{ij} - e_{j'i'}.

#include "scalar.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbcurv {

inline constexpr int kDim = 7;

/// Index reflection i -> i' = 8 - i. Every use of the reflection goes through here.
constexpr int prime(int i) noexcept { return kDim + 1 - i; }

constexpr int kron(int i, int j) noexcept { return i == j ? 1 : 0; }

/// A 7x7 matrix in so(7), optionally tagged with its alpha_2 grade in [-2, 2].
template <class S = FrameScalar>
struct GradedMatrix {
  std::array<S, kDim * kDim> entries{};
  std::optional<int> grade;

  const S& operator()(int i, int j) const { return entries[(i - 1) * kDim + (j - 1)]; }
  S& operator()(int i, int j) { return entries[(i - 1) * kDim + (j - 1)]; }

  bool is_zero() const {
    using qbcurv::is_zero;
    for (const auto& e : entries)
      if (!is_zero(e)) return false;
    return true;
  }

  /// Entrywise equality; grade tags are not compared.
  friend bool operator==(const GradedMatrix& x, const GradedMatrix& y) { return x.entries == y.entries; }
  friend bool operator!=(const GradedMatrix& x, const GradedMatrix& y) { return !(x == y); }

  friend GradedMatrix operator+(const GradedMatrix& x, const GradedMatrix& y) {
    GradedMatrix r;
    for (std::size_t n = 0; n < r.entries.size(); ++n) r.entries[n] = x.entries[n] + y.entries[n];
    if (x.grade && y.grade && *x.grade == *y.grade) r.grade = x.grade;
    return r;
  }
  friend GradedMatrix operator-(const GradedMatrix& x) {
    GradedMatrix r = x;
    for (auto& e : r.entries) e = -e;
    return r;
  }
  friend GradedMatrix operator-(const GradedMatrix& x, const GradedMatrix& y) { return x + (-y); }
  friend GradedMatrix operator*(const S& c, const GradedMatrix& x) {
    GradedMatrix r = x;
    for (auto& e : r.entries) e = c * e;
    return r;
  }
};

/// Converts entry type, e.g. integer generators into the frame scalar field.
template <class To, class From>
GradedMatrix<To> convert(const GradedMatrix<From>& m) {
  GradedMatrix<To> r;
  for (std::size_t n = 0; n < m.entries.size(); ++n) r.entries[n] = To(m.entries[n]);
  r.grade = m.grade;
  return r;
}

template <class S>
bool in_so7(const GradedMatrix<S>& m) {
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j)
      if (m(i, j) != -m(prime(j), prime(i))) return false;
  return true;
}

/// A root in epsilon coordinates together with its alpha_2 coefficient.
struct RootLabel {
  std::array<int, 3> eps{};
  int k = 0;

  friend bool operator==(const RootLabel&, const RootLabel&) = default;

  std::string str() const {
    std::string out;
    for (int n = 0; n < 3; ++n) {
      if (eps[n] == 0) continue;
      out += eps[n] > 0 ? (out.empty() ? "" : "+") : "-";
      out += "e" + std::to_string(n + 1);
    }
    return out.empty() ? "0" : out;
  }
};

/// Weight of the basis vector e_i of C^7: e_1..e_3 -> eps_1..eps_3, e_4 -> 0,
/// e_5..e_7 -> -eps_3..-eps_1.
inline std::array<int, 3> basis_weight(int i) {
  std::array<int, 3> w{};
  if (i <= 3)
    w[i - 1] = 1;
  else if (i >= 5)
    w[prime(i) - 1] = -1;
  return w;
}

/// alpha_2 coefficient of a weight. With alpha_1 = e1-e2, alpha_2 = e2-e3,
/// alpha_3 = e3 we have e1 = a1+a2+a3, e2 = a2+a3, e3 = a3.
constexpr int alpha2_coefficient(const std::array<int, 3>& eps) { return eps[0] + eps[1]; }

/// Grade of the (i, j) matrix position; diagonal positions sit in the Cartan part.
inline int position_grade(int i, int j) {
  auto wi = basis_weight(i);
  auto wj = basis_weight(j);
  return alpha2_coefficient({wi[0] - wj[0], wi[1] - wj[1], wi[2] - wj[2]});
}

/// Root carried by F_{ij}. Throws for pairs where F_{ij} is zero (j = i')
/// or lies in the Cartan subalgebra (i = j).
inline RootLabel root_of(int i, int j) {
  if (i < 1 || i > kDim || j < 1 || j > kDim) throw std::out_of_range("root_of: index outside 1..7");
  if (i == j) throw std::invalid_argument("root_of: F_ii lies in the Cartan subalgebra");
  if (j == prime(i)) throw std::invalid_argument("root_of: F_{i i'} is zero");
  auto wi = basis_weight(i);
  auto wj = basis_weight(j);
  RootLabel r;
  for (int n = 0; n < 3; ++n) r.eps[n] = wi[n] - wj[n];
  r.k = alpha2_coefficient(r.eps);
  return r;
}

/// The full B3 root system: {+-e_i +- e_j (i != j)} and {+-e_i}.
inline std::vector<RootLabel> b3_roots() {
  std::vector<RootLabel> out;
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      RootLabel r;
      r.eps[i] = s;
      r.k = alpha2_coefficient(r.eps);
      out.push_back(r);
    }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          RootLabel r;
          r.eps[i] = si;
          r.eps[j] = sj;
          r.k = alpha2_coefficient(r.eps);
          out.push_back(r);
        }
  return out;
}

/// Grade of a matrix if every nonzero entry sits at positions of one grade.
template <class S>
std::optional<int> homogeneous_grade(const GradedMatrix<S>& m) {
  std::optional<int> g;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) {
      if (is_zero(m(i, j))) continue;
      int p = position_grade(i, j);
      if (g && *g != p) return std::nullopt;
      g = p;
    }
  return g;
}

/// F_{ij} = e_{ij} - e_{j'i'}.
template <class S = FrameScalar>
GradedMatrix<S> f_gen(int i, int j) {
  if (i < 1 || i > kDim || j < 1 || j > kDim) throw std::out_of_range("f_gen: index outside 1..7");
  GradedMatrix<S> m;
  m(i, j) += S(1);
  m(prime(j), prime(i)) -= S(1);
  if (!m.is_zero()) m.grade = position_grade(i, j);
  return m;
}

template <class S>
GradedMatrix<S> matmul(const GradedMatrix<S>& x, const GradedMatrix<S>& y) {
  GradedMatrix<S> r;
  for (int i = 1; i <= kDim; ++i)
    for (int k = 1; k <= kDim; ++k) {
      const S& xik = x(i, k);
      if (is_zero(xik)) continue;
      for (int j = 1; j <= kDim; ++j)
        if (!is_zero(y(k, j))) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <class S>
GradedMatrix<S> commutator(const GradedMatrix<S>& x, const GradedMatrix<S>& y) {
  GradedMatrix<S> r = matmul(x, y) - matmul(y, x);
  r.grade.reset();
  if (x.grade && y.grade) {
    int g = *x.grade + *y.grade;
    if (g >= -2 && g <= 2) r.grade = g;
  }
  return r;
}

template <class S>
S trace(const GradedMatrix<S>& x) {
  S t{};
  for (int i = 1; i <= kDim; ++i) t += x(i, i);
  return t;
}

/// Killing form normalized as half the trace form of the 7-dimensional representation.
template <class S>
S killing(const GradedMatrix<S>& x, const GradedMatrix<S>& y) {
  S t{};
  for (int i = 1; i <= kDim; ++i)
    for (int k = 1; k <= kDim; ++k)
      if (!is_zero(x(i, k)) && !is_zero(y(k, i))) t += x(i, k) * y(k, i);
  return t / S(2);
}

/// Conjugation X -> -X^* (negative conjugate transpose). Maps grade k to -k.
template <class S>
GradedMatrix<S> conj_dual(const GradedMatrix<S>& x) {
  GradedMatrix<S> r;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) r(i, j) = -conj(x(j, i));
  if (x.grade) r.grade = -*x.grade;
  return r;
}

/// Closed form of [F_ij, F_kl] in terms of generators.
template <class S = Rational>
GradedMatrix<S> generator_bracket(int i, int j, int k, int l) {
  GradedMatrix<S> r;
  auto add = [&r](int c, const GradedMatrix<S>& f) {
    if (c != 0) r = r + S(c) * f;
  };
  add(kron(j, k), f_gen<S>(i, l));
  add(-kron(i, l), f_gen<S>(k, j));
  add(-kron(prime(j), l), f_gen<S>(i, prime(k)));
  add(-kron(i, prime(k)), f_gen<S>(prime(j), l));
  return r;
}

/// Closed form of K(F_ij, F_kl).
constexpr int generator_killing(int i, int j, int k, int l) noexcept {
  return kron(i, l) * kron(j, k) - kron(j, prime(l)) * kron(i, prime(k));
}

/// Index pairs (i, j) whose generators F_ij form a basis of so(7):
/// one representative of each pair {F_ij, -F_{j'i'}}, skipping zeros.
inline std::vector<std::pair<int, int>> so7_basis_indices() {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) {
      if (j == prime(i)) continue;
      // (i, j) and (j', i') name the same generator up to sign.
      std::pair<int, int> mirror{prime(j), prime(i)};
      if (std::pair<int, int>{i, j} <= mirror) out.emplace_back(i, j);
    }
  return out;
}

/// The unitary frame {F13, F14, F15, F23, F24, F25, F16/sqrt2}.
inline std::array<GradedMatrix<FrameScalar>, kDim> weyl_frame() {
  std::array<GradedMatrix<FrameScalar>, kDim> frame;
  constexpr std::array<std::pair<int, int>, 6> grade_one{{{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}};
  for (std::size_t n = 0; n < grade_one.size(); ++n) frame[n] = f_gen<FrameScalar>(grade_one[n].first, grade_one[n].second);
  const FrameScalar inv_sqrt2(Sqrt2Field(Rational(0), Rational(1, 2)));
  frame[6] = inv_sqrt2 * f_gen<FrameScalar>(1, 6);
  return frame;
}

/// Frame position (0-based) of X = F_{ai}, a in {1,2}, i in {3,4,5}.
constexpr int frame_index(int a, int i) noexcept { return 3 * (a - 1) + (i - 3); }

/// Canonical metric g0(X, Ybar) = -k K(X, Ybar) on the grade-k piece.
template <class S>
S metric(const GradedMatrix<S>& x, const GradedMatrix<S>& y) {
  if (!x.grade || !y.grade) throw std::invalid_argument("metric: inputs must be homogeneous");
  if (*x.grade != *y.grade) throw std::invalid_argument("metric: grades differ");
  int k = *x.grade;
  if (k < 1 || k > 2) throw std::invalid_argument("metric: grade must be 1 or 2");
  return S(-k) * killing(x, conj_dual(y));
}

}  // namespace qbcurv
