#pragma once

// Curvature of the canonical Kaehler-Einstein metric on (B3, alpha_2),
// computed three ways: the general graded formula, the contact-type
// specialization, and the closed delta formula in the unitary frame.
//
// Frame positions are 0-based here: 0..5 are F13, F14, F15, F23, F24, F25
// and 6 is F16/sqrt2.

#include "lie_so7.hpp"
#include "scalar.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qbcurv {

/// Max-norm tolerance on T^*T - I for float frames.
inline constexpr double kUnitaryTol = 1e-12;
/// Imaginary residue allowed when collapsing a real-valued float contraction.
inline constexpr double kImagTol = 1e-12;

using Mat7c = Eigen::Matrix<std::complex<double>, kDim, kDim>;
using Mat7d = Eigen::Matrix<double, kDim, kDim>;
using Vec7d = Eigen::Matrix<double, kDim, 1>;

constexpr int xi(int q) noexcept { return q > 0 ? 1 : 0; }

/// Components R_{p qbar r sbar} over the unitary frame.
class CurvTensor {
 public:
  static constexpr int kSize = kDim * kDim * kDim * kDim;

  const Rational& operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }
  Rational& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }

  friend bool operator==(const CurvTensor&, const CurvTensor&) = default;

  static constexpr int index(int p, int q, int r, int s) noexcept { return ((p * kDim + q) * kDim + r) * kDim + s; }

 private:
  std::array<Rational, kSize> data_{};
};

namespace detail {

template <class S>
int require_grade(const GradedMatrix<S>& m) {
  if (!m.grade) throw std::invalid_argument("curvature: argument is not homogeneous");
  int g = *m.grade;
  if (g < 1) throw std::invalid_argument("curvature: argument must have positive grade");
  if (g > 2) throw std::invalid_argument("curvature: grades above 2 do not occur for contact-type spaces");
  return g;
}

/// K([A, B], [C, D]).
template <class S>
S kb(const GradedMatrix<S>& a, const GradedMatrix<S>& b, const GradedMatrix<S>& c, const GradedMatrix<S>& d) {
  return killing(commutator(a, b), commutator(c, d));
}

}  // namespace detail

/// General graded formula for R_{X Ybar Z Wbar}, X,Y,Z,W in m+ of grades i,j,k,l:
///   (k-j) xi_{k-j} K([X,Wbar],[Ybar,Z]) - kl/(i+k) K([X,Z],[Ybar,Wbar])
///   + (k xi_{i-j} + l xi_{j-i} + l d_ij d_kl) K([X,Ybar],[Z,Wbar])
/// when i + k = j + l, zero otherwise.
template <class S>
S curv_general(const GradedMatrix<S>& x, const GradedMatrix<S>& y, const GradedMatrix<S>& z, const GradedMatrix<S>& w) {
  const int i = detail::require_grade(x);
  const int j = detail::require_grade(y);
  const int k = detail::require_grade(z);
  const int l = detail::require_grade(w);
  if (i + k != j + l) return S{};

  const auto yb = conj_dual(y);
  const auto wb = conj_dual(w);
  S out{};
  if (int c1 = (k - j) * xi(k - j); c1 != 0) out += S(c1) * detail::kb(x, wb, yb, z);
  out -= from_rational<S>(Rational(k * l, i + k)) * detail::kb(x, z, yb, wb);
  if (int c3 = k * xi(i - j) + l * xi(j - i) + l * kron(i, j) * kron(k, l); c3 != 0)
    out += S(c3) * detail::kb(x, yb, z, wb);
  return out;
}

/// The five contact-type patterns, plus the general grade-one case.
enum class ContactCase {
  kUUUU,  // R_{U Ubar U Ubar} = 2 K([U,Ubar],[U,Ubar])
  kXYUU,  // R_{X Ybar U Ubar} = K([X,Ybar],[U,Ubar])
  kXYZU,  // R_{X Ybar Z Ubar} = 0
  kXUUU,  // R_{X Ubar U Ubar} = 0
  kXUZU,  // R_{X Ubar Z Ubar} = 0
  kXYZW,  // R_{X Ybar Z Wbar} = -1/2 K([X,Z],[Ybar,Wbar]) + K([X,Ybar],[Z,Wbar])
};

/// Evaluates one contact-type formula on arguments already in the case's
/// grade pattern (grade-two slots may hold any multiple of U).
template <class S>
S contact_formula(ContactCase c, const GradedMatrix<S>& x, const GradedMatrix<S>& y, const GradedMatrix<S>& z,
                  const GradedMatrix<S>& w) {
  switch (c) {
    case ContactCase::kUUUU:
      return S(2) * detail::kb(x, conj_dual(y), z, conj_dual(w));
    case ContactCase::kXYUU:
      return detail::kb(x, conj_dual(y), z, conj_dual(w));
    case ContactCase::kXYZU:
    case ContactCase::kXUUU:
    case ContactCase::kXUZU:
      return S{};
    case ContactCase::kXYZW: {
      const auto yb = conj_dual(y);
      const auto wb = conj_dual(w);
      return from_rational<S>(Rational(-1, 2)) * detail::kb(x, z, yb, wb) + detail::kb(x, yb, z, wb);
    }
  }
  throw std::logic_error("contact_formula: unknown case");
}

/// Which contact case a grade pattern reduces to, using the Kaehler symmetries
/// R_{ijkl} = R_{kjil} = R_{ilkj} and R_{ijkl} = conj R_{jilk}.
inline ContactCase classify_contact(int gx, int gy, int gz, int gw) {
  auto in = [](int g) { return g == 1 || g == 2; };
  if (!in(gx) || !in(gy) || !in(gz) || !in(gw)) throw std::invalid_argument("classify_contact: grades must be 1 or 2");
  const int twos = (gx == 2) + (gy == 2) + (gz == 2) + (gw == 2);
  if (twos == 0) return ContactCase::kXYZW;
  if (twos == 4) return ContactCase::kUUUU;
  if (twos == 1) return ContactCase::kXYZU;
  if (twos == 3) return ContactCase::kXUUU;
  // Two grade-two slots: balanced when one sits on each side of the bar.
  if (gx + gz == gy + gw) return ContactCase::kXYUU;
  return ContactCase::kXUZU;
}

/// R_{X Ybar Z Wbar} by the contact-type formulas. Mixed patterns are first
/// moved into the displayed form by a Kaehler symmetry.
template <class S>
S curv_contact(const GradedMatrix<S>& x, const GradedMatrix<S>& y, const GradedMatrix<S>& z, const GradedMatrix<S>& w) {
  const int gx = detail::require_grade(x);
  const int gy = detail::require_grade(y);
  const int gz = detail::require_grade(z);
  const int gw = detail::require_grade(w);
  const ContactCase c = classify_contact(gx, gy, gz, gw);
  if (c != ContactCase::kXYUU) return contact_formula(c, x, y, z, w);
  if (gx == 1 && gy == 1) return contact_formula(c, x, y, z, w);
  if (gx == 2 && gy == 2) return contact_formula(c, z, w, x, y);  // R_{ijkl} = R_{klij}
  if (gx == 1) return contact_formula(c, x, w, z, y);              // swap the barred slots
  return contact_formula(c, z, y, x, w);                           // swap the unbarred slots
}

/// Closed delta formula for X = F_ai, Y = F_bj, Z = F_ck, W = F_dl,
/// a..d in {1,2}, i..l in {3,4,5}.
inline Rational curv_closed(int a, int b, int c, int d, int i, int j, int k, int l) {
  for (int v : {a, b, c, d})
    if (v < 1 || v > 2) throw std::out_of_range("curv_closed: row index outside 1..2");
  for (int v : {i, j, k, l})
    if (v < 3 || v > 5) throw std::out_of_range("curv_closed: column index outside 3..5");
  const int first = (kron(a, d) * kron(b, c) + kron(a, b) * kron(c, d)) * kron(i, prime(k)) * kron(j, prime(l));
  const int rest = kron(a, d) * kron(b, c) * kron(i, j) * kron(k, l) + kron(a, b) * kron(c, d) * kron(i, l) * kron(j, k);
  return Rational(-first, 2) + Rational(rest);
}

/// Closed-form component over frame positions 0..6, using the U-displays
/// R_{U Ubar U Ubar} = 1 and R_{X Ybar U Ubar} = delta/2 for the grade-two slot.
inline Rational curv_closed_frame(int p, int q, int r, int s) {
  auto g = [](int n) { return n == 6 ? 2 : 1; };
  const ContactCase c = classify_contact(g(p), g(q), g(r), g(s));
  switch (c) {
    case ContactCase::kUUUU:
      return Rational(1);
    case ContactCase::kXYUU: {
      // Pick out the two grade-one slots; they pair as (unbarred, barred).
      int lo = (p != 6) ? p : r;
      int hi = (q != 6) ? q : s;
      return lo == hi ? Rational(1, 2) : Rational(0);
    }
    case ContactCase::kXYZW:
      return curv_closed(p / 3 + 1, q / 3 + 1, r / 3 + 1, s / 3 + 1, p % 3 + 3, q % 3 + 3, r % 3 + 3, s % 3 + 3);
    default:
      return Rational(0);
  }
}

/// Tabulates every component of the frame tensor from the closed forms.
inline CurvTensor assemble_tensor() {
  CurvTensor t;
  for (int p = 0; p < kDim; ++p)
    for (int q = 0; q < kDim; ++q)
      for (int r = 0; r < kDim; ++r)
        for (int s = 0; s < kDim; ++s) t(p, q, r, s) = curv_closed_frame(p, q, r, s);
  return t;
}

struct CrossValidation {
  int cases = 0;
  int mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

/// Compares a tensor against the general formula, the contact formulas and
/// the closed form on every frame quadruple.
inline CrossValidation cross_validate(const CurvTensor& t) {
  const auto frame = weyl_frame();
  CrossValidation cv;
  for (int p = 0; p < kDim; ++p)
    for (int q = 0; q < kDim; ++q)
      for (int r = 0; r < kDim; ++r)
        for (int s = 0; s < kDim; ++s) {
          ++cv.cases;
          const Rational general = to_rational(curv_general(frame[p], frame[q], frame[r], frame[s]));
          const Rational contact = to_rational(curv_contact(frame[p], frame[q], frame[r], frame[s]));
          const Rational closed = curv_closed_frame(p, q, r, s);
          const Rational& stored = t(p, q, r, s);
          if (general != contact || general != closed || general != stored) ++cv.mismatches;
        }
  return cv;
}

/// Checks R_{pqrs} = R_{rqps} = R_{psrq} = R_{qpsr}; returns the number of violations.
inline int kaehler_symmetry_violations(const CurvTensor& t) {
  int bad = 0;
  for (int p = 0; p < kDim; ++p)
    for (int q = 0; q < kDim; ++q)
      for (int r = 0; r < kDim; ++r)
        for (int s = 0; s < kDim; ++s) {
          const Rational& v = t(p, q, r, s);
          if (v != t(r, q, p, s) || v != t(p, s, r, q) || v != t(q, p, s, r)) ++bad;
        }
  return bad;
}

using RicciMatrix = std::array<std::array<Rational, kDim>, kDim>;

/// Ric_{p qbar} = sum_r R_{p qbar r rbar}.
inline RicciMatrix ricci(const CurvTensor& t) {
  RicciMatrix out{};
  for (int p = 0; p < kDim; ++p)
    for (int q = 0; q < kDim; ++q)
      for (int r = 0; r < kDim; ++r) out[p][q] += t(p, q, r, r);
  return out;
}

/// Sparse double-precision copy of a tensor for the sampling paths.
struct FloatCurvature {
  struct Entry {
    int p, q, r, s;
    double value;
  };
  std::vector<Entry> nonzeros;

  explicit FloatCurvature(const CurvTensor& t) {
    for (int p = 0; p < kDim; ++p)
      for (int q = 0; q < kDim; ++q)
        for (int r = 0; r < kDim; ++r)
          for (int s = 0; s < kDim; ++s)
            if (!is_zero(t(p, q, r, s))) nonzeros.push_back({p, q, r, s, to_double(t(p, q, r, s))});
  }
};

inline double unitarity_residual(const Mat7c& frame) {
  return (frame.adjoint() * frame - Mat7c::Identity()).cwiseAbs().maxCoeff();
}

inline void require_unitary(const Mat7c& frame) {
  if (!(unitarity_residual(frame) <= kUnitaryTol)) throw std::invalid_argument("frame is not unitary to 1e-12");
}

/// R(e_a, ebar_a, e_b, ebar_b) for the frame e_a = sum_i T_ai E_i.
inline Mat7d transform_diag(const Mat7c& frame, const FloatCurvature& curv) {
  require_unitary(frame);
  Eigen::Matrix<std::complex<double>, kDim, kDim * kDim> w;  // w(a, i*7+j) = T_ai conj(T_aj)
  for (int a = 0; a < kDim; ++a)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) w(a, i * kDim + j) = frame(a, i) * std::conj(frame(a, j));

  Mat7c acc = Mat7c::Zero();
  for (const auto& e : curv.nonzeros)
    acc += e.value * w.col(e.p * kDim + e.q) * w.col(e.r * kDim + e.s).transpose();

  if (acc.imag().cwiseAbs().maxCoeff() > kImagTol) throw std::runtime_error("transform_diag: result is not real");
  return acc.real();
}

inline Mat7d transform_diag(const Mat7c& frame, const CurvTensor& t) { return transform_diag(frame, FloatCurvature(t)); }

}  // namespace qbcurv
