#pragma once

// Reduction of the quadratic bisectional curvature to a quadratic form on
// Hermitian matrices, and an exact replay of its nonnegativity argument.
//
// Every evaluator is templated on the scalar: ExactComplex (proof grade) or
// std::complex<double> (search grade). The two never mix implicitly.

#include "curvature.hpp"
#include "exact_psd.hpp"
#include "lie_so7.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbcurv {

using FloatComplex = std::complex<double>;

template <class C>
using Herm7 = Mat<C, 7>;
template <class C>
using Herm6 = Mat<C, 6>;
template <class C>
using Block3 = Mat<C, 3>;

/// Identities involving one float contraction chain.
inline constexpr double kChainTol = 1e-10;
/// Direct algebraic identities in float mode.
inline constexpr double kIdentityTol = 1e-12;
/// Sampled QB values below this count as violations.
inline constexpr double kSampleFloor = -1e-9;

template <class C, int N>
bool is_hermitian(const Mat<C, N>& p) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (p(i, j) != conj(p(j, i))) return false;
  return true;
}

template <int N>
bool is_hermitian(const Mat<FloatComplex, N>& p, double tol) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (std::abs(p(i, j) - std::conj(p(j, i))) > tol) return false;
  return true;
}

/// P split as [[P', xi], [xi^*, t]] with P' further cut into 3x3 blocks
/// A = P'_{(1i),(1j)}, B = P'_{(1i),(2j)}, C = P'_{(2i),(2j)}.
template <class C>
struct HermitianDecomp {
  Herm7<C> p;
  Herm6<C> p_prime;
  std::array<C, 6> xi{};
  real_t<C> t{};
  Block3<C> a, b, c;
};

template <class C>
std::array<Block3<C>, 3> blocks_of(const Herm6<C>& pp) {
  std::array<Block3<C>, 3> abc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      abc[0](i, j) = pp(frame_index(1, i + 3), frame_index(1, j + 3));
      abc[1](i, j) = pp(frame_index(1, i + 3), frame_index(2, j + 3));
      abc[2](i, j) = pp(frame_index(2, i + 3), frame_index(2, j + 3));
    }
  return abc;
}

template <class C>
HermitianDecomp<C> decompose(const Herm7<C>& p) {
  HermitianDecomp<C> h;
  h.p = p;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) h.p_prime(i, j) = p(i, j);
    h.xi[i] = p(i, 6);
  }
  h.t = real(p(6, 6));
  auto abc = blocks_of(h.p_prime);
  h.a = abc[0];
  h.b = abc[1];
  h.c = abc[2];
  return h;
}

/// P = T^t diag(x) conj(T), i.e. P_ij = sum_a T_ai x_a conj(T_aj).
inline Herm7<FloatComplex> p_of(const Mat7c& frame, const Vec7d& x) {
  require_unitary(frame);
  Mat7c m = frame.transpose() * x.asDiagonal() * frame.conjugate();
  Herm7<FloatComplex> p;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) p(i, j) = m(i, j);
  return p;
}

/// Sum over a,b of R(e_a, ebar_a, e_b, ebar_b) (x_a - x_b)^2.
inline double qb_direct(const Mat7c& frame, const Vec7d& x, const FloatCurvature& curv) {
  const Mat7d s = transform_diag(frame, curv);
  double q = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const double d = x(a) - x(b);
      q += s(a, b) * d * d;
    }
  return q;
}

namespace detail {

/// Magnitude used to scale the imaginary-residue check; exact inputs need none.
template <class C, int N>
double float_scale(const Mat<C, N>& m) {
  if constexpr (std::is_same_v<C, FloatComplex>)
    return frob2(m);
  else
    return 0.0;
}

template <class C>
real_t<C> real_part_checked(const C& z, double scale) {
  if constexpr (std::is_same_v<C, FloatComplex>) {
    if (std::abs(z.imag()) > kIdentityTol * std::max(1.0, scale)) throw std::runtime_error("contraction is not real");
    return z.real();
  } else {
    (void)scale;
    if (!is_zero(imag(z))) throw std::runtime_error("contraction is not real");
    return real(z);
  }
}

}  // namespace detail

/// Box(P) = sum R_{i jbar k lbar} P_ij P_kl over all 7^4 frame indices.
template <class C>
real_t<C> box_full(const Herm7<C>& p, const CurvTensor& r) {
  C s{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (is_zero(p(i, j))) continue;
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) {
          const Rational& rv = r(i, j, k, l);
          if (is_zero(rv) || is_zero(p(k, l))) continue;
          s += from_rational<C>(rv) * p(i, j) * p(k, l);
        }
    }
  return detail::real_part_checked(s, detail::float_scale(p));
}

inline double box_full(const Herm7<FloatComplex>& p, const FloatCurvature& r) {
  FloatComplex s{};
  for (const auto& e : r.nonzeros) s += e.value * p(e.p, e.q) * p(e.r, e.s);
  return detail::real_part_checked(s, frob2(p));
}

/// Reflection n -> n' inside the column range {3,4,5}, 0-based (3 <-> 5, 4 fixed).
constexpr int reflect3(int n) noexcept { return prime(n + 3) - 3; }

/// <X, Y> = sum_ij X_ij Y_{i'j'}.
template <class C>
C pairing(const Block3<C>& x, const Block3<C>& y) {
  C s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += x(i, j) * y(reflect3(i), reflect3(j));
  return s;
}

/// Box' in double-index form:
///   sum_{a,b} sum_{i,k} [ -1/2 P_{ai,ak} P_{bi',bk'} - 1/2 P_{ai,bk} P_{bi',ak'}
///                        + P_{ai,bi} P_{bk,ak} + P_{ai,ak} P_{bk,bi} ].
template <class C>
real_t<C> box_prime(const Herm6<C>& pp) {
  auto at = [&pp](int a, int i, int b, int k) -> const C& { return pp(frame_index(a, i), frame_index(b, k)); };
  const C half = from_rational<C>(Rational(1, 2));
  C s{};
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int i = 3; i <= 5; ++i)
        for (int k = 3; k <= 5; ++k) {
          s -= half * at(a, i, a, k) * at(b, prime(i), b, prime(k));
          s -= half * at(a, i, b, k) * at(b, prime(i), a, prime(k));
          s += at(a, i, b, i) * at(b, k, a, k);
          s += at(a, i, a, k) * at(b, k, b, i);
        }
  return detail::real_part_checked(s, detail::float_scale(pp));
}

/// Box' in block form:
///   -1/2 <A+C, A+C> - 1/2 (<A,A> + <C,C> + <B,B*> + <B*,B>)
///   + (tr A)^2 + (tr C)^2 + 2 |tr B|^2 + |A+C|^2.
template <class C>
real_t<C> box_prime_blocks(const Block3<C>& a, const Block3<C>& b, const Block3<C>& c) {
  const C half = from_rational<C>(Rational(1, 2));
  const Block3<C> ac = a + c;
  const Block3<C> bs = adjoint(b);
  C s = -half * pairing(ac, ac) - half * (pairing(a, a) + pairing(c, c) + pairing(b, bs) + pairing(bs, b));
  s += trace(a) * trace(a) + trace(c) * trace(c) + C(2) * C(abs2(trace(b))) + C(frob2(ac));
  return detail::real_part_checked(s, detail::float_scale(a) + detail::float_scale(b) + detail::float_scale(c));
}

/// Phi = 4|P'|^2 - Box' - (tr P')^2 / 12.
template <class C>
real_t<C> phi(const Herm6<C>& pp) {
  using R = real_t<C>;
  const R tr = real(trace(pp));
  return R(4) * frob2(pp) - box_prime(pp) - tr * tr / R(12);
}

template <class R>
struct PhiComponents {
  R phi1, phi2, phi1p, phi1pp, phi11, phi12;
};

/// Diagonal vectors a, c of A and C as reals.
template <class C>
std::array<real_t<C>, 6> diagonals(const Block3<C>& a, const Block3<C>& c) {
  return {real(a(0, 0)), real(a(1, 1)), real(a(2, 2)), real(c(0, 0)), real(c(1, 1)), real(c(2, 2))};
}

/// Phi12 as the displayed polynomial in the diagonals a, c.
template <class R>
R phi12_polynomial(const std::array<R, 6>& v) {
  const R a1 = v[0], a2 = v[1], a3 = v[2], c1 = v[3], c2 = v[4], c3 = v[5];
  const R ta = a1 + a2 + a3, tc = c1 + c2 + c3;
  const R na = a1 * a1 + a2 * a2 + a3 * a3, nc = c1 * c1 + c2 * c2 + c3 * c3;
  const R nac = (a1 + c1) * (a1 + c1) + (a2 + c2) * (a2 + c2) + (a3 + c3) * (a3 + c3);
  return R(4) * na + R(4) * nc + (R(2) * a1 * a3 + a2 * a2) + (R(2) * c1 * c3 + c2 * c2) + (a1 * c3 + a3 * c1 + a2 * c2) -
         ta * ta - tc * tc - nac - (ta + tc) * (ta + tc) / R(12);
}

/// Each piece of the Phi split from its own formula. The identities
/// Phi = Phi1 + Phi2, Phi1 = Phi1' + Phi1'', Phi1'' = Phi11 + Phi12 are
/// left to callers to check.
template <class C>
PhiComponents<real_t<C>> phi_components(const Herm6<C>& pp) {
  using R = real_t<C>;
  auto [a, b, c] = blocks_of(pp);
  auto re = [](const C& z) { return real(z); };
  PhiComponents<R> out;

  const R ta = re(trace(a)), tc = re(trace(c));
  out.phi1 = R(4) * frob2(a) + R(4) * frob2(c) + re(pairing(a, a)) + re(pairing(c, c)) + re(pairing(a, c)) - ta * ta -
             tc * tc - frob2(a + c) - (ta + tc) * (ta + tc) / R(12);
  out.phi2 = R(8) * frob2(b) + re(pairing(b, adjoint(b))) - R(2) * abs2(trace(b));

  // (34), (45) entries; 0-based offsets into the 3x3 blocks.
  const C& a34 = a(0, 1);
  const C& a45 = a(1, 2);
  const C& c34 = c(0, 1);
  const C& c45 = c(1, 2);
  out.phi1p = R(8) * (abs2(a34) + abs2(a45) + abs2(c34) + abs2(c45)) +
              R(4) * re(a34 * conj(a45) + c34 * conj(c45)) + R(2) * re(a34 * conj(c45) + c34 * conj(a45)) -
              R(2) * abs2(a34 + c34) - R(2) * abs2(a45 + c45);

  const C& x = a(0, 2);
  const C& y = c(0, 2);
  out.phi11 = R(10) * abs2(x) + R(10) * abs2(y) + R(2) * re(x * conj(y)) - R(2) * abs2(x + y);
  out.phi12 = phi12_polynomial(diagonals(a, c));
  out.phi1pp = out.phi11 + out.phi12;
  return out;
}

/// Canonical reduced evaluator: 1/2 QB = 7|xi|^2 + 3 (t - tr P'/6)^2 + Phi(P').
/// Returns QB itself.
template <class C>
real_t<C> qb_reduced(const HermitianDecomp<C>& h) {
  using R = real_t<C>;
  R xi2{};
  for (const auto& z : h.xi) xi2 += abs2(z);
  const R shift = h.t - real(trace(h.p_prime)) / R(6);
  return R(2) * (R(7) * xi2 + R(3) * shift * shift + phi(h.p_prime));
}

/// Same quantity in the unshifted form 7|xi|^2 + 3t^2 - t tr P' + (4|P'|^2 - Box').
template <class C>
real_t<C> qb_reduced_unshifted(const HermitianDecomp<C>& h) {
  using R = real_t<C>;
  R xi2{};
  for (const auto& z : h.xi) xi2 += abs2(z);
  const R tr = real(trace(h.p_prime));
  return R(2) * (R(7) * xi2 + R(3) * h.t * h.t - h.t * tr + R(4) * frob2(h.p_prime) - box_prime(h.p_prime));
}

// ---------------------------------------------------------------------------
// Exact certificate: the 3x3 / 6x6 matrices behind Phi12.

struct SmallMatrixSet {
  Mat<Rational, 3> i, l, j, g, h;
  Mat<Sqrt23Field, 3> t3;
  Mat<Rational, 6> d;
};

/// sqrt2 and sqrt3 inside Q(sqrt2, sqrt3).
inline Sqrt23Field sqrt2_23() { return Sqrt23Field(Sqrt2Field::root(), Sqrt2Field(0)); }
inline Sqrt23Field sqrt3_23() { return Sqrt23Field::root(); }

inline SmallMatrixSet build_small_matrices() {
  SmallMatrixSet s;
  s.i = Mat<Rational, 3>::identity();
  s.l = Mat<Rational, 3>::constant(Rational(1));
  s.j(0, 2) = 1;
  s.j(1, 1) = 1;
  s.j(2, 0) = 1;
  s.g = Rational(3) * s.i - Rational(13, 12) * s.l + s.j;
  s.h = Rational(-1) * s.i - Rational(1, 12) * s.l + Rational(1, 2) * s.j;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      s.d(r, c) = s.g(r, c);
      s.d(r, c + 3) = s.h(r, c);
      s.d(r + 3, c) = s.h(r, c);
      s.d(r + 3, c + 3) = s.g(r, c);
    }

  const Sqrt23Field r2 = sqrt2_23(), r3 = sqrt3_23();
  const Sqrt23Field inv_r6 = Sqrt23Field(1) / (r2 * r3);
  const std::array<std::array<Sqrt23Field, 3>, 3> raw{{{r3, 1, r2}, {0, -2, r2}, {-r3, 1, r2}}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s.t3(r, c) = inv_r6 * raw[r][c];
  return s;
}

template <int N>
Mat<Sqrt23Field, N> lift23(const Mat<Rational, N>& m) {
  Mat<Sqrt23Field, N> out;
  for (int i = 0; i < N * N; ++i) out.d[i] = from_rational<Sqrt23Field>(m.d[i]);
  return out;
}

/// T3^t M T3 for a rational M.
inline Mat<Sqrt23Field, 3> conj_t3(const SmallMatrixSet& s, const Mat<Rational, 3>& m) {
  return transpose(s.t3) * lift23(m) * s.t3;
}

/// Diagonal of a matrix that must be diagonal with rational entries.
inline std::array<Rational, 3> rational_diagonal(const Mat<Sqrt23Field, 3>& m) {
  if (!is_diagonal(m)) throw std::runtime_error("expected a diagonal matrix after T3-conjugation");
  return {to_rational(m(0, 0)), to_rational(m(1, 1)), to_rational(m(2, 2))};
}

struct SchurCertificate {
  std::array<Rational, 3> t_g, t_h, t_l, t_j;  // diagonals of T3^t X T3
  std::array<Rational, 3> schur_diag;          // diagonal of T3^t (G - H G^{-1} H) T3
  std::array<Rational, 6> d_eigen;             // spectrum of D, ascending
  bool t3_orthogonal = false;
  bool psd = false;
};

/// D = [[G,H],[H,G]] >= 0 via the Schur complement G - H G^{-1} H, all exact.
/// The spectrum of D is read off from G+H and G-H, both diagonalized by T3.
inline SchurCertificate schur_certificate(const SmallMatrixSet& s = build_small_matrices()) {
  SchurCertificate out;
  out.t3_orthogonal = transpose(s.t3) * s.t3 == Mat<Sqrt23Field, 3>::identity();
  out.t_g = rational_diagonal(conj_t3(s, s.g));
  out.t_h = rational_diagonal(conj_t3(s, s.h));
  out.t_l = rational_diagonal(conj_t3(s, s.l));
  out.t_j = rational_diagonal(conj_t3(s, s.j));

  const Mat<Rational, 3> schur = s.g - s.h * inverse(s.g) * s.h;  // throws if G is singular
  out.schur_diag = rational_diagonal(conj_t3(s, schur));

  const auto plus = rational_diagonal(conj_t3(s, s.g + s.h));
  const auto minus = rational_diagonal(conj_t3(s, s.g - s.h));
  std::copy(plus.begin(), plus.end(), out.d_eigen.begin());
  std::copy(minus.begin(), minus.end(), out.d_eigen.begin() + 3);
  std::sort(out.d_eigen.begin(), out.d_eigen.end());

  bool g_pos = std::all_of(out.t_g.begin(), out.t_g.end(), [](const Rational& v) { return v > 0; });
  bool s_nonneg = std::all_of(out.schur_diag.begin(), out.schur_diag.end(), [](const Rational& v) { return v >= 0; });
  out.psd = out.t3_orthogonal && g_pos && s_nonneg;
  return out;
}

// ---------------------------------------------------------------------------
// Per-input exact proof and the input-independent structural certificate.

struct Link {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct CertificateReport {
  Link phi2_bound;   // Phi2 >= |B|^2
  Link phi1p_bound;  // Phi1' >= |A34|^2 + |A45|^2 + |C34|^2 + |C45|^2
  Link phi11_psd;    // Phi11 >= 0
  Link phi12_psd;    // Phi12 >= 0
  std::array<Rational, 3> schur_diag;
  std::array<Rational, 6> d_eigen;
  bool overall = false;

  std::array<const Link*, 4> links() const { return {&phi2_bound, &phi1p_bound, &phi11_psd, &phi12_psd}; }
};

inline Link make_link(std::string name, Rational lhs, Rational rhs) {
  Link l{std::move(name), std::move(lhs), std::move(rhs), false};
  l.pass = l.lhs >= l.rhs && l.rhs >= 0;
  return l;
}

/// Evaluates every inequality of the chain exactly on one Hermitian P'.
inline CertificateReport exact_nonneg_proof(const Herm6<ExactComplex>& pp,
                                            const SchurCertificate& schur = schur_certificate()) {
  if (!is_hermitian(pp)) throw std::invalid_argument("exact_nonneg_proof: P' is not Hermitian");
  const auto parts = phi_components(pp);
  auto [a, b, c] = blocks_of(pp);
  CertificateReport r;
  r.phi2_bound = make_link("phi2_bound", parts.phi2, frob2(b));
  r.phi1p_bound = make_link("phi1p_bound", parts.phi1p, abs2(a(0, 1)) + abs2(a(1, 2)) + abs2(c(0, 1)) + abs2(c(1, 2)));
  r.phi11_psd = make_link("phi11_psd", parts.phi11, Rational(0));
  r.phi12_psd = make_link("phi12_psd", parts.phi12, Rational(0));
  r.schur_diag = schur.schur_diag;
  r.d_eigen = schur.d_eigen;
  r.overall = schur.psd && r.phi2_bound.pass && r.phi1p_bound.pass && r.phi11_psd.pass && r.phi12_psd.pass;
  return r;
}

struct StructuralCheck {
  std::string name;
  PsdResult result;
};

/// Real quadratic forms whose PSD-ness makes every link of the chain hold
/// for all inputs. Coordinates are (Re, Im) pairs of the complex entries involved.
inline std::vector<StructuralCheck> structural_certificate() {
  std::vector<StructuralCheck> out;
  auto block_from = [](const std::vector<Rational>& v) {
    Block3<ExactComplex> b;
    for (int n = 0; n < 9; ++n) b.d[n] = ExactComplex(v[2 * n], v[2 * n + 1]);
    return b;
  };

  out.push_back({"trace_bound", ldlt_psd(gram_of_form(18, [&](const std::vector<Rational>& v) {
                   auto b = block_from(v);
                   return Rational(3) * frob2(b) - abs2(trace(b));
                 }))});
  out.push_back({"pairing_bound", ldlt_psd(gram_of_form(18, [&](const std::vector<Rational>& v) {
                   auto b = block_from(v);
                   return frob2(b) + real(pairing(b, adjoint(b)));
                 }))});
  out.push_back({"phi2_form", ldlt_psd(gram_of_form(18, [&](const std::vector<Rational>& v) {
                   Herm6<ExactComplex> pp;
                   auto b = block_from(v);
                   for (int i = 0; i < 3; ++i)
                     for (int j = 0; j < 3; ++j) {
                       pp(i, j + 3) = b(i, j);
                       pp(j + 3, i) = conj(b(i, j));
                     }
                   return phi_components(pp).phi2 - frob2(b);
                 }))});
  out.push_back({"phi1p_form", ldlt_psd(gram_of_form(8, [](const std::vector<Rational>& v) {
                   Herm6<ExactComplex> pp;
                   // A34, A45, C34, C45 and their Hermitian mirrors.
                   const std::array<std::pair<int, int>, 4> pos{{{0, 1}, {1, 2}, {3, 4}, {4, 5}}};
                   Rational moduli = 0;
                   for (int n = 0; n < 4; ++n) {
                     ExactComplex z(v[2 * n], v[2 * n + 1]);
                     pp(pos[n].first, pos[n].second) = z;
                     pp(pos[n].second, pos[n].first) = conj(z);
                     moduli += abs2(z);
                   }
                   return phi_components(pp).phi1p - moduli;
                 }))});
  out.push_back({"phi11_form", ldlt_psd(gram_of_form(4, [](const std::vector<Rational>& v) {
                   Herm6<ExactComplex> pp;
                   ExactComplex x(v[0], v[1]), y(v[2], v[3]);
                   pp(0, 2) = x;
                   pp(2, 0) = conj(x);
                   pp(3, 5) = y;
                   pp(5, 3) = conj(y);
                   return phi_components(pp).phi11;
                 }))});
  {
    const auto s = build_small_matrices();
    DenseMatrix<Rational> d(6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) d(i, j) = s.d(i, j);
    out.push_back({"d_matrix", ldlt_psd(d)});
  }
  return out;
}

}  // namespace qbcurv
