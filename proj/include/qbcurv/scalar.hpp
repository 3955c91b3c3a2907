#pragma once

// Exact scalar tower: rationals, quadratic extensions Q(sqrt D), and a
// complex wrapper that works over any of them. Everything here is exact;
// conversion to double happens only through to_double().

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qbcurv {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }

/// a + b*sqrt(D) over a base field. Nesting gives towers such as Q(sqrt2, sqrt3).
template <class Base, int D>
struct QuadExt {
  static_assert(D > 1, "radicand must be a non-square integer > 1");
  Base a{};
  Base b{};

  QuadExt() = default;
  QuadExt(Base a_, Base b_) : a(std::move(a_)), b(std::move(b_)) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  QuadExt(const Base& a_) : a(a_), b(0) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  QuadExt(int n) : a(n), b(0) {}

  static QuadExt root() { return QuadExt(Base(0), Base(1)); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b}; }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    if (is_zero(x) || is_zero(y)) return {};
    return {x.a * y.a + Base(D) * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  /// Conjugate under sqrt(D) -> -sqrt(D); x * galois(x) lies in the base field.
  friend QuadExt galois(const QuadExt& x) { return {x.a, -x.b}; }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    Base n = y.a * y.a - Base(D) * y.b * y.b;
    if (is_zero(n)) throw std::domain_error("QuadExt: division by zero");
    QuadExt num = x * galois(y);
    return {num.a / n, num.b / n};
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  friend bool is_zero(const QuadExt& x) { return is_zero(x.a) && is_zero(x.b); }
  friend double to_double(const QuadExt& x) { return to_double(x.a) + to_double(x.b) * std::sqrt(double(D)); }
  bool in_base() const { return is_zero(b); }
};

using Sqrt2Field = QuadExt<Rational, 2>;
/// Q(sqrt2, sqrt3); sqrt6 is root2 * root3.
using Sqrt23Field = QuadExt<Sqrt2Field, 3>;

/// Complex numbers over an exact field. Kept separate from std::complex,
/// whose arithmetic is only specified for floating point.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  Complex(const T& r) : re(r), im(0) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  Complex(int n) : re(n), im(0) {}

  static Complex i() { return {T(0), T(1)}; }

  friend Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
  friend Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
  friend Complex operator-(const Complex& x) { return {-x.re, -x.im}; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    if (is_zero(x) || is_zero(y)) return {};
    if (is_zero(x.im) && is_zero(y.im)) return {x.re * y.re, T(0)};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Complex operator/(const Complex& x, const Complex& y) {
    T n = y.re * y.re + y.im * y.im;
    Complex num = x * conj(y);
    return {num.re / n, num.im / n};
  }
  Complex& operator+=(const Complex& y) { return *this = *this + y; }
  Complex& operator-=(const Complex& y) { return *this = *this - y; }
  Complex& operator*=(const Complex& y) { return *this = *this * y; }
  Complex& operator/=(const Complex& y) { return *this = *this / y; }

  friend bool operator==(const Complex& x, const Complex& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }

  friend Complex conj(const Complex& x) { return {x.re, -x.im}; }
  friend T real(const Complex& x) { return x.re; }
  friend T imag(const Complex& x) { return x.im; }
  friend T abs2(const Complex& x) { return x.re * x.re + x.im * x.im; }
  friend bool is_zero(const Complex& x) { return is_zero(x.re) && is_zero(x.im); }
  friend std::complex<double> to_complex(const Complex& x) { return {to_double(x.re), to_double(x.im)}; }
};

using ExactComplex = Complex<Rational>;
/// Entry type for Lie-algebra elements in the unitary frame.
using FrameScalar = Complex<Sqrt2Field>;

// Uniform helpers so templates can treat real, exact-complex and
// float-complex scalars alike.
inline Rational conj(const Rational& x) { return x; }
inline Rational real(const Rational& x) { return x; }
inline Rational abs2(const Rational& x) { return x * x; }
inline double conj(double x) { return x; }
inline double real(double x) { return x; }
inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& z) { return std::norm(z); }

/// Extracts the rational value of an element that is known to be rational.
inline Rational to_rational(const Rational& x) { return x; }
template <class Base, int D>
Rational to_rational(const QuadExt<Base, D>& x) {
  if (!x.in_base()) throw std::domain_error("value is irrational");
  return to_rational(x.a);
}
template <class T>
Rational to_rational(const Complex<T>& x) {
  if (!is_zero(x.im)) throw std::domain_error("value is not real");
  return to_rational(x.re);
}

/// Embeds a rational into any scalar of the tower (or into double).
template <class S>
struct Embed {
  static S from(const Rational& q) { return S(q); }
};
template <>
struct Embed<double> {
  static double from(const Rational& q) { return to_double(q); }
};
template <>
struct Embed<std::complex<double>> {
  static std::complex<double> from(const Rational& q) { return {to_double(q), 0.0}; }
};
template <class Base, int D>
struct Embed<QuadExt<Base, D>> {
  static QuadExt<Base, D> from(const Rational& q) { return QuadExt<Base, D>(Embed<Base>::from(q)); }
};
template <class T>
struct Embed<Complex<T>> {
  static Complex<T> from(const Rational& q) { return Complex<T>(Embed<T>::from(q)); }
};
template <class S>
S from_rational(const Rational& q) {
  return Embed<S>::from(q);
}

/// Real-part type of a scalar: Rational for exact scalars, double for float ones.
template <class S>
struct real_of {
  using type = S;
};
template <class T>
struct real_of<Complex<T>> {
  using type = T;
};
template <>
struct real_of<std::complex<double>> {
  using type = double;
};
template <class S>
using real_t = typename real_of<S>::type;

}  // namespace qbcurv
