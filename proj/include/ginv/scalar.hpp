#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace ginv {

enum class Backend { exact, f64 };

/// Gaussian rational: arbitrary-precision rational real and imaginary parts.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : re_(v) {}  // NOLINT: implicit from integer literals
  Rational(mpq_class re, mpq_class im = 0);

  /// Parses "p", "p/q", "-p/q" (no imaginary part).
  static Rational parse_real(std::string_view text);
  /// Exact conversion; a double is always a dyadic rational.
  static Rational from_double(double re, double im = 0.0);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  Rational conj() const { return Rational(re_, -im_); }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.re_, -a.im_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_;
  mpq_class im_;
};

using Complex = std::complex<double>;

constexpr double kDefaultTol = 1e-10;

// Uniform scalar vocabulary for the two backends.

inline bool exact_zero(const Rational& x) { return x.is_zero(); }
inline bool exact_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline Rational conjugate(const Rational& x) { return x.conj(); }
inline Complex conjugate(const Complex& x) { return std::conj(x); }

inline double magnitude(const Rational& x) { return std::abs(x.to_complex()); }
inline double magnitude(const Complex& x) { return std::abs(x); }

/// Float equality: |a-b| <= tol * max(1, |a|, |b|). Exact equality otherwise.
bool scalar_equal(const Rational& a, const Rational& b, double tol = kDefaultTol);
bool scalar_equal(const Complex& a, const Complex& b, double tol = kDefaultTol);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::exact;
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::f64;
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class To>
To scalar_cast(const Rational& x);
template <class To>
To scalar_cast(const Complex& x);

template <>
inline Rational scalar_cast<Rational>(const Rational& x) { return x; }
template <>
inline Complex scalar_cast<Complex>(const Rational& x) { return x.to_complex(); }
template <>
inline Rational scalar_cast<Rational>(const Complex& x) {
  return Rational::from_double(x.real(), x.imag());
}
template <>
inline Complex scalar_cast<Complex>(const Complex& x) { return x; }

}  // namespace ginv
