#include "ginv/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ginv/error.hpp"

namespace ginv {

Rational::Rational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Rational Rational::parse_real(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    fail(ErrorCode::parse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(strip_plus(num), 10);
  mpz_class q(den, 10);
  if (q == 0) fail(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(p, q));
}

Rational Rational::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    fail(ErrorCode::invalid_argument, "non-finite value cannot be made exact");
  }
  return Rational(mpq_class(re), mpq_class(im));
}

std::string Rational::to_string() const {
  if (is_real()) return re_.get_str();
  return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + mpq_class(abs(im_)).get_str() + "i)";
}

Rational& Rational::operator+=(const Rational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::invalid_argument, "division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  mpq_class d = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

bool scalar_equal(const Rational& a, const Rational& b, double) { return a == b; }

bool scalar_equal(const Complex& a, const Complex& b, double tol) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace ginv
