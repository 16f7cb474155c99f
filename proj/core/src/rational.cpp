#include "ewt/rational.hpp"

#include <ostream>

namespace ewt {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NotRegularInY: return "NotRegularInY";
    case ErrorKind::NoPuiseuxRoots: return "NoPuiseuxRoots";
    case ErrorKind::EdgeNotOnPolygon: return "EdgeNotOnPolygon";
    case ErrorKind::WildRamification: return "WildRamification";
    case ErrorKind::NoParametrization: return "NoParametrization";
    case ErrorKind::GluingInconsistency: return "GluingInconsistency";
    case ErrorKind::PointOffTree: return "PointOffTree";
    case ErrorKind::InconsistentDistances: return "InconsistentDistances";
    case ErrorKind::WildCharacteristic: return "WildCharacteristic";
    case ErrorKind::UncertainFactorization: return "UncertainFactorization";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::VanishesOnBranch: return "VanishesOnBranch";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
  }
  return "Unknown";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer multiplication");
  return r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  if (d < 0) {
    n = checked_mul(n, -1);
    d = checked_mul(d, -1);
  }
  std::int64_t g = std::gcd(n, d);
  n_ = n / g;
  d_ = d / g;
}

std::int64_t Rational::floor() const {
  if (is_inf()) fail(ErrorKind::InvalidArgument, "floor of infinity");
  std::int64_t q = n_ / d_;
  if (n_ % d_ != 0 && n_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  if (is_inf()) fail(ErrorKind::InvalidArgument, "ceil of infinity");
  std::int64_t q = n_ / d_;
  if (n_ % d_ != 0 && n_ > 0) ++q;
  return q;
}

Rational Rational::operator-() const {
  if (is_inf()) fail(ErrorKind::InvalidArgument, "negative infinity");
  return Rational(checked_mul(n_, -1), d_, raw_tag{});
}

Rational& Rational::operator+=(const Rational& o) {
  if (is_inf() || o.is_inf()) {
    *this = infinity();
    return *this;
  }
  std::int64_t g = std::gcd(d_, o.d_);
  std::int64_t a = checked_mul(n_, o.d_ / g);
  std::int64_t b = checked_mul(o.n_, d_ / g);
  *this = Rational(checked_add(a, b), checked_mul(d_ / g, o.d_));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (o.is_inf()) fail(ErrorKind::InvalidArgument, "subtracting infinity");
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (is_inf() || o.is_inf()) {
    if (is_zero() || o.is_zero()) fail(ErrorKind::InvalidArgument, "0 * infinity");
    *this = infinity();
    return *this;
  }
  std::int64_t g1 = std::gcd(n_, o.d_), g2 = std::gcd(o.n_, d_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  *this = Rational(checked_mul(n_ / g1, o.n_ / g2), checked_mul(d_ / g2, o.d_ / g1));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_inf()) {
    if (is_inf()) fail(ErrorKind::InvalidArgument, "inf / inf");
    *this = Rational(0);
    return *this;
  }
  if (o.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero");
  if (is_inf()) return *this;
  return *this *= Rational(o.d_, o.n_);
}

bool operator<(const Rational& a, const Rational& b) {
  if (a.is_inf()) return false;
  if (b.is_inf()) return true;
  __int128 l = static_cast<__int128>(a.n_) * b.d_;
  __int128 r = static_cast<__int128>(b.n_) * a.d_;
  return l < r;
}

std::string Rational::str() const {
  if (is_inf()) return "inf";
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::parse(const std::string& s) {
  if (s == "inf") return infinity();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad rational '" + s + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace ewt
