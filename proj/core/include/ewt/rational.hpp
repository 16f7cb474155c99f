#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <string>

#include "ewt/error.hpp"

namespace ewt {

// Exact rational with machine-word numerator/denominator and a +infinity value.
// Every operation checks for overflow and throws ErrorKind::Overflow.
class Rational {
 public:
  constexpr Rational() : n_(0), d_(1) {}
  constexpr Rational(std::int64_t n) : n_(n), d_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  static constexpr Rational infinity() { return Rational(1, 0, raw_tag{}); }

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }
  bool is_inf() const { return d_ == 0; }
  bool is_zero() const { return d_ != 0 && n_ == 0; }
  bool is_integer() const { return d_ == 1; }

  // floor / ceil for finite values
  std::int64_t floor() const;
  std::int64_t ceil() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "a/b", "a", or "inf"
  std::string str() const;
  static Rational parse(const std::string& s);

 private:
  struct raw_tag {};
  constexpr Rational(std::int64_t n, std::int64_t d, raw_tag) : n_(n), d_(d) {}
  std::int64_t n_, d_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace ewt
