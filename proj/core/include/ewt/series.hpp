#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ewt/gf.hpp"
#include "ewt/rational.hpp"

namespace ewt {

// Sentinel precision for exact (polynomial) data.
inline constexpr std::int64_t kExact = INT64_MAX / 4;

// Dense truncated power series helpers in a single variable t. A vector
// holds the coefficients of t^0, t^1, ...; callers track precision.
namespace ser {
using Vec = std::vector<Elem>;
void trim(Vec& a);
// index of the first nonzero coefficient, or -1
std::int64_t ord(const Vec& a);
Vec add(const Field& F, const Vec& a, const Vec& b);
Vec sub(const Field& F, const Vec& a, const Vec& b);
Vec neg(const Field& F, const Vec& a);
Vec scale(const Field& F, const Vec& a, Elem c);
Vec truncate(Vec a, std::int64_t n);
// product mod t^n
Vec mul(const Field& F, const Vec& a, const Vec& b, std::int64_t n);
// inverse mod t^n, a[0] != 0
Vec inv(const Field& F, const Vec& a, std::int64_t n);
Vec pow(const Field& F, const Vec& a, std::uint64_t e, std::int64_t n);
// a(x(t)) mod t^n where x has positive order
Vec compose(const Field& F, const Vec& a, const Vec& x, std::int64_t n);
// a(t^m)
Vec stretch(const Vec& a, std::int64_t m);
Vec shift(const Vec& a, std::int64_t k);  // multiply by t^k
Vec embed(const Field& from, const Vec& a, const Field& to);
}  // namespace ser

// Power series in x^(1/n) known below an absolute precision N (exponents
// >= N unknown); the exact case carries no truncation.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(Field F, std::int64_t ram, ser::Vec coeffs, std::int64_t prec = kExact);

  static TruncatedSeries zero(const Field& F, std::int64_t ram = 1, std::int64_t prec = kExact);
  static TruncatedSeries monomial(const Field& F, Elem c, const Rational& e);
  // terms as (exponent, coefficient); precision as a rational or infinity for exact
  static TruncatedSeries from_terms(const Field& F, const std::vector<std::pair<Rational, Elem>>& terms,
                                    const Rational& precision = Rational::infinity());

  const Field& field() const { return F_; }
  std::int64_t ramification() const { return ram_; }
  bool is_exact() const { return prec_ >= kExact; }
  Rational precision() const;
  // raw coefficient vector in the variable x^(1/n) and precision in those units
  const ser::Vec& coeffs() const { return c_; }
  std::int64_t raw_precision() const { return prec_; }

  std::vector<std::pair<Rational, Elem>> terms() const;
  Elem coeff(const Rational& e) const;
  // certified zero: exact with no terms
  bool is_zero() const { return c_.empty() && is_exact(); }
  // order, infinity for the exact zero; PrecisionExhausted when no nonzero term is certified
  Rational order() const;

  TruncatedSeries with_ramification(std::int64_t m) const;
  TruncatedSeries truncated(const Rational& N) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(Elem c) const;
  bool operator==(const TruncatedSeries& o) const;

  // "a*x^(p/q) + ..." followed by "+ O(x^(N))" when truncated
  std::string str() const;
  static TruncatedSeries parse(const Field& F, const std::string& text);

 private:
  void normalize();
  Field F_;
  std::int64_t ram_ = 1;
  std::int64_t prec_ = kExact;
  ser::Vec c_;
};

// A series viewed as a Puiseux series: index and order.
class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  explicit PuiseuxSeries(TruncatedSeries s) : s_(std::move(s)) {}
  const TruncatedSeries& series() const { return s_; }
  // minimal common denominator of the support; ZeroSeries for empty support
  std::int64_t index() const;
  Rational order() const { return s_.order(); }
  std::string str() const { return s_.str(); }

 private:
  TruncatedSeries s_;
};

std::int64_t index_of(const TruncatedSeries& s);

}  // namespace ewt
