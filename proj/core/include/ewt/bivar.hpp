#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ewt/gf.hpp"
#include "ewt/rational.hpp"
#include "ewt/series.hpp"

namespace ewt {

// Element of K[[x^(1/n)]][y]. c[j] holds the coefficient of y^j as a dense
// series in x^(1/n); every coefficient is known below the common absolute
// precision `prec` (in units of x^(1/n)), or exactly when prec == kExact.
struct BivarPoly {
  Field F;
  std::int64_t ram = 1;
  std::int64_t prec = kExact;
  std::vector<ser::Vec> c;

  BivarPoly() = default;
  BivarPoly(Field field, std::vector<ser::Vec> coeffs, std::int64_t precision = kExact, std::int64_t ramification = 1);

  static BivarPoly zero(const Field& F) { return BivarPoly(F, {}); }
  static BivarPoly constant(const Field& F, Elem a) { return BivarPoly(F, {ser::Vec{a}}); }
  // a * x^i * y^j
  static BivarPoly monomial(const Field& F, Elem a, std::int64_t i, int j);
  static BivarPoly var_x(const Field& F) { return monomial(F, 1, 1, 0); }
  static BivarPoly var_y(const Field& F) { return monomial(F, 1, 0, 1); }
  // integer-coefficient expression in x, y (and g for the field generator)
  static BivarPoly parse(const Field& F, const std::string& text);

  bool is_exact() const { return prec >= kExact; }
  int deg_y() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  ser::Vec coeff(int j) const { return j >= 0 && j <= deg_y() ? c[static_cast<std::size_t>(j)] : ser::Vec{}; }
  Elem at(std::int64_t i, int j) const;
  // x-adic valuation: least x-exponent over all terms (in units of x^(1/n)); -1 when zero
  std::int64_t x_valuation() const;
  // ord_y f(0, y), -1 when f(0, y) vanishes
  int y_order_at_zero() const;
  // total degree in x (units of x^(1/n)) of the stored terms
  std::int64_t x_degree() const;

  void normalize();
  BivarPoly truncated(std::int64_t n) const;
  BivarPoly with_ramification(std::int64_t m) const;

  // terms ordered by y-degree descending, then x-degree ascending
  std::string str() const;
  bool operator==(const BivarPoly& o) const;
};

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
BivarPoly operator-(const BivarPoly& a);
BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
BivarPoly pow(const BivarPoly& a, unsigned e);
BivarPoly scale(const BivarPoly& a, Elem s);
BivarPoly embed(const BivarPoly& a, const Field& to);

BivarPoly derivative_y(const BivarPoly& f);
BivarPoly derivative_x(const BivarPoly& f);
// x -> x^m, exact
BivarPoly ramify_x(const BivarPoly& f, std::int64_t m);
// f(x, y + alpha(x)), coefficients truncated below precision N (in x units)
BivarPoly shift_y(const BivarPoly& f, const TruncatedSeries& alpha, const Rational& N);
// f(x, alpha(x))
TruncatedSeries substitute_y(const BivarPoly& f, const TruncatedSeries& alpha, const Rational& N);
// divide out x^k; all terms must have x-exponent >= k
BivarPoly divide_x_power(const BivarPoly& f, std::int64_t k);

struct WeierstrassSplit {
  std::int64_t x_power = 0;  // a with f = x^a * unit * w
  BivarPoly unit;
  BivarPoly w;
};

// f = x^a * unit * w modulo x^(a+N), w monic in y of degree ord f(0,y)
WeierstrassSplit weierstrass_prepare(const BivarPoly& f, std::int64_t N);

// Lift V(0,y) = a0*b0 (a0 monic and coprime to b0) to V = a*b mod x^N
// with a monic of degree deg a0, a = a0 and b = b0 at x = 0.
std::pair<BivarPoly, BivarPoly> hensel_lift(const BivarPoly& V, const UPoly& a0, const UPoly& b0, std::int64_t N);

// Exact resultant Res_y(f, g) in F[x] of two exact polynomials with ram 1.
UPoly resultant_y(const BivarPoly& f, const BivarPoly& g);
// Same value through a fraction-free determinant of the Sylvester matrix.
UPoly resultant_y_sylvester(const BivarPoly& f, const BivarPoly& g);
// gcd in F[x][y] normalized to have monic leading coefficient in x of its content-free part
BivarPoly gcd_xy(const BivarPoly& f, const BivarPoly& g);
// exact division in F[x][y]; throws InvalidArgument when not divisible
BivarPoly divide_exact(const BivarPoly& f, const BivarPoly& g);

// ord_x Res_y(a, b) for a monic in y over K[[x]] and b arbitrary, both
// known modulo x^N. PrecisionExhausted when the resultant vanishes mod x^N.
std::int64_t truncated_resultant_order(const BivarPoly& a, const BivarPoly& b, std::int64_t N);

// i0(f, g) for exact polynomial inputs; infinity when f and g share a branch.
Rational intersection_multiplicity(const BivarPoly& f, const BivarPoly& g);
// i0(f, g) / (i0(f, x) i0(g, x))
Rational log_distance(const BivarPoly& f, const BivarPoly& g);
// maximal order of the difference of Puiseux roots (tame case)
Rational order_of_coincidence(const BivarPoly& f, const BivarPoly& g);

}  // namespace ewt
