#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewt/error.hpp"

namespace ewt {

// Packed element of GF(p^k): the base-p digits of the value are the
// coefficients of the element as a polynomial in the generator g.
using Elem = std::uint64_t;

struct FieldImpl;

class Field {
 public:
  Field() = default;

  // p prime below 2^32, p^k below 2^62. modulus holds k+1 coefficients
  // (low to high, monic); omitted means the first irreducible polynomial
  // in the order of the packed coefficient vector.
  static Field make(std::uint64_t p, unsigned k = 1,
                    const std::optional<std::vector<std::uint64_t>>& modulus = std::nullopt);
  // "GF(p)", "GF(p^k)" or "GF(p^k)[modulus=g^2+g+1]"
  static Field parse(const std::string& spec);

  bool valid() const { return impl_ != nullptr; }
  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const;
  std::string spec() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  // the class of g; equals one() for a prime field
  Elem gen() const { return k_ == 1 ? 1 : p_; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (a == 0) return 0;
    if (k_ == 1) return p_ - a;
    if (p_ == 2) return a;
    return neg_slow(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (k_ == 1) return (a * b) % p_;
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  Elem pth_root(Elem a) const;

  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint64_t>& d) const;

  // nonzero element of multiplicative order exactly n, or nullopt when n does not divide q-1
  std::optional<Elem> root_of_unity(std::uint64_t n) const;

  std::string format(Elem a) const;
  Elem parse_element(const std::string& s) const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;

  std::shared_ptr<const FieldImpl> impl_;
  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
};

// Element bundled with its field, for public-facing use.
struct FieldElement {
  Field field;
  Elem value = 0;

  FieldElement operator+(const FieldElement& o) const { return {field, field.add(value, o.value)}; }
  FieldElement operator-(const FieldElement& o) const { return {field, field.sub(value, o.value)}; }
  FieldElement operator*(const FieldElement& o) const { return {field, field.mul(value, o.value)}; }
  FieldElement operator-() const { return {field, field.neg(value)}; }
  FieldElement inverse() const { return {field, field.inv(value)}; }
  FieldElement pow(std::uint64_t e) const { return {field, field.pow(value, e)}; }
  bool operator==(const FieldElement& o) const { return field == o.field && value == o.value; }
  std::string str() const { return field.format(value); }
};

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
using UPoly = std::vector<Elem>;

namespace upoly {
void trim(UPoly& a);
int deg(const UPoly& a);  // -1 for zero
UPoly add(const Field& F, const UPoly& a, const UPoly& b);
UPoly sub(const Field& F, const UPoly& a, const UPoly& b);
UPoly mul(const Field& F, const UPoly& a, const UPoly& b);
UPoly scale(const Field& F, const UPoly& a, Elem c);
// a = q*b + r
void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly mod(const Field& F, const UPoly& a, const UPoly& b);
UPoly quo(const Field& F, const UPoly& a, const UPoly& b);
UPoly monic(const Field& F, const UPoly& a);
UPoly gcd(const Field& F, UPoly a, UPoly b);  // monic
// inverse of a modulo m; a and m coprime
UPoly inv_mod(const Field& F, const UPoly& a, const UPoly& m);
UPoly powmod(const Field& F, const UPoly& a, std::uint64_t e, const UPoly& m);
UPoly derivative(const Field& F, const UPoly& a);
Elem eval(const Field& F, const UPoly& a, Elem x);
bool is_irreducible(const Field& F, const UPoly& f);
std::string format(const Field& F, const UPoly& a, const std::string& var = "y");
}  // namespace upoly

struct RootsResult {
  Field field;                              // field the roots live in
  std::vector<std::pair<Elem, int>> roots;  // sorted by packed value
  UPoly residual;                           // f / prod (y - r)^m, made monic
};

// Roots with multiplicities. With allow_extension the roots are returned in
// the smallest extension that splits f and residual == {1}.
RootsResult univariate_roots(const Field& F, const UPoly& f, bool allow_extension);

// Degree r of the smallest extension GF(q^r) over which f splits.
unsigned splitting_degree(const Field& F, const UPoly& f);

// GF(p^(k r)) with its default modulus.
Field extension(const Field& F, unsigned r);

// Ring embedding of `from` into `to`; prime field is fixed. The image of the
// generator is the smallest root of from's modulus in `to`.
Elem embed(const Field& from, Elem a, const Field& to);
FieldElement embed(const FieldElement& e, const Field& to);
UPoly embed(const Field& from, const UPoly& a, const Field& to);

bool is_prime(std::uint64_t n);

}  // namespace ewt
