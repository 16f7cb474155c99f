#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewt/bivar.hpp"
#include "ewt/newton.hpp"

namespace ewt {

inline constexpr std::int64_t kDefaultPrecision = 32;
inline constexpr std::int64_t kMaxPrecision = 4096;

// Thrown inside a computation when a root lives in a proper extension of
// the working field. `degree` is relative to the field in use.
struct NeedExtension {
  unsigned degree = 1;
};

// Runs fn(field, N) and restarts from scratch on NeedExtension (larger
// field) or PrecisionExhausted (doubled N). Restarting keeps every piece of
// data from one run consistent with a single field and precision.
template <class Fn>
auto with_restarts(const Field& base, std::int64_t N0, Fn&& fn, bool grow_precision = true) {
  Field E = base;
  std::int64_t N = N0;
  while (true) {
    try {
      return fn(E, N);
    } catch (const NeedExtension& ne) {
      unsigned total = E.k() * ne.degree;
      if (E.k() * static_cast<std::uint64_t>(ne.degree) > 64) fail(ErrorKind::FieldTooLarge, "extension degree too large");
      E = extension(base, total / base.k());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || !grow_precision || N >= kMaxPrecision) throw;
      N *= 2;
    }
  }
}

enum class Certificate { Certified, Uncertain };
const char* certificate_name(Certificate c);

// Primitive parametrization (x(t), y(t)), both known modulo t^prec.
struct Parametrization {
  Field F;
  ser::Vec x, y;
  std::int64_t prec = kExact;

  // "x=t^2, y=2*t^3"
  static Parametrization parse(const Field& F, const std::string& text);
  std::string str() const;
  std::int64_t degree() const { return ser::ord(x); }
};

struct SemigroupData {
  std::vector<std::int64_t> gens;  // b̄_0 .. b̄_h

  int h() const { return static_cast<int>(gens.size()) - 1; }
  std::int64_t e(int i) const;  // gcd(b̄_0..b̄_i)
  std::int64_t n(int i) const;  // e_{i-1}/e_i, n(0) = 1
  std::int64_t m(int i) const;  // b̄_i/e_i
  // contact of the i-th marked point, e_{i-1} b̄_i / b̄_0^2 (1 <= i <= h)
  Rational contact(int i) const;
  std::int64_t conductor() const;
  // throws InvalidArgument when a structural invariant fails
  void validate() const;
  std::string str() const;
  bool operator==(const SemigroupData& o) const { return gens == o.gens; }
};

struct CharSequence {
  std::vector<std::int64_t> b;
  bool puiseux_valid = false;
};

struct Branch {
  BivarPoly w;  // monic Weierstrass polynomial over the working field
  std::optional<Parametrization> param;
  std::optional<SemigroupData> semigroup;
  Certificate cert = Certificate::Certified;
  int piece = -1;  // index of the exact coprime piece the branch came from

  int degree() const { return w.deg_y(); }
  std::int64_t precision() const { return w.prec; }
};

struct BranchFactor {
  Branch branch;
  int multiplicity = 1;
};

struct Decomposition {
  Field field;
  std::int64_t x_power = 0;
  std::int64_t precision = 0;
  std::vector<BranchFactor> factors;
  bool certified() const;
};

// Factors with multiplicity exactly e, e = 1, 2, ... (constant layers omitted).
std::vector<std::pair<BivarPoly, int>> squarefree_layers(const BivarPoly& f);
BivarPoly radical(const BivarPoly& f);

// Local irreducible factors of a monic Weierstrass polynomial known modulo
// x^prec; may throw NeedExtension or PrecisionExhausted.
std::vector<Branch> factor_weierstrass(const BivarPoly& w, bool parametrize = true);

// Branches of the exact polynomial f (x-power split off) over f's field or an
// extension of it, at working precision N. Extends the field on demand.
Decomposition branch_decompose(const BivarPoly& f, std::int64_t N);
// Same, doubling the precision until everything is certified below it.
Decomposition branch_decompose(const BivarPoly& f);
// Inside an existing restart loop: no field or precision handling.
Decomposition branch_decompose_in(const BivarPoly& f, std::int64_t N, bool parametrize = true);

SemigroupData semigroup_from_parametrization(const Parametrization& par);
SemigroupData semigroup_of_branch(const Branch& b);
CharSequence char_sequence(const SemigroupData& s, std::uint64_t p);

// All conjugate Puiseux roots truncated to `terms` nonzero terms; tame only.
std::vector<TruncatedSeries> newton_puiseux_expand(const Branch& b, std::int64_t terms);

// The root y(t) with x = t^n read as a series in x^(1/n); needs x(t) = t^n.
TruncatedSeries puiseux_root(const Branch& b);

enum class Tristate { Yes, No, Unknown };
const char* tristate_name(Tristate t);
Tristate has_puiseux_roots(const Branch& b);

BivarPoly key_polynomial(const Branch& b, int level);

// i0(a, b) of two branches, PrecisionExhausted when not certified below the
// available precision; infinity only for the same piece and same branch index.
Rational branch_intersection(const Branch& a, const Branch& b);

// value of an element of `from` that lies in the subfield `to`
Elem restrict_to_subfield(const Field& from, Elem a, const Field& to);

}  // namespace ewt
