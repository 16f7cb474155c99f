#include <map>
#include <numeric>

#include "doctest.h"
#include "ewt/branch.hpp"
#include "ewt/error.hpp"
#include "ewt/polar.hpp"
#include "generators.hpp"

using namespace ewt;

namespace {

BivarPoly P(const Field& F, const char* s) { return BivarPoly::parse(F, s); }

Branch single(const BivarPoly& f) {
  Decomposition D = branch_decompose(f);
  REQUIRE(D.factors.size() == 1);
  REQUIRE(D.factors[0].multiplicity == 1);
  return D.factors[0].branch;
}

SemigroupData sg(std::vector<std::int64_t> g) { return SemigroupData{std::move(g)}; }

}  // namespace

TEST_SUITE("branch") {
  TEST_CASE("branch_decompose") {
    Field F5 = Field::make(5);
    Decomposition D = branch_decompose(P(F5, "y^3+x^3*y"));
    REQUIRE(D.factors.size() == 2);
    CHECK(D.certified());
    std::vector<int> degs;
    for (const auto& bf : D.factors) degs.push_back(bf.branch.degree());
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{1, 2});

    Branch b = single(P(F5, "y^2+x^3"));
    CHECK(b.cert == Certificate::Certified);
    CHECK(cmp::same(b.w, P(F5, "y^2+x^3")));

    Decomposition E = branch_decompose(P(F5, "x^2*(y-x)^3*(y^2+x^3)"));
    CHECK(E.x_power == 2);
    int total = 0;
    for (const auto& bf : E.factors) total += bf.multiplicity * bf.branch.degree();
    CHECK(total == 5);
  }

  TEST_CASE("polar factors of the three-branch example group by attach point") {
    Field F5 = Field::make(5);
    PolarAnalysis A = analyze(P(F5, "(y^2+x^3)*(y^3+x^4)*((y^3+x^4)^2+x^9)"));
    std::map<std::string, std::int64_t> by_point;
    for (int k : A.g_factors) {
      const LocalFactor& lf = A.factors[static_cast<std::size_t>(k)];
      by_point[A.tree.node(A.attach[static_cast<std::size_t>(k)].node).label] += lf.mult_g * lf.branch.degree();
    }
    CHECK(by_point == std::map<std::string, std::int64_t>{{"P1", 3}, {"P2", 1}, {"P3", 6}});
  }

  TEST_CASE("newton_puiseux_expand") {
    Field F5 = Field::make(5);
    auto r = newton_puiseux_expand(single(P(F5, "y^2+x^3")), 2);
    REQUIRE(r.size() == 2);
    std::vector<Elem> lead{r[0].coeff(Rational(3, 2)), r[1].coeff(Rational(3, 2))};
    std::sort(lead.begin(), lead.end());
    CHECK(lead == std::vector<Elem>{2, 3});
    CHECK(cmp::same(r[0], TruncatedSeries::parse(F5, "2*x^(3/2)")));

    auto c = newton_puiseux_expand(single(P(F5, "y^3+x^4")), 1);
    REQUIRE(c.size() == 3);
    for (const auto& a : c) {
      CHECK(a.order() == Rational(4, 3));
      Elem k = a.coeff(Rational(4, 3));
      CHECK(a.field().mul(a.field().mul(k, k), k) == a.field().from_int(-1));
    }
    auto l = newton_puiseux_expand(single(P(F5, "y-x^2")), 3);
    REQUIRE(l.size() == 1);
    CHECK(cmp::same(l[0], TruncatedSeries::parse(F5, "x^2")));

    Field F3 = Field::make(3);
    CHECK_THROWS_AS(newton_puiseux_expand(single(P(F3, "y^3-x^3*y+x^4")), 3), Error);
  }

  TEST_CASE("has_puiseux_roots") {
    Field F3 = Field::make(3), F5 = Field::make(5), F2 = Field::make(2);
    CHECK(has_puiseux_roots(single(P(F3, "y^3-x^3*y+x^4"))) == Tristate::No);
    CHECK(has_puiseux_roots(single(P(F5, "y^2+x^3"))) == Tristate::Yes);
    CHECK(has_puiseux_roots(single(P(F2, "y^2+x^3"))) == Tristate::Yes);
  }

  TEST_CASE("semigroup_of_branch") {
    Field F5 = Field::make(5);
    CHECK(semigroup_of_branch(single(P(F5, "y^2+x^3"))).gens == std::vector<std::int64_t>{2, 3});
    SemigroupData s = semigroup_of_branch(single(P(F5, "(y^3+x^4)^2+x^9")));
    CHECK(s.gens == std::vector<std::int64_t>{6, 8, 27});
    CHECK(s.contact(2) == Rational(3, 2));
    CHECK(semigroup_of_branch(single(P(F5, "y"))).gens == std::vector<std::int64_t>{1});
    auto par = Parametrization::parse(Field::make(3), "x=t^3, y=-t^5");
    CHECK(semigroup_from_parametrization(par).gens == std::vector<std::int64_t>{3, 5});
  }

  TEST_CASE("SemigroupData derived numbers") {
    SemigroupData s = sg({6, 8, 27});
    CHECK(s.e(0) == 6);
    CHECK(s.e(1) == 2);
    CHECK(s.e(2) == 1);
    CHECK(s.n(1) == 3);
    CHECK(s.n(2) == 2);
    CHECK(s.m(1) == 4);
    CHECK(s.m(2) == 27);
    CHECK(s.contact(1) == Rational(4, 3));
    CHECK(s.conductor() == 38);
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(sg({4, 6, 12}).validate(), Error);
  }

  TEST_CASE("char_sequence") {
    CHECK(char_sequence(sg({6, 8, 27}), 5).b == std::vector<std::int64_t>{6, 8, 11});
    CHECK(char_sequence(sg({2, 3}), 5).b == std::vector<std::int64_t>{2, 3});
    CHECK(char_sequence(sg({4, 6, 13}), 5).b == std::vector<std::int64_t>{4, 6, 7});
    CHECK(char_sequence(sg({6, 8, 27}), 5).puiseux_valid);
    CHECK_FALSE(char_sequence(sg({6, 8, 27}), 3).puiseux_valid);
  }

  TEST_CASE("key_polynomial") {
    Field F5 = Field::make(5);
    BivarPoly f3 = P(F5, "(y^3+x^4)^2+x^9");
    Branch b = single(f3);
    BivarPoly k1 = key_polynomial(b, 1);
    // the cube roots of unity live in GF(25)
    CHECK(b.w.F.k() == 2);
    CHECK(cmp::same(k1, embed(P(F5, "y^3+x^4"), k1.F)));
    CHECK(intersection_multiplicity(embed(f3, k1.F), k1) == Rational(27));
    CHECK(cmp::same(key_polynomial(b, 0), embed(P(F5, "y"), b.w.F)));
    CHECK(key_polynomial(b, 2) == b.w);
  }

  TEST_CASE("property: decompositions multiply back") {
    std::mt19937_64 rng(51);
    for (int n = 0; n < 60; ++n) {
      Field F = Field::make(std::vector<std::uint64_t>{2, 3, 5, 7}[gen::below(rng, 4)]);
      BivarPoly f = gen::weierstrass(F, rng, 1 + static_cast<int>(gen::below(rng, 5)), 5);
      Decomposition D;
      try {
        D = branch_decompose(f);
      } catch (const Error&) {
        continue;  // wild input beyond the precision budget
      }
      if (!D.certified()) continue;
      int total = 0;
      for (const auto& bf : D.factors) total += bf.multiplicity * bf.branch.degree();
      CHECK(total == f.y_order_at_zero());
      BivarPoly prod = BivarPoly::constant(D.field, 1);
      for (const auto& bf : D.factors) prod = prod * pow(bf.branch.w, static_cast<unsigned>(bf.multiplicity));
      // f = unit * prod: the quotient's Weierstrass part is trivial, so prod agrees with w_f
      auto W = weierstrass_prepare(embed(f, D.field), D.precision);
      CHECK(cmp::same(prod, W.w));
    }
  }

  TEST_CASE("property: semigroup invariants and contact of key polynomials increase") {
    std::mt19937_64 rng(52);
    for (int n = 0; n < 60; ++n) {
      Field F = Field::make(std::vector<std::uint64_t>{2, 3, 5}[gen::below(rng, 3)]);
      auto T = gen::tame(F, rng, 6);
      Branch b = single(T.f);
      SemigroupData s = semigroup_of_branch(b);
      CHECK_NOTHROW(s.validate());
      CHECK(s.gens[0] == T.f.deg_y());
      for (int i = 1; i <= s.h(); ++i) CHECK(std::gcd(s.m(i), s.n(i)) == 1);
      BivarPoly f = embed(T.f, b.w.F);
      Rational prev(-1);
      for (int i = 0; i < s.h(); ++i) {
        Rational d = log_distance(key_polynomial(b, i), f);
        CHECK(prev < d);
        CHECK(intersection_multiplicity(key_polynomial(b, i), f) == Rational(s.gens[static_cast<std::size_t>(i) + 1]));
        prev = d;
      }
    }
  }

  TEST_CASE("property: char sequence recursion and gcd invariant") {
    std::mt19937_64 rng(53);
    for (int n = 0; n < 60; ++n) {
      Field F = Field::make(std::vector<std::uint64_t>{2, 3, 5}[gen::below(rng, 3)]);
      SemigroupData s = semigroup_of_branch(single(gen::tame(F, rng, 8).f));
      CharSequence cs = char_sequence(s, F.p());
      CHECK(cs.puiseux_valid);
      std::int64_t g = 0;
      for (int l = 0; l <= s.h(); ++l) {
        g = std::gcd(g, cs.b[static_cast<std::size_t>(l)]);
        CHECK(g == s.e(l));
        if (l >= 2) CHECK(s.gens[l] == s.n(l - 1) * s.gens[l - 1] + cs.b[l] - cs.b[l - 1]);
      }
    }
  }

  TEST_CASE("property: ramification by p^k") {
    std::mt19937_64 rng(54);
    for (int n = 0; n < 40; ++n) {
      std::uint64_t p = std::vector<std::uint64_t>{2, 3}[gen::below(rng, 2)];
      Field F = Field::make(p);
      auto T = gen::tame(F, rng, 5);
      for (int k : {1, 2}) {
        std::int64_t q = k == 1 ? static_cast<std::int64_t>(p) : static_cast<std::int64_t>(p * p);
        Decomposition D = branch_decompose(ramify_x(T.f, q));
        REQUIRE(D.factors.size() == 1);
        CHECK(D.factors[0].multiplicity == 1);  // s = 1 since p does not divide the index
      }
    }
    // s = p^k when p^k divides the index
    Field F2 = Field::make(2), F3 = Field::make(3);
    CHECK(branch_decompose(ramify_x(P(F2, "y^4+x^5"), 4)).factors.at(0).multiplicity == 4);
    CHECK(branch_decompose(ramify_x(P(F3, "y^3+x^4"), 3)).factors.at(0).multiplicity == 3);
  }
}
