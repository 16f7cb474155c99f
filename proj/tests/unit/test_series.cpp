#include "doctest.h"
#include "ewt/branch.hpp"
#include "ewt/error.hpp"
#include "ewt/series.hpp"
#include "generators.hpp"

using namespace ewt;

TEST_SUITE("series") {
  TEST_CASE("arithmetic") {
    Field F2 = Field::make(2), F5 = Field::make(5);
    auto a = TruncatedSeries::parse(F2, "x^(3/2)");
    CHECK((a * a) == TruncatedSeries::parse(F2, "x^3"));
    auto s = TruncatedSeries::parse(F5, "x + x^2") + TruncatedSeries::parse(F5, "-x");
    CHECK(s.order() == Rational(2));
    std::vector<std::pair<Rational, Elem>> geo;
    for (int k = 0; k < 5; ++k) geo.push_back({Rational(k), 1});
    auto g = TruncatedSeries::from_terms(F5, geo, Rational(5));
    auto prod = TruncatedSeries::parse(F5, "1 - x") * g;
    CHECK(prod.precision() == Rational(5));
    CHECK(prod.terms() == std::vector<std::pair<Rational, Elem>>{{Rational(0), 1}});
  }

  TEST_CASE("order of an unresolved truncation is not guessed") {
    Field F5 = Field::make(5);
    auto z = TruncatedSeries::zero(F5, 1, 4);
    CHECK_THROWS_AS(z.order(), Error);
    CHECK(TruncatedSeries::zero(F5).order().is_inf());
  }

  TEST_CASE("index_of") {
    Field F5 = Field::make(5);
    CHECK(index_of(TruncatedSeries::parse(F5, "x^(3/2) + x^(5/3)")) == 6);
    CHECK(index_of(TruncatedSeries::parse(F5, "x^2 + x^5")) == 1);
    CHECK_THROWS_AS(index_of(TruncatedSeries::zero(F5)), Error);
    // a root of (y^3+x^4)^2+x^9
    Decomposition D = branch_decompose(BivarPoly::parse(F5, "(y^3+x^4)^2+x^9"));
    REQUIRE(D.factors.size() == 1);
    CHECK(index_of(puiseux_root(D.factors[0].branch)) == 6);
  }

  TEST_CASE("text round trip") {
    Field F5 = Field::make(5);
    auto a = TruncatedSeries::parse(F5, "2*x^(3/2) + x^2");
    CHECK(TruncatedSeries::parse(F5, a.str()) == a);
  }

  TEST_CASE("property: orders of products and sums") {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 300; ++n) {
      Field F = gen::field(rng);
      auto term = [&](int count) {
        std::vector<std::pair<Rational, Elem>> t;
        for (int k = 0; k < count; ++k)
          t.push_back({Rational(static_cast<std::int64_t>(1 + gen::below(rng, 12)), static_cast<std::int64_t>(1 + gen::below(rng, 4))),
                       gen::nonzero(F, rng)});
        return TruncatedSeries::from_terms(F, t);
      };
      auto a = term(1 + static_cast<int>(gen::below(rng, 3))), b = term(1 + static_cast<int>(gen::below(rng, 3)));
      if (a.is_zero() || b.is_zero()) continue;
      CHECK((a * b).order() == a.order() + b.order());
      auto s = a + b;
      if (a.order() != b.order()) CHECK(s.order() == min(a.order(), b.order()));
      else CHECK(s.order() >= a.order());
    }
  }

  TEST_CASE("property: minimal polynomial degree equals the index when tame") {
    std::mt19937_64 rng(22);
    for (int n = 0; n < 60; ++n) {
      Field F = Field::make(std::vector<std::uint64_t>{2, 3, 5}[gen::below(rng, 3)]);
      auto T = gen::tame(F, rng, 6);
      Decomposition D = branch_decompose(T.f);
      REQUIRE(D.factors.size() == 1);
      CHECK(index_of(puiseux_root(D.factors[0].branch)) == T.f.deg_y());
    }
  }
}
