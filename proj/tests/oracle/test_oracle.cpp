#include "doctest.h"
#include "ewt/error.hpp"
#include "ewt/oracle.hpp"
#include "generators.hpp"

using namespace ewt;

namespace {

BivarPoly P(const Field& F, const char* s) { return BivarPoly::parse(F, s); }
Parametrization par(const Field& F, const char* s) { return Parametrization::parse(F, s); }

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("i0_oracle") {
    Field F5 = Field::make(5), F3 = Field::make(3);
    CHECK(oracle::i0_oracle(P(F5, "y^3+x^4"), par(F5, "x=t^2, y=2*t^3")) == 8);
    CHECK(oracle::i0_oracle(P(F5, "x"), par(F5, "x=t^2, y=2*t^3")) == 2);
    CHECK(oracle::i0_oracle(P(F3, "y"), par(F3, "x=t^3, y=-t^5")) == 5);
    CHECK_THROWS_AS(oracle::i0_oracle(P(F5, "y^2+x^3"), par(F5, "x=t^2, y=2*t^3")), Error);
  }

  TEST_CASE("semigroup_oracle") {
    Field F5 = Field::make(5);
    CHECK(oracle::semigroup_oracle(par(F5, "x=t^2, y=2*t^3"), 10) == std::vector<std::int64_t>{2, 3});
    CHECK(oracle::semigroup_oracle(par(F5, "x=t, y=0"), 4) == std::vector<std::int64_t>{1});
    CHECK(oracle::semigroup_oracle(par(F5, "x=t^4, y=t^2+t^3"), 20) == std::vector<std::int64_t>{2, 5});
    // f3 = (y^3+x^4)^2+x^9 from its own parametrization
    Decomposition D = branch_decompose(P(F5, "(y^3+x^4)^2+x^9"), 256);
    REQUIRE(D.factors.size() == 1);
    REQUIRE(D.factors[0].branch.param);
    CHECK(oracle::semigroup_oracle(*D.factors[0].branch.param, 40) == std::vector<std::int64_t>{6, 8, 27});
    CHECK_THROWS_AS(oracle::semigroup_oracle(*D.factors[0].branch.param, 20), Error);
  }

  TEST_CASE("implicitize and helpers") {
    Field F5 = Field::make(5);
    CHECK(oracle::implicitize(par(F5, "x=t^2, y=2*t^3")) == P(F5, "y^2+x^3"));
    CHECK(oracle::conductor_of({6, 8, 27}) == 38);
    CHECK(oracle::conductor_of({2, 3}) == 2);
    CHECK(oracle::minimal_generators({6, 8, 12, 27, 14}) == std::vector<std::int64_t>{6, 8, 27});
  }

  TEST_CASE("property: resultant i0 equals the pullback order on tame pairs") {
    std::mt19937_64 rng(71);
    for (std::uint64_t p : {2, 3, 5}) {
      Field F = Field::make(p);
      int n = 0;
      while (n < 25) {
        auto a = gen::tame(F, rng, 5), b = gen::tame(F, rng, 5);
        if (a.f == b.f) continue;
        ++n;
        CHECK(intersection_multiplicity(a.f, b.f) == Rational(oracle::i0_oracle(a.f, b.par)));
        CHECK(intersection_multiplicity(a.f, b.f) == Rational(oracle::i0_oracle(b.f, a.par)));
      }
    }
  }

  TEST_CASE("property: semigroups from the parametrization match enumeration") {
    std::mt19937_64 rng(72);
    for (std::uint64_t p : {2, 3, 5}) {
      Field F = Field::make(p);
      for (int n = 0; n < 15; ++n) {
        auto a = gen::tame(F, rng, 6);
        SemigroupData s = semigroup_from_parametrization(a.par);
        CHECK(oracle::semigroup_oracle(a.par, s.conductor() + s.gens[0]) == oracle::minimal_generators(s.gens));
      }
    }
  }
}
