#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ewt/bivar.hpp"
#include "ewt/branch.hpp"

// Slow brute-force checks for the test suites. Everything below does its own
// field and series arithmetic; only the ewt data types are shared.
namespace ewt::oracle {

// ord_t g(x(t), y(t)); VanishesOnBranch when the pullback is zero
std::int64_t i0_oracle(const BivarPoly& g, const Parametrization& par);

// Minimal generators of the value semigroup of the branch, read off from the
// orders of all combinations of x(t)^i y(t)^j up to t-order `bound`.
// BoundTooSmall when the values below the bound do not pin the semigroup down.
std::vector<std::int64_t> semigroup_oracle(const Parametrization& par, std::int64_t bound);

// Monic minimal polynomial in y of y(t) over x = t^n, by linear algebra.
// par.x must be the monomial t^n and par.y a polynomial.
BivarPoly implicitize(const Parametrization& par);

// (t^n, sum a_k t^k) with p not dividing n, primitive, a_n = 0
Parametrization random_tame_param(const Field& F, std::mt19937_64& rng, int max_n, int max_terms = 3);

// minimal generating set, ascending
std::vector<std::int64_t> minimal_generators(std::vector<std::int64_t> gens);

// smallest integer in the semigroup generated by gens from which on all are in it
std::int64_t conductor_of(const std::vector<std::int64_t>& gens);

}  // namespace ewt::oracle
