#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ewt/polar.hpp"

namespace ewt {

struct CorpusOptions {
  std::uint64_t seed = 1;
  int count = 200;
  std::vector<std::uint64_t> primes{2, 3, 5};
  int max_degree = 6;  // y-degree of the product
  int jobs = 1;
  bool identities = true;  // sum identity and ord-gap suites on E2-pass instances
};

// Irreducible Weierstrass polynomial from a one-edge polynomial, optionally
// shifted by y -> y + a x^s. Certified by branch_decompose.
BivarPoly random_branch(const Field& F, std::mt19937_64& rng, int max_degree);

struct CorpusInstance {
  int index = 0;
  Field field;
  BivarPoly f;
  int branches = 0;
  int rejected = 0;  // samples thrown away before this one
};

// Deterministic in (seed, index): a reduced product of 1 to 3 random branches
// whose polar factors are all certified.
CorpusInstance corpus_instance(const CorpusOptions& opt, int index);

struct InstanceResult {
  int index = 0;
  std::string field, poly;
  int rejected = 0;
  std::string error;  // tool failure, empty otherwise
  bool eggers = false, i_cond = false, e1 = false, e2 = false;
  std::string verdict;
  int identity_points = 0, identity_failures = 0;
  int arcs = 0, arc_failures = 0;
  std::vector<std::string> problems;  // violated implications
};

struct CorpusReport {
  CorpusOptions options;
  std::vector<InstanceResult> results;
  int e2_pass = 0, e2_fail = 0;
  int counterexamples = 0, errors = 0;
  std::vector<int> i_true_e2_fail;  // instance indices

  std::string to_json() const;
};

InstanceResult check_instance(const CorpusInstance& inst, const CorpusOptions& opt);
CorpusReport run_corpus(const CorpusOptions& opt);

// Random points strictly inside edges of the tree, never leaves.
std::vector<TreePoint> random_interior_points(const EggersWallTree& t, std::mt19937_64& rng, int count);
// Arcs alpha with ord_gap_check(A, alpha).admissible, up to `count` of them.
std::vector<TruncatedSeries> random_admissible_arcs(const PolarAnalysis& A, std::mt19937_64& rng, int count);

}  // namespace ewt
