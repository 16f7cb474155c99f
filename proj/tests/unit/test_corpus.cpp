#include "doctest.h"
#include "ewt/corpus.hpp"
#include "ewt/error.hpp"

using namespace ewt;

TEST_SUITE("corpus") {
  TEST_CASE("instances are deterministic in seed and index") {
    CorpusOptions opt;
    opt.seed = 5;
    for (int k = 0; k < 20; ++k) {
      CorpusInstance a = corpus_instance(opt, k), b = corpus_instance(opt, k);
      CHECK(a.f == b.f);
      CHECK(a.field == b.field);
    }
    CorpusOptions other = opt;
    other.seed = 6;
    int differ = 0;
    for (int k = 0; k < 20; ++k) differ += !(corpus_instance(opt, k).f == corpus_instance(other, k).f);
    CHECK(differ > 10);
  }

  TEST_CASE("instances respect the generator contract") {
    CorpusOptions opt;
    opt.seed = 9;
    for (int k = 0; k < 40; ++k) {
      CorpusInstance inst = corpus_instance(opt, k);
      CHECK(inst.field.p() == opt.primes[static_cast<std::size_t>(k) % opt.primes.size()]);
      CHECK(inst.f.deg_y() <= opt.max_degree);
      CHECK(inst.f.y_order_at_zero() >= 2);
      CHECK(inst.branches >= 1);
      CHECK(inst.branches <= 3);
      Decomposition D = branch_decompose(inst.f);
      CHECK(D.certified());
      CHECK(static_cast<int>(D.factors.size()) >= inst.branches);
      for (const auto& bf : D.factors) CHECK(bf.multiplicity == 1);
    }
  }

  TEST_CASE("thread count does not change the report") {
    CorpusOptions opt;
    opt.seed = 3;
    opt.count = 24;
    std::string one = run_corpus(opt).to_json();
    opt.jobs = 4;
    CHECK(run_corpus(opt).to_json() == one);
  }

  TEST_CASE("random_branch gives single certified branches") {
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {2, 3, 5})
      for (int k = 0; k < 15; ++k) {
        BivarPoly f = random_branch(Field::make(p), rng, 6);
        Decomposition D = branch_decompose(f);
        CHECK(D.factors.size() == 1);
        CHECK(D.certified());
      }
  }
}
