#include "ewt/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"

namespace ewt {

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Elem nonzero(const Field& F, std::mt19937_64& rng) { return F.from_int(static_cast<std::int64_t>(1 + below(rng, F.p() - 1))); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BivarPoly shift_by_monomial(const BivarPoly& f, Elem a, std::int64_t s) {
  BivarPoly y = BivarPoly::var_y(f.F) + BivarPoly::monomial(f.F, a, s, 0);
  BivarPoly out = BivarPoly::zero(f.F);
  for (int j = f.deg_y(); j >= 0; --j) out = out * y + BivarPoly(f.F, {f.coeff(j)});
  return out;
}

bool single_certified_branch(const BivarPoly& f) {
  try {
    Decomposition D = branch_decompose(f);
    return D.x_power == 0 && D.factors.size() == 1 && D.factors[0].multiplicity == 1 && D.certified();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

BivarPoly random_branch(const Field& F, std::mt19937_64& rng, int max_degree) {
  for (;;) {
    auto n = static_cast<std::int64_t>(1 + below(rng, static_cast<std::uint64_t>(max_degree)));
    auto m = static_cast<std::int64_t>(1 + below(rng, static_cast<std::uint64_t>(2 * n + 2)));
    std::int64_t g = std::gcd(n, m);
    BivarPoly head = BivarPoly::monomial(F, 1, 0, static_cast<int>(n / g)) + BivarPoly::monomial(F, nonzero(F, rng), m / g, 0);
    BivarPoly f = pow(head, static_cast<unsigned>(g));
    auto extra = below(rng, 4);
    for (std::uint64_t k = 0; k < extra && n > 1; ++k) {
      auto j = static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(n)));
      std::int64_t i = m * (n - j) / n + 1 + static_cast<std::int64_t>(below(rng, 2));
      f = f + BivarPoly::monomial(F, nonzero(F, rng), i, static_cast<int>(j));
    }
    if (!single_certified_branch(f)) continue;
    if (below(rng, 2) == 0) f = shift_by_monomial(f, nonzero(F, rng), static_cast<std::int64_t>(1 + below(rng, 3)));
    return f;
  }
}

CorpusInstance corpus_instance(const CorpusOptions& opt, int index) {
  std::mt19937_64 rng(mix(opt.seed, static_cast<std::uint64_t>(index)));
  CorpusInstance inst;
  inst.index = index;
  inst.field = Field::make(opt.primes[static_cast<std::size_t>(index) % opt.primes.size()]);
  for (;; ++inst.rejected) {
    int want = static_cast<int>(1 + below(rng, 3));
    int budget = opt.max_degree;
    std::vector<BivarPoly> parts;
    for (int b = 0; b < want && budget > 0; ++b) {
      BivarPoly w = random_branch(inst.field, rng, budget);
      budget -= w.deg_y();
      parts.push_back(std::move(w));
    }
    bool distinct = true;
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b) distinct = distinct && !(parts[a] == parts[b]);
    if (!distinct) continue;
    BivarPoly f = BivarPoly::constant(inst.field, 1);
    for (const auto& w : parts) f = f * w;
    if (f.y_order_at_zero() < 2) continue;
    try {
      PolarAnalysis A = analyze(f);
      if (A.totals_only) continue;
    } catch (const Error&) {
      continue;
    }
    inst.f = f;
    inst.branches = static_cast<int>(parts.size());
    return inst;
  }
}

std::vector<TreePoint> random_interior_points(const EggersWallTree& t, std::mt19937_64& rng, int count) {
  std::vector<int> edges;
  for (const auto& n : t.nodes())
    if (n.parent >= 0) edges.push_back(n.id);
  std::vector<TreePoint> out;
  for (int k = 0; k < count && !edges.empty(); ++k) {
    const TreeNode& n = t.node(edges[below(rng, edges.size())]);
    Rational lo = t.node(n.parent).c;
    Rational len = n.c.is_inf() ? Rational(2) : n.c - lo;
    auto d = static_cast<std::int64_t>(2 + below(rng, 6));
    auto m = static_cast<std::int64_t>(1 + below(rng, static_cast<std::uint64_t>(d - 1)));
    out.push_back({n.id, lo + len * Rational(m, d)});
  }
  return out;
}

std::vector<TruncatedSeries> random_admissible_arcs(const PolarAnalysis& A, std::mt19937_64& rng, int count) {
  const auto& t = A.tree;
  auto p = static_cast<std::int64_t>(A.field.p());
  std::vector<int> tame;
  for (const auto& n : t.nodes())
    if (n.parent >= 0 && n.i % p != 0) tame.push_back(n.id);
  std::vector<TruncatedSeries> out;
  for (int tries = 0; tries < 40 * count && static_cast<int>(out.size()) < count; ++tries) {
    TruncatedSeries alpha;
    try {
      if (below(rng, 3) != 0 && !tame.empty()) {
        const TreeNode& n = t.node(tame[below(rng, tame.size())]);
        Rational lo = t.node(n.parent).e;
        Rational hi = n.e.is_inf() ? lo + Rational(3) : n.e;
        std::vector<Rational> cand;
        for (std::int64_t d = 1; d <= 12; ++d) {
          if (std::gcd(d, p * n.i) != 1) continue;
          for (std::int64_t m = (lo * Rational(d)).floor() + 1; Rational(m, d) < hi; ++m)
            if (lo < Rational(m, d)) cand.push_back(Rational(m, d));
        }
        if (cand.empty()) continue;
        alpha = constructed_arc(A, n.id, cand[below(rng, cand.size())]);
      } else {
        auto d = static_cast<std::int64_t>(1 + below(rng, 6));
        auto m = static_cast<std::int64_t>(1 + below(rng, static_cast<std::uint64_t>(4 * d)));
        alpha = TruncatedSeries::monomial(A.field, nonzero(A.field, rng), Rational(m, d));
      }
      if (ord_gap_check(A, alpha).admissible) out.push_back(alpha);
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

InstanceResult check_instance(const CorpusInstance& inst, const CorpusOptions& opt) {
  InstanceResult r;
  r.index = inst.index;
  r.field = inst.field.spec();
  r.poly = inst.f.str();
  r.rejected = inst.rejected;
  try {
    PolarAnalysis A = analyze(inst.f);
    DecompositionReport R = verify_decomposition(A);
    r.eggers = R.conditions.eggers;
    r.i_cond = R.conditions.i_cond;
    r.e1 = R.e1;
    r.e2 = R.e2;
    r.verdict = R.verdict;
    if (r.e1 != r.e2) r.problems.push_back("E1 and E2 disagree");
    if (r.eggers != r.e2) r.problems.push_back("Eggers condition and E2 disagree");
    if (r.e2 && !r.i_cond) r.problems.push_back("E2 holds but the i-condition fails");
    if (r.eggers) {
      std::int64_t s = 0;
      for (const auto& B : R.blocks) s += B.predicted_degree;
      if (s != R.expected_total) r.problems.push_back("predicted x-degrees do not sum to i0(f,x)-1");
    }
    if (r.e2 && opt.identities) {
      std::mt19937_64 rng(mix(opt.seed ^ 0x5DEECE66DULL, static_cast<std::uint64_t>(inst.index)));
      std::vector<TreePoint> pts;
      for (const auto& n : A.tree.nodes())
        if (n.kind != NodeKind::Leaf) pts.push_back(A.tree.at(n.id));
      for (const auto& q : random_interior_points(A.tree, rng, 3)) pts.push_back(q);
      for (const auto& q : pts) {
        ++r.identity_points;
        if (!sum_identity_check(A, q).ok) ++r.identity_failures;
      }
      for (const auto& alpha : random_admissible_arcs(A, rng, 3)) {
        ++r.arcs;
        if (!ord_gap_check(A, alpha).ok) ++r.arc_failures;
      }
      if (r.identity_failures) r.problems.push_back("sum identity fails");
      if (r.arc_failures) r.problems.push_back("ord gap differs from the exponent");
      if (r.arcs < 3) r.problems.push_back("fewer than 3 admissible arcs found");
    }
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

CorpusReport run_corpus(const CorpusOptions& opt) {
  CorpusReport rep;
  rep.options = opt;
  rep.results.resize(static_cast<std::size_t>(std::max(opt.count, 0)));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k; (k = next++) < opt.count;)
      rep.results[static_cast<std::size_t>(k)] = check_instance(corpus_instance(opt, k), opt);
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& r : rep.results) {
    if (!r.error.empty()) {
      ++rep.errors;
      continue;
    }
    (r.e2 ? rep.e2_pass : rep.e2_fail)++;
    if (!r.problems.empty()) ++rep.counterexamples;
    if (r.i_cond && !r.e2) rep.i_true_e2_fail.push_back(r.index);
  }
  return rep;
}

std::string CorpusReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = options.seed;
  j["count"] = options.count;
  j["primes"] = options.primes;
  j["max_degree"] = options.max_degree;
  j["e2_pass"] = e2_pass;
  j["e2_fail"] = e2_fail;
  j["counterexamples"] = counterexamples;
  j["errors"] = errors;
  j["i_true_e2_fail"] = i_true_e2_fail;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json o;
    o["index"] = r.index;
    o["field"] = r.field;
    o["f"] = r.poly;
    if (!r.error.empty()) {
      o["error"] = r.error;
      arr.push_back(o);
      continue;
    }
    o["eggers"] = r.eggers;
    o["i_condition"] = r.i_cond;
    o["e1"] = r.e1;
    o["e2"] = r.e2;
    o["verdict"] = r.verdict;
    if (options.identities && r.e2) {
      o["identity_points"] = r.identity_points;
      o["arcs"] = r.arcs;
    }
    o["problems"] = r.problems;
    arr.push_back(o);
  }
  j["instances"] = arr;
  return j.dump(2);
}

}  // namespace ewt
