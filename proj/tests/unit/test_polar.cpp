#include "doctest.h"
#include "ewt/corpus.hpp"
#include "ewt/error.hpp"
#include "ewt/polar.hpp"
#include "generators.hpp"
#include "json.hpp"

using namespace ewt;

namespace {

BivarPoly P(const Field& F, const char* s) { return BivarPoly::parse(F, s); }

int node_id(const EggersWallTree& t, const std::string& label) {
  for (const auto& n : t.nodes())
    if (n.label == label) return n.id;
  FAIL("no node " << label);
  return -1;
}

const ConditionAt& at(const Conditions& C, int node) {
  for (const auto& c : C.points)
    if (c.node == node) return c;
  FAIL("no condition at node " << node);
  throw 0;
}

std::map<std::string, std::int64_t> predicted(const PolarAnalysis& A, const DecompositionReport& R) {
  std::map<std::string, std::int64_t> out;
  for (const auto& b : R.blocks) out[A.tree.node(b.node).label] = b.predicted_degree;
  return out;
}

std::map<std::string, Rational> observed(const PolarAnalysis& A, const DecompositionReport& R) {
  std::map<std::string, Rational> out;
  for (const auto& b : R.blocks) out[A.tree.node(b.node).label] = b.observed_degree;
  return out;
}

const char* kThree = "(y^2+x^3)*(y^3+x^4)*((y^3+x^4)^2+x^9)";

}  // namespace

TEST_SUITE("polar") {
  TEST_CASE("check_conditions") {
    PolarAnalysis a = analyze(P(Field::make(3), "y*(y^2+y^3+x^5)"), false);
    Conditions ca = check_conditions(a);
    const ConditionAt& p = at(ca, node_id(a.tree, "P1"));
    CHECK_FALSE(p.eggers);
    CHECK(p.i_cond);

    PolarAnalysis b = analyze(P(Field::make(2), "y*(y^2+x^3)"), false);
    Conditions cb = check_conditions(b);
    CHECK_FALSE(at(cb, b.tree.leaf(1)).eggers);
    CHECK_FALSE(cb.eggers);

    PolarAnalysis c = analyze(P(Field::make(5), kThree), false);
    Conditions cc = check_conditions(c);
    CHECK(cc.eggers);
    CHECK(at(cc, node_id(c.tree, "P1")).f_degree == 11);
    CHECK(at(cc, node_id(c.tree, "P2")).f_degree == 2);
    CHECK(at(cc, node_id(c.tree, "P3")).f_degree == 9);
  }

  TEST_CASE("predicted_decomposition") {
    PolarAnalysis a = analyze(P(Field::make(5), kThree), false);
    DecompositionReport ra = predicted_decomposition(a);
    auto pa = predicted(a, ra);
    CHECK(pa["P1"] == 3);
    CHECK(pa["P2"] == 1);
    CHECK(pa["P3"] == 6);
    CHECK(pa["f1"] == 0);
    CHECK(ra.expected_total == 10);
    CHECK(ra.verdict == "predicted");

    PolarAnalysis b = analyze(P(Field::make(7), "y*(y^2+x^3)"), false);
    auto pb = predicted(b, predicted_decomposition(b));
    CHECK(pb == std::map<std::string, std::int64_t>{{"P1", 2}, {"f1", 0}, {"f2", 0}});

    PolarAnalysis c = analyze(P(Field::make(5), "y^2+x^3"), false);
    DecompositionReport rc = predicted_decomposition(c);
    CHECK(rc.irreducible_closed_form == std::vector<std::int64_t>{1});
    REQUIRE(rc.blocks.size() >= 1);
    CHECK(rc.blocks[0].predicted_degree == 1);
    CHECK(rc.blocks[0].predicted_ratio == std::vector<Rational>{Rational(3)});
  }

  TEST_CASE("verify_decomposition: three branches") {
    PolarAnalysis A = analyze(P(Field::make(5), kThree));
    DecompositionReport R = verify_decomposition(A);
    CHECK(R.conditions.eggers);
    CHECK(R.e1);
    CHECK(R.e2);
    CHECK(R.matches_prediction);
    CHECK(R.verdict == "pass");
    auto o = observed(A, R);
    CHECK(o["P1"] == Rational(3));
    CHECK(o["P2"] == Rational(1));
    CHECK(o["P3"] == Rational(6));
    CHECK(R.gamma_total == Rational(10));
  }

  TEST_CASE("verify_decomposition: y(y^2+x^3) over GF(2)") {
    PolarAnalysis A = analyze(P(Field::make(2), "y*(y^2+x^3)"));
    DecompositionReport R = verify_decomposition(A);
    CHECK_FALSE(R.e2);
    CHECK_FALSE(R.e1);
    auto fails = R.e2_failures();
    REQUIRE(fails.size() == 1);
    CHECK(fails[0] == A.tree.at(A.tree.leaf(1)));
    REQUIRE(A.g_factors.size() == 1);
    CHECK(cmp::same(A.factors[static_cast<std::size_t>(A.g_factors[0])].branch.w, P(A.field, "y^2+x^3")));
    CHECK(R.verdict == "fail");
  }

  TEST_CASE("verify_decomposition: y(y^2+y^3+x^5) over GF(3)") {
    PolarAnalysis A = analyze(P(Field::make(3), "y*(y^2+y^3+x^5)"));
    DecompositionReport R = verify_decomposition(A);
    CHECK_FALSE(R.conditions.eggers);
    CHECK(R.conditions.i_cond);
    CHECK_FALSE(R.e2);
    int P1 = node_id(A.tree, "P1");
    int inside = 0;
    for (const auto& s : R.e2_samples) {
      if (s.q.node != P1) continue;
      PointValues v = A.tree.values(s.q);
      if (v.e <= Rational(5, 3)) continue;
      ++inside;
      CHECK(s.observed == Rational(0));
      CHECK(s.expected == 2);
      CHECK_FALSE(s.ok);
    }
    CHECK(inside >= 2);
  }

  TEST_CASE("sum_identity_check") {
    PolarAnalysis A = analyze(P(Field::make(5), kThree));
    auto at_P = sum_identity_check(A, A.tree.at(node_id(A.tree, "P1")));
    CHECK(at_P.lhs == Rational(4, 3));
    CHECK(at_P.ok);
    auto at_R = sum_identity_check(A, A.tree.at(0));
    CHECK(at_R.lhs == Rational(0));
    CHECK(at_R.ok);
    auto at_T = sum_identity_check(A, A.tree.at(node_id(A.tree, "P3")));
    CHECK(at_T.lhs == Rational(11, 6));
    CHECK(at_T.ok);
    CHECK_THROWS_AS(sum_identity_check(A, A.tree.at(A.tree.leaf(0))), Error);
  }

  TEST_CASE("ord_gap_check") {
    PolarAnalysis A = analyze(P(Field::make(5), kThree));
    auto g = ord_gap_check(A, TruncatedSeries::parse(A.field, "x^2"));
    CHECK(g.gap == Rational(1));
    CHECK_FALSE(g.admissible);  // the polar branch y meets the arc deeper than f does
    auto h = ord_gap_check(A, TruncatedSeries::parse(A.field, "x^(4/3)"));
    CHECK(h.admissible);
    CHECK(h.ok);
    CHECK(h.gap == h.e);
    CHECK_THROWS_AS(ord_gap_check(A, TruncatedSeries::parse(A.field, "1 + x")), Error);
  }

  TEST_CASE("edge_endpoint_check") {
    Field F5 = Field::make(5);
    auto a = edge_endpoint_check(P(F5, "y^2+x^3"), TruncatedSeries::parse(F5, "x^2"));
    CHECK(a.ok);
    CHECK(a.inclination == Rational(3, 2));
    CHECK(a.edge.from == NPoint{Rational(0), 2});
    CHECK(a.bottom == Rational(3));
    auto b = edge_endpoint_check(P(F5, "y^2+x^3"), TruncatedSeries::parse(F5, "2*x^(3/2) + x^2"));
    CHECK(b.ok);
    CHECK(b.inclination == Rational(2));
    CHECK(b.height == 1);
    auto c = edge_endpoint_check(P(F5, "y-x^2"), TruncatedSeries::parse(F5, "x^3"));
    CHECK(c.ok);
    CHECK(c.inclination == Rational(2));
    CHECK(c.bottom == Rational(2));
    CHECK_THROWS_AS(edge_endpoint_check(P(F5, "y^2+x^3"), TruncatedSeries::parse(F5, "x^(1/5)")), Error);
  }

  TEST_CASE("constructed_edge_check") {
    PolarAnalysis A = analyze(P(Field::make(5), kThree));
    auto e1 = constructed_edge_check(A, node_id(A.tree, "P1"), Rational(7, 6));
    CHECK(e1.ok);
    CHECK(e1.principal_ok);
    auto e2 = constructed_edge_check(A, node_id(A.tree, "P2"), Rational(17, 12));
    CHECK(e2.ok);
    CHECK(e2.principal_ok);
    CHECK_THROWS_AS(constructed_arc(A, node_id(A.tree, "P1"), Rational(3, 2)), Error);
  }

  TEST_CASE("deeper_contact_search") {
    Field F5 = Field::make(5), F3 = Field::make(3);
    auto a = deeper_contact_search(P(F5, "y^2+x^3"), TruncatedSeries::parse(F5, "x^2"));
    CHECK(a.exponent == Rational(3, 2));
    CHECK((a.c.value == 2 || a.c.value == 3));
    CHECK(a.before < a.after);
    auto b = deeper_contact_search(P(F3, "y^2+x^3"), TruncatedSeries::parse(F3, "x^2"));
    CHECK(b.c.field.order() == 9);
    CHECK(b.before < b.after);
    auto c = deeper_contact_search(P(F5, "y-x^2"), TruncatedSeries::parse(F5, "x"));
    CHECK(c.exponent == Rational(1));
    CHECK(c.c.value == F5.neg(1));
    CHECK(c.after == Rational(2));
  }

  TEST_CASE("report_json carries the documented fields") {
    PolarAnalysis A = analyze(P(Field::make(5), kThree));
    auto j = nlohmann::json::parse(report_json(A, verify_decomposition(A)));
    for (const char* k : {"conditions", "predicted", "observed", "e1", "e2", "verdict"}) CHECK(j.contains(k));
    CHECK(j["verdict"] == "pass");
  }

  TEST_CASE("analyze rejects unsuitable input") {
    Field F5 = Field::make(5);
    CHECK_THROWS_AS(analyze(P(F5, "x*(y^2+x^3)")), Error);
    CHECK_THROWS_AS(analyze(P(F5, "0")), Error);
  }

  TEST_CASE("property: condition propagation along the tree") {
    CorpusOptions opt;
    opt.seed = 11;
    for (int k = 0; k < 80; ++k) {
      PolarAnalysis A = analyze(corpus_instance(opt, k).f, false);
      Conditions C = check_conditions(A);
      std::map<int, const ConditionAt*> by_node;
      for (const auto& c : C.points) by_node[c.node] = &c;
      for (const auto& c : C.points) {
        if (c.i_cond)
          for (int m : A.tree.path_nodes(A.tree.at(c.node)))
            if (m != 0) CHECK(by_node[m]->i_cond);
        if (c.eggers) CHECK(c.i_cond);
      }
      if (C.eggers) CHECK(C.i_cond);
    }
  }

  TEST_CASE("property: E1 and E2 agree, and Eggers implies the leaf blocks vanish") {
    CorpusOptions opt;
    opt.seed = 12;
    for (int k = 0; k < 80; ++k) {
      PolarAnalysis A = analyze(corpus_instance(opt, k).f);
      DecompositionReport R = verify_decomposition(A);
      CHECK(R.e1 == R.e2);
      CHECK(R.conditions.eggers == R.e2);
      if (!R.conditions.eggers) continue;
      std::int64_t sum = 0;
      for (const auto& b : R.blocks) {
        sum += b.predicted_degree;
        if (A.tree.node(b.node).kind == NodeKind::Leaf) CHECK(b.observed_degree == Rational(0));
      }
      CHECK(sum == R.expected_total);
      for (const auto& s : R.e2_samples) CHECK(s.ok);
    }
  }

  TEST_CASE("property: Q -> i0(Gamma_Q, x) is a weakly decreasing step function") {
    CorpusOptions opt;
    opt.seed = 13;
    for (int k = 0; k < 40; ++k) {
      PolarAnalysis A = analyze(corpus_instance(opt, k).f);
      if (A.gamma_zero) continue;
      for (const auto& n : A.tree.nodes()) {
        if (n.parent < 0) continue;
        Rational lo = A.tree.node(n.parent).c;
        Rational hi = n.c.is_inf() ? lo + Rational(4) : n.c;
        Rational prev = Rational::infinity();
        for (int s = 1; s <= 12; ++s) {
          Rational v = A.gamma_degree_above(TreePoint{n.id, lo + (hi - lo) * Rational(s, 12)});
          CHECK(v <= prev);
          prev = v;
        }
      }
    }
  }
}
