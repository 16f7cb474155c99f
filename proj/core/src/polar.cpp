#include "ewt/polar.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace ewt {

namespace {

bool is_constant(const BivarPoly& f) { return f.deg_y() <= 0 && f.x_degree() <= 0; }

struct Piece {
  BivarPoly poly;
  int mf = 0, mg = 0;
};

// coprime pieces carrying their multiplicities in f and in g
std::vector<Piece> gcd_free_pieces(const BivarPoly& f, const BivarPoly* g) {
  std::vector<Piece> L;
  for (auto& [Q, e] : squarefree_layers(f)) L.push_back({Q, e, 0});
  if (g)
    for (auto& [Q, e] : squarefree_layers(*g)) L.push_back({Q, 0, e});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < L.size() && !changed; ++a)
      for (std::size_t b = a + 1; b < L.size() && !changed; ++b) {
        BivarPoly h = gcd_xy(L[a].poly, L[b].poly);
        if (is_constant(h)) continue;
        Piece pa{divide_exact(L[a].poly, h), L[a].mf, L[a].mg};
        Piece pb{divide_exact(L[b].poly, h), L[b].mf, L[b].mg};
        Piece ph{h, L[a].mf + L[b].mf, L[a].mg + L[b].mg};
        std::vector<Piece> next;
        for (std::size_t k = 0; k < L.size(); ++k)
          if (k != a && k != b) next.push_back(L[k]);
        for (auto* q : {&pa, &pb, &ph})
          if (!is_constant(q->poly)) next.push_back(*q);
        L = std::move(next);
        changed = true;
      }
  }
  return L;
}

std::string point_name(const EggersWallTree& t, const TreePoint& q) {
  const TreeNode& n = t.node(q.node);
  if (q.c == n.c) return n.label;
  return "(" + t.node(n.parent).label + "," + n.label + ")@c=" + q.c.str();
}

// m/k strictly between lo and hi (hi may be infinite) with gcd(k, avoid) = gcd(m, k) = 1
Rational dense_value(const Rational& lo, const Rational& hi, std::int64_t avoid) {
  for (std::int64_t k = 2; k < 2000; ++k) {
    if (std::gcd(k, avoid) != 1) continue;
    std::int64_t m = (lo * Rational(k)).floor() + 1;
    for (;; ++m) {
      Rational v(m, k);
      if (!(v < hi)) break;
      if (std::gcd(m, k) == 1) return v;
    }
  }
  return (lo + (hi.is_inf() ? lo + Rational(2) : hi)) / Rational(2);
}

nlohmann::ordered_json point_json(const EggersWallTree& t, const TreePoint& q) {
  PointValues v = t.values(q);
  nlohmann::ordered_json o;
  o["point"] = point_name(t, q);
  o["c"] = v.c.str();
  o["i"] = v.i;
  o["e"] = v.e.str();
  return o;
}

nlohmann::ordered_json rationals_json(const std::vector<Rational>& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

}  // namespace

int PolarAnalysis::tree_branch(int factor) const {
  auto it = std::find(f_factors.begin(), f_factors.end(), factor);
  return it == f_factors.end() ? -1 : static_cast<int>(it - f_factors.begin());
}

std::int64_t PolarAnalysis::f_degree_above(const TreePoint& Q) const {
  std::int64_t s = 0;
  for (std::size_t b = 0; b < f_factors.size(); ++b) {
    const LocalFactor& lf = factors[f_factors[b]];
    if (tree.leq(Q, tree.at(tree.leaf(static_cast<int>(b))))) s += static_cast<std::int64_t>(lf.mult_f) * lf.branch.degree();
  }
  return s;
}

Rational PolarAnalysis::gamma_degree_above(const TreePoint& Q) const {
  Rational s(0);
  for (int k : g_factors) {
    const LocalFactor& lf = factors[k];
    if (!lf.certified()) fail(ErrorKind::UncertainFactorization, "factor " + lf.label + " of the polar is not certified");
    if (tree.leq(Q, attach[k])) s += Rational(lf.mult_g) * lf.x_degree();
  }
  return s;
}

PolarAnalysis analyze(const BivarPoly& f, bool with_gamma, std::int64_t N0) {
  if (f.is_zero()) fail(ErrorKind::NotRegularInY, "zero polynomial");
  if (f.ram != 1 || !f.is_exact()) fail(ErrorKind::InvalidArgument, "analysis needs an exact polynomial in x and y");
  if (with_gamma && f.x_valuation() > 0) fail(ErrorKind::NotRegularInY, "f is divisible by x");
  return with_restarts(f.F, N0, [&](const Field& E, std::int64_t N) {
    PolarAnalysis A;
    A.field = E;
    A.precision = N;
    A.f = E == f.F ? f : embed(f, E);
    BivarPoly f1 = divide_x_power(A.f, A.f.x_valuation());
    std::int64_t gx = 0;
    BivarPoly g1;
    if (with_gamma) {
      A.gamma = derivative_y(A.f);
      A.gamma_zero = A.gamma.is_zero();
      if (!A.gamma_zero) {
        gx = A.gamma.x_valuation();
        g1 = divide_x_power(A.gamma, gx);
      }
    }
    bool use_g = with_gamma && !A.gamma_zero;
    for (const auto& pc : gcd_free_pieces(f1, use_g ? &g1 : nullptr)) {
      if (pc.poly.y_order_at_zero() <= 0) continue;
      BivarPoly W = weierstrass_prepare(pc.poly, N).w;
      for (auto& b : factor_weierstrass(W, pc.mf > 0)) {
        LocalFactor lf;
        lf.mult_f = pc.mf;
        lf.mult_g = pc.mg;
        if (pc.mf > 0) {
          if (b.cert != Certificate::Certified) fail(ErrorKind::UncertainFactorization, "a branch of f is not certified");
          b.semigroup = semigroup_of_branch(b);
        }
        lf.branch = std::move(b);
        A.factors.push_back(std::move(lf));
      }
    }
    // f branches first, ordered by degree then text for stable output
    std::stable_sort(A.factors.begin(), A.factors.end(), [](const LocalFactor& a, const LocalFactor& b) {
      if ((a.mult_f > 0) != (b.mult_f > 0)) return a.mult_f > 0;
      if (a.branch.degree() != b.branch.degree()) return a.branch.degree() < b.branch.degree();
      return a.branch.w.str() < b.branch.w.str();
    });
    if (gx > 0) {
      LocalFactor x;
      x.is_x = true;
      x.mult_g = static_cast<int>(gx);
      x.label = "x";
      x.branch.w = BivarPoly::var_x(E);
      A.factors.push_back(std::move(x));
    }
    int nf = 0, ng = 0;
    for (std::size_t k = 0; k < A.factors.size(); ++k) {
      auto& lf = A.factors[k];
      if (lf.mult_f > 0) {
        A.f_factors.push_back(static_cast<int>(k));
        lf.label = "f" + std::to_string(++nf);
      }
      if (lf.mult_g > 0) {
        A.g_factors.push_back(static_cast<int>(k));
        if (lf.mult_f == 0 && !lf.is_x) lf.label = "G" + std::to_string(++ng);
      }
    }
    const std::size_t m = A.factors.size();
    A.i0.assign(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        const auto& fa = A.factors[a];
        const auto& fb = A.factors[b];
        Rational v;
        if (a == b)
          v = Rational::infinity();
        else if (fa.mult_f == 0 && fb.mult_f == 0)
          continue;
        else if (fa.is_x)
          v = Rational(fb.branch.degree());
        else if (fb.is_x)
          v = Rational(fa.branch.degree());
        else
          v = branch_intersection(fa.branch, fb.branch);
        A.i0[a][b] = A.i0[b][a] = v;
      }
    std::vector<TreeBranchInput> in;
    std::vector<std::vector<Rational>> ti(A.f_factors.size(), std::vector<Rational>(A.f_factors.size()));
    for (std::size_t a = 0; a < A.f_factors.size(); ++a) {
      const auto& lf = A.factors[A.f_factors[a]];
      in.push_back({*lf.branch.semigroup, lf.mult_f, lf.label});
      for (std::size_t b = 0; b < A.f_factors.size(); ++b) ti[a][b] = A.i0[A.f_factors[a]][A.f_factors[b]];
    }
    A.tree = EggersWallTree::build(in, ti);
    A.attach.assign(m, A.tree.at(0));
    for (std::size_t k = 0; k < m; ++k) {
      const auto& lf = A.factors[k];
      if (lf.mult_f > 0) {
        A.attach[k] = A.tree.at(A.tree.leaf(A.tree_branch(static_cast<int>(k))));
        continue;
      }
      if (lf.is_x) continue;
      if (!lf.certified()) {
        A.totals_only = true;
        continue;
      }
      std::vector<Rational> d;
      for (int fk : A.f_factors)
        d.push_back(A.i0[k][fk] / Rational(checked_mul(lf.branch.degree(), A.factors[fk].branch.degree())));
      A.attach[k] = A.tree.attach_point(d);
    }
    return A;
  });
}

EggersWallTree tree_of(const BivarPoly& f) { return analyze(f, false).tree; }

// ---------------------------------------------------------------- conditions and decomposition

Conditions check_conditions(const PolarAnalysis& A) {
  Conditions C;
  std::int64_t p = static_cast<std::int64_t>(A.field.p());
  for (const auto& n : A.tree.nodes()) {
    if (n.parent < 0) continue;
    ConditionAt c;
    c.node = n.id;
    c.f_degree = A.f_degree_above(A.tree.at(n.id));
    c.index = n.i;
    c.eggers = c.f_degree % p != 0;
    c.i_cond = c.index % p != 0;
    C.eggers = C.eggers && c.eggers;
    C.i_cond = C.i_cond && c.i_cond;
    C.points.push_back(c);
  }
  return C;
}

std::vector<TreePoint> DecompositionReport::e2_failures() const {
  std::vector<TreePoint> out;
  for (const auto& s : e2_samples)
    if (!s.ok && s.marked()) out.push_back(s.q);
  return out;
}

DecompositionReport predicted_decomposition(const PolarAnalysis& A) {
  DecompositionReport R;
  R.conditions = check_conditions(A);
  R.verdict = "predicted";
  const auto& t = A.tree;
  for (const auto& n : t.nodes()) {
    if (n.parent < 0) continue;
    Block B;
    B.node = n.id;
    if (n.kind == NodeKind::Leaf) {
      B.predicted_degree = A.f_degree_above(t.at(n.id)) - n.i;
    } else {
      B.predicted_degree = -n.i;
      for (int ch : n.children) B.predicted_degree += t.node(ch).i;
    }
    for (std::size_t b = 0; b < A.f_factors.size(); ++b) {
      TreePoint m = t.meet(t.at(t.leaf(static_cast<int>(b))), t.at(n.id));
      B.predicted_ratio.push_back(Rational(A.factors[A.f_factors[b]].branch.degree()) * m.c);
    }
    R.blocks.push_back(B);
  }
  std::int64_t total = 0;
  for (int k : A.f_factors) total += static_cast<std::int64_t>(A.factors[k].mult_f) * A.factors[k].branch.degree();
  R.expected_total = total - 1;
  if (A.f_factors.size() == 1 && A.factors[A.f_factors[0]].mult_f == 1) {
    const SemigroupData& S = *A.factors[A.f_factors[0]].branch.semigroup;
    std::int64_t prod = 1;
    for (int i = 1; i <= S.h(); ++i) {
      R.irreducible_closed_form.push_back(prod * (S.n(i) - 1));
      prod *= S.n(i);
    }
  }
  return R;
}

DecompositionReport verify_decomposition(const PolarAnalysis& A) {
  DecompositionReport R = predicted_decomposition(A);
  R.predicted_only = false;
  R.totals_only = A.totals_only;
  R.gamma_zero = A.gamma_zero;
  const auto& t = A.tree;
  if (A.gamma_zero) {
    R.gamma_total = Rational::infinity();
    R.e1 = R.e2 = false;
    R.verdict = "fail";
    return R;
  }
  R.gamma_total = Rational(0);
  R.gamma_f_totals.assign(A.f_factors.size(), Rational(0));
  for (int k : A.g_factors) {
    const auto& lf = A.factors[k];
    R.gamma_total += Rational(lf.mult_g) * lf.x_degree();
    for (std::size_t b = 0; b < A.f_factors.size(); ++b) R.gamma_f_totals[b] += Rational(lf.mult_g) * A.i0[k][A.f_factors[b]];
  }
  if (A.totals_only) {
    E2Sample s;
    s.q = t.at(0);
    s.v = t.values(s.q);
    s.why = "root";
    s.observed = R.gamma_total;
    s.expected = A.f_degree_above(s.q) - 1;
    s.ok = s.observed == Rational(s.expected);
    R.e2_samples.push_back(s);
    R.verdict = "uncertain";
    return R;
  }

  // (E1)
  bool placed = true;
  for (int k : A.g_factors) {
    const TreePoint& q = A.attach[k];
    if (A.factors[k].is_x || q.node == 0 || !t.is_node(q)) placed = false;
  }
  bool degrees = true;
  R.matches_prediction = true;
  for (auto& B : R.blocks) {
    B.observed_degree = Rational(0);
    std::vector<Rational> cross(A.f_factors.size(), Rational(0));
    for (int k : A.g_factors) {
      if (A.factors[k].is_x || !(A.attach[k] == t.at(B.node))) continue;
      const auto& lf = A.factors[k];
      B.observed_factors.push_back(k);
      B.observed_degree += Rational(lf.mult_g) * lf.x_degree();
      for (std::size_t b = 0; b < A.f_factors.size(); ++b) cross[b] += Rational(lf.mult_g) * A.i0[k][A.f_factors[b]];
    }
    if (B.observed_degree != Rational(0))
      for (const auto& c : cross) B.observed_ratio.push_back(c / B.observed_degree);
    B.matches = B.observed_degree == Rational(B.predicted_degree) && (B.observed_ratio.empty() || B.observed_ratio == B.predicted_ratio);
    degrees = degrees && B.observed_degree == Rational(B.predicted_degree);
    R.matches_prediction = R.matches_prediction && B.matches;
  }
  R.matches_prediction = R.matches_prediction && placed;
  R.e1 = placed && degrees;

  // (E2): every node, every attach point and samples inside each constant piece
  auto add = [&](const TreePoint& q, const char* why) {
    E2Sample s;
    s.q = q;
    s.v = t.values(q);
    s.why = why;
    s.observed = A.gamma_degree_above(q);
    s.expected = A.f_degree_above(q) - s.v.i;
    s.ok = s.observed == Rational(s.expected);
    R.e2_samples.push_back(s);
  };
  add(t.at(0), "root");
  std::int64_t p = static_cast<std::int64_t>(A.field.p());
  for (const auto& n : t.nodes()) {
    if (n.parent < 0) continue;
    const TreeNode& par = t.node(n.parent);
    std::vector<Rational> cuts;
    for (int k : A.g_factors)
      if (A.attach[k].node == n.id && A.attach[k].c < n.c) cuts.push_back(A.attach[k].c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(n.c);
    Rational lo = par.c;
    for (const auto& hi : cuts) {
      Rational mid = hi.is_inf() ? lo + Rational(1) : (lo + hi) / Rational(2);
      add({n.id, mid}, "mid");
      Rational elo = t.values(t.at(par.id)).e + Rational(n.i) * (lo - par.c);
      Rational ehi = hi.is_inf() ? Rational::infinity() : t.values({n.id, hi}).e;
      Rational iota = dense_value(elo, ehi, p * n.i);
      add({n.id, par.c + (iota - t.values(t.at(par.id)).e) / Rational(n.i)}, "dense");
      add({n.id, hi}, hi == n.c ? "node" : "attach");
      lo = hi;
    }
  }
  bool marked_ok = true;
  R.interval_ok = true;
  for (const auto& s : R.e2_samples) (s.marked() ? marked_ok : R.interval_ok) &= s.ok;
  R.e2 = marked_ok && R.interval_ok;
  R.verdict = R.e2 ? "pass" : "fail";
  return R;
}

// ---------------------------------------------------------------- identities

IdentityCheck sum_identity_check(const PolarAnalysis& A, const TreePoint& Q) {
  const auto& t = A.tree;
  t.validate(Q);
  if (t.node(Q.node).kind == NodeKind::Leaf && t.is_node(Q)) fail(ErrorKind::InvalidArgument, "the identity excludes leaves");
  if (A.totals_only) fail(ErrorKind::UncertainFactorization, "polar factors are not all certified");
  IdentityCheck ic;
  ic.lhs = Rational(0);
  for (std::size_t b = 0; b < A.f_factors.size(); ++b) {
    const auto& lf = A.factors[A.f_factors[b]];
    Rational d = t.meet(t.at(t.leaf(static_cast<int>(b))), Q).c;
    ic.lhs += d * Rational(static_cast<std::int64_t>(lf.mult_f) * lf.branch.degree());
  }
  for (int k : A.g_factors) {
    const auto& lf = A.factors[k];
    if (lf.is_x) continue;  // d(x, Q) = 0
    Rational d = t.meet(A.attach[k], Q).c;
    ic.lhs -= d * Rational(static_cast<std::int64_t>(lf.mult_g) * lf.branch.degree());
  }
  ic.rhs = t.values(Q).e;
  ic.ok = ic.lhs == ic.rhs;
  return ic;
}

OrdGap ord_gap_check(const PolarAnalysis& A, const TruncatedSeries& alpha) {
  if (alpha.field() != A.field) fail(ErrorKind::InvalidArgument, "arc over a different field");
  if (!alpha.is_exact()) fail(ErrorKind::InvalidArgument, "arc must be exact");
  if (!(alpha.order() > Rational(0))) fail(ErrorKind::InvalidArgument, "arc must have positive order");
  if (A.totals_only) fail(ErrorKind::UncertainFactorization, "polar factors are not all certified");
  const auto& t = A.tree;
  OrdGap g;
  g.ord_f = substitute_y(A.f, alpha, Rational::infinity()).order();
  if (g.ord_f.is_inf()) fail(ErrorKind::InvalidArgument, "f vanishes on the arc");
  g.ord_gamma = substitute_y(A.gamma, alpha, Rational::infinity()).order();
  std::vector<Rational> d;
  for (int k : A.f_factors) {
    const Branch& b = A.factors[k].branch;
    Rational o = substitute_y(b.w, alpha, Rational(b.w.prec)).order();
    d.push_back(o / Rational(b.degree()));
  }
  g.q = t.attach_point(d);
  g.admissible = true;
  for (int k : A.g_factors) {
    const auto& lf = A.factors[k];
    if (lf.is_x || lf.mult_f > 0) continue;
    Rational o = substitute_y(lf.branch.w, alpha, Rational(lf.branch.w.prec)).order();
    if (o / Rational(lf.branch.degree()) != t.meet(A.attach[k], g.q).c) g.admissible = false;
  }
  g.gap = g.ord_f - g.ord_gamma;
  g.e = t.values(g.q).e;
  g.ok = g.admissible && g.gap == g.e;
  return g;
}

// ---------------------------------------------------------------- edge checks

Edge max_inclination_edge(const BivarPoly& f) {
  auto es = newton_polygon(f).edges();
  if (es.empty()) fail(ErrorKind::InvalidArgument, "Newton polygon without compact edges");
  return es.back();
}

namespace {

// x = t^n, y = alpha(t^n) as an exact parametrization
Parametrization arc_param(const TruncatedSeries& alpha) {
  std::int64_t n = index_of(alpha);
  std::int64_t r = alpha.ramification();
  Parametrization P;
  P.F = alpha.field();
  P.x = ser::Vec(static_cast<std::size_t>(n) + 1, 0);
  P.x[n] = 1;
  const auto& c = alpha.coeffs();
  std::int64_t step = r / n;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    std::size_t k = i / static_cast<std::size_t>(step);
    if (P.y.size() <= k) P.y.resize(k + 1, 0);
    P.y[k] = c[i];
  }
  return P;
}

}  // namespace

EdgeCheck edge_endpoint_check(const BivarPoly& f, const TruncatedSeries& alpha) {
  const Field& E = alpha.field();
  std::int64_t n = index_of(alpha);
  if (n % static_cast<std::int64_t>(E.p()) == 0) fail(ErrorKind::WildRamification, "arc index divisible by the characteristic");
  Decomposition D = branch_decompose(f);
  if (D.x_power != 0 || D.factors.size() != 1 || D.factors[0].multiplicity != 1)
    fail(ErrorKind::InvalidArgument, "edge check needs an irreducible f coprime with x");
  SemigroupData Sf = *D.factors[0].branch.semigroup;
  SemigroupData Sg = semigroup_from_parametrization(arc_param(alpha));
  BivarPoly fe = E == f.F ? f : embed(f, E);
  Rational ordf = substitute_y(fe, alpha, Rational::infinity()).order();
  if (ordf.is_inf()) fail(ErrorKind::InvalidArgument, "f vanishes on the arc");
  Rational i0 = ordf * Rational(n);
  EggersWallTree t = EggersWallTree::build({{Sf, 1, "f"}, {Sg, 1, "g"}}, {{Rational::infinity(), i0}, {i0, Rational::infinity()}});
  PointValues P = t.values(t.meet(t.at(t.leaf(0)), t.at(t.leaf(1))));
  BivarPoly ft = shift_y(fe, alpha, Rational::infinity());
  EdgeCheck ec;
  ec.edge = max_inclination_edge(ft);
  ec.inclination = ec.edge.inclination();
  ec.expected_inclination = P.e;
  ec.height = ec.edge.from.j - ec.edge.to.j;
  ec.expected_height = Sf.gens[0] / P.i;
  ec.bottom = ec.edge.to.j == 0 ? ec.edge.to.i : Rational::infinity();
  ec.expected_bottom = P.c * Rational(Sf.gens[0]);
  ec.ok = ec.inclination == ec.expected_inclination && ec.edge.from.j == ec.expected_height && ec.edge.to.j == 0 &&
          ec.bottom == ec.expected_bottom;
  return ec;
}

TruncatedSeries constructed_arc(const PolarAnalysis& A, int node, const Rational& iota) {
  const auto& t = A.tree;
  const TreeNode& P = t.node(node);
  if (P.parent < 0) fail(ErrorKind::InvalidArgument, "the root has no segment below it");
  std::int64_t p = static_cast<std::int64_t>(A.field.p());
  if (P.i % p == 0) fail(ErrorKind::InvalidArgument, "the index at P is divisible by the characteristic");
  const TreeNode& Pp = t.node(P.parent);
  if (!(Pp.e < iota && iota < P.e)) fail(ErrorKind::InvalidArgument, "iota must lie strictly between e(P') and e(P)");
  if (std::gcd(iota.den(), p * P.i) != 1) fail(ErrorKind::InvalidArgument, "denominator of iota must be prime to p i(P)");
  for (int b : t.branches_above(t.at(node))) {
    const Branch& br = A.factors[A.f_factors[b]].branch;
    if (br.degree() % p == 0 || !br.param) continue;
    TruncatedSeries root;
    try {
      root = puiseux_root(br);
    } catch (const Error&) {
      continue;
    }
    if (!(iota < root.precision())) fail(ErrorKind::PrecisionExhausted, "root too short for the constructed arc");
    std::vector<std::pair<Rational, Elem>> terms;
    for (const auto& [e, c] : root.terms())
      if (e < iota) terms.push_back({e, c});
    // with -x^iota the arc leaves the branch exactly at iota only off its support
    if (root.coeff(iota) != 0) fail(ErrorKind::InvalidArgument, "iota lies in the support of the branch root");
    terms.push_back({iota, A.field.neg(1)});
    return TruncatedSeries::from_terms(A.field, terms);
  }
  fail(ErrorKind::WildRamification, "no tame branch above the point");
}

EdgeCheck constructed_edge_check(const PolarAnalysis& A, int node, const Rational& iota) {
  const auto& t = A.tree;
  TruncatedSeries alpha = constructed_arc(A, node, iota);
  const TreeNode& P = t.node(node);
  const TreeNode& Pp = t.node(P.parent);
  BivarPoly ft = shift_y(A.f, alpha, Rational::infinity());
  EdgeCheck ec;
  ec.edge = max_inclination_edge(ft);
  ec.inclination = ec.edge.inclination();
  ec.expected_inclination = iota;
  ec.height = ec.edge.from.j - ec.edge.to.j;
  std::int64_t fp = A.f_degree_above(t.at(node));
  ec.expected_height = fp / P.i;
  TreePoint Q{node, Pp.c + (iota - Pp.e) / Rational(P.i)};
  ec.expected_bottom = Rational(0);
  for (std::size_t b = 0; b < A.f_factors.size(); ++b) {
    const auto& lf = A.factors[A.f_factors[b]];
    ec.expected_bottom += t.meet(t.at(t.leaf(static_cast<int>(b))), Q).c * Rational(static_cast<std::int64_t>(lf.mult_f) * lf.branch.degree());
  }
  ec.bottom = ec.edge.to.j == 0 ? ec.edge.to.i : Rational::infinity();
  // principal part eps x^a (y - x^iota)^k
  BivarPoly pp = principal_part(ft, ec.edge);
  std::int64_t r = ft.ram;
  std::int64_t a = (ec.edge.from.i * Rational(r)).num();
  std::int64_t k = ec.edge.from.j;
  Elem eps = pp.at(a, static_cast<int>(k));
  std::int64_t ir = (iota * Rational(r)).num();
  ser::Vec minus_x(static_cast<std::size_t>(ir) + 1, 0);
  minus_x[ir] = A.field.neg(1);
  BivarPoly lin(A.field, {minus_x, ser::Vec{1}}, kExact, r);
  BivarPoly expect = scale(pow(lin, static_cast<unsigned>(k)), eps) * BivarPoly(A.field, {ser::shift(ser::Vec{1}, a)}, kExact, r);
  ec.principal_ok = eps != 0 && (iota * Rational(r)).is_integer() && pp == expect;
  ec.ok = ec.inclination == iota && ec.height == ec.expected_height && fp % P.i == 0 && ec.edge.to.j == 0 &&
          ec.bottom == ec.expected_bottom && ec.principal_ok;
  return ec;
}

DeeperContact deeper_contact_search(const BivarPoly& f, const TruncatedSeries& alpha) {
  const Field& E = alpha.field();
  BivarPoly fe = E == f.F ? f : embed(f, E);
  BivarPoly ft = shift_y(fe, alpha, Rational::infinity());
  Edge edge = max_inclination_edge(ft);
  if (edge.to.j != 0) fail(ErrorKind::InvalidArgument, "f vanishes on the arc");
  std::int64_t r = ft.ram;
  UPoly phi(static_cast<std::size_t>(edge.from.j) + 1, 0);
  for (std::int64_t j = edge.to.j; j <= edge.from.j; ++j) {
    Rational i = edge.to.i - edge.inclination() * Rational(j);
    if (!(i * Rational(r)).is_integer()) continue;
    phi[j] = ft.at((i * Rational(r)).num(), static_cast<int>(j));
  }
  upoly::trim(phi);
  RootsResult rr = univariate_roots(E, phi, true);
  if (rr.roots.empty()) fail(ErrorKind::InvalidArgument, "internal: face polynomial without roots");
  const Field& K = rr.field;
  Elem c = rr.roots.front().first;
  DeeperContact dc;
  dc.c = {K, c};
  dc.exponent = edge.inclination();
  dc.before = edge.to.i;
  TruncatedSeries ak = K == E ? alpha : TruncatedSeries(K, alpha.ramification(), ser::embed(E, alpha.coeffs(), K));
  TruncatedSeries beta = ak + TruncatedSeries::monomial(K, c, dc.exponent);
  BivarPoly fk = K == f.F ? f : embed(f, K);
  dc.after = substitute_y(fk, beta, Rational::infinity()).order();
  if (!(dc.before < dc.after)) fail(ErrorKind::InvalidArgument, "internal: deeper contact not reached");
  return dc;
}

// ---------------------------------------------------------------- reports

std::string report_json(const PolarAnalysis& A, const DecompositionReport& R) {
  const auto& t = A.tree;
  nlohmann::ordered_json j;
  j["field"] = A.field.spec();
  j["precision"] = A.precision;
  nlohmann::ordered_json cj;
  cj["eggers"] = R.conditions.eggers;
  cj["i_condition"] = R.conditions.i_cond;
  cj["points"] = nlohmann::ordered_json::array();
  for (const auto& c : R.conditions.points) {
    auto o = point_json(t, t.at(c.node));
    o["f_degree"] = c.f_degree;
    o["eggers"] = c.eggers;
    o["i_condition"] = c.i_cond;
    cj["points"].push_back(o);
  }
  j["conditions"] = cj;
  j["predicted"] = nlohmann::ordered_json::array();
  for (const auto& B : R.blocks) {
    nlohmann::ordered_json o;
    o["point"] = t.node(B.node).label;
    o["x_degree"] = B.predicted_degree;
    o["ratios"] = rationals_json(B.predicted_ratio);
    j["predicted"].push_back(o);
  }
  if (!R.irreducible_closed_form.empty()) j["closed_form"] = R.irreducible_closed_form;
  if (!R.predicted_only) {
    nlohmann::ordered_json ob;
    ob["factors"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < A.factors.size(); ++k) {
      const auto& lf = A.factors[k];
      nlohmann::ordered_json o;
      o["label"] = lf.label;
      o["weierstrass"] = lf.branch.w.str();
      o["mult_f"] = lf.mult_f;
      o["mult_gamma"] = lf.mult_g;
      o["x_degree"] = lf.x_degree().str();
      o["certificate"] = certificate_name(lf.is_x ? Certificate::Certified : lf.branch.cert);
      if (lf.branch.semigroup) {
        o["semigroup"] = lf.branch.semigroup->gens;
      }
      if (lf.certified() && lf.mult_g > 0) o["attach"] = point_json(t, A.attach[k]);
      ob["factors"].push_back(o);
    }
    ob["blocks"] = nlohmann::ordered_json::array();
    for (const auto& B : R.blocks) {
      nlohmann::ordered_json o;
      o["point"] = t.node(B.node).label;
      o["x_degree"] = B.observed_degree.str();
      o["ratios"] = rationals_json(B.observed_ratio);
      auto labels = nlohmann::ordered_json::array();
      for (int k : B.observed_factors) labels.push_back(A.factors[k].label);
      o["factors"] = labels;
      o["matches"] = B.matches;
      ob["blocks"].push_back(o);
    }
    nlohmann::ordered_json tot;
    tot["gamma_x"] = R.gamma_total.str();
    tot["expected_x"] = R.expected_total;
    tot["gamma_f"] = rationals_json(R.gamma_f_totals);
    ob["totals"] = tot;
    ob["totals_only"] = R.totals_only;
    ob["gamma_zero"] = R.gamma_zero;
    j["observed"] = ob;
    j["e1"] = R.e1;
    j["e2"] = R.e2;
    j["interval_ok"] = R.interval_ok;
    auto fails = nlohmann::ordered_json::array();
    for (const auto& s : R.e2_samples) {
      if (s.ok) continue;
      auto o = point_json(t, s.q);
      o["kind"] = s.why;
      o["observed"] = s.observed.str();
      o["expected"] = s.expected;
      fails.push_back(o);
    }
    j["e2_failures"] = fails;
    j["matches_prediction"] = R.matches_prediction;
  }
  j["verdict"] = R.verdict;
  return j.dump(2);
}

std::string report_text(const PolarAnalysis& A, const DecompositionReport& R) {
  const auto& t = A.tree;
  std::string s = "field " + A.field.spec() + ", precision " + std::to_string(A.precision) + "\n";
  s += t.to_ascii();
  s += "conditions: eggers " + std::string(R.conditions.eggers ? "true" : "false") + ", i-condition " +
       (R.conditions.i_cond ? "true" : "false") + "\n";
  for (const auto& c : R.conditions.points)
    if (!c.eggers || !c.i_cond)
      s += "  at " + t.node(c.node).label + ": i0(f_P,x)=" + std::to_string(c.f_degree) + " i(P)=" + std::to_string(c.index) +
           (c.eggers ? "" : ", Eggers condition fails") + (c.i_cond ? "" : ", i-condition fails") + "\n";
  s += "predicted blocks:";
  for (const auto& B : R.blocks) s += " " + t.node(B.node).label + "=" + std::to_string(B.predicted_degree);
  s += "\n";
  if (R.predicted_only) return s + "verdict: " + R.verdict + "\n";
  for (std::size_t k = 0; k < A.factors.size(); ++k) {
    const auto& lf = A.factors[k];
    if (lf.mult_g == 0) continue;
    s += "  polar factor " + lf.label + ": " + lf.branch.w.str() + " mult " + std::to_string(lf.mult_g) + ", " +
         certificate_name(lf.is_x ? Certificate::Certified : lf.branch.cert);
    if (lf.certified()) s += ", attaches at " + point_name(t, A.attach[k]) + " (e=" + t.values(A.attach[k]).e.str() + ")";
    s += "\n";
  }
  if (R.totals_only) {
    s += "totals only: i0(Gamma,x)=" + R.gamma_total.str() + ", i0(f,x)-1=" + std::to_string(R.expected_total) + "\n";
    return s + "verdict: " + R.verdict + "\n";
  }
  s += "observed blocks:";
  for (const auto& B : R.blocks) s += " " + t.node(B.node).label + "=" + B.observed_degree.str();
  s += "\n";
  s += "E1 " + std::string(R.e1 ? "pass" : "fail") + ", E2 " + (R.e2 ? "pass" : "fail") + "\n";
  for (const auto& q : R.e2_samples)
    if (!q.ok)
      s += std::string(q.marked() ? "  E2 fails at " : "  E2 fails inside a segment at ") + point_name(t, q.q) + " (" + q.why + "): i0(Gamma_Q,x)=" + q.observed.str() +
           ", i0(f_Q,x)-i(Q)=" + std::to_string(q.expected) + "\n";
  return s + "verdict: " + R.verdict + "\n";
}

}  // namespace ewt
