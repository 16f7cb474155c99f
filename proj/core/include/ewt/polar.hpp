#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ewt/branch.hpp"
#include "ewt/newton.hpp"
#include "ewt/tree.hpp"

namespace ewt {

// A local irreducible factor of f or of Gamma = df/dy. Branches shared by f
// and Gamma appear once with both multiplicities set.
struct LocalFactor {
  Branch branch;
  int mult_f = 0;
  int mult_g = 0;
  bool is_x = false;  // the factor x of Gamma
  std::string label;

  bool certified() const { return is_x || branch.cert == Certificate::Certified; }
  // i0(factor, x); infinity for x itself
  Rational x_degree() const { return is_x ? Rational::infinity() : Rational(branch.degree()); }
};

struct PolarAnalysis {
  Field field;
  std::int64_t precision = 0;
  BivarPoly f, gamma;  // over `field`
  std::vector<LocalFactor> factors;
  std::vector<int> f_factors;  // indices into factors, in tree branch order
  std::vector<int> g_factors;
  // i0 between factors; infinity on the diagonal, only pairs touching f are filled
  std::vector<std::vector<Rational>> i0;
  EggersWallTree tree;
  // attach point to the tree, per factor (meaningful for certified factors)
  std::vector<TreePoint> attach;
  bool gamma_zero = false;
  bool totals_only = false;  // some factor of Gamma is not certified irreducible

  int tree_branch(int factor) const;
  // i0(f_Q, x) and i0(Gamma_Q, x) with multiplicities
  std::int64_t f_degree_above(const TreePoint& Q) const;
  Rational gamma_degree_above(const TreePoint& Q) const;
};

// Branches of f, their tree and, with with_gamma, the factors of df/dy placed
// on the tree. Extends the field and raises the precision as needed.
PolarAnalysis analyze(const BivarPoly& f, bool with_gamma = true, std::int64_t N0 = kDefaultPrecision);
EggersWallTree tree_of(const BivarPoly& f);

struct ConditionAt {
  int node = 0;
  std::int64_t f_degree = 0;  // i0(f_P, x)
  std::int64_t index = 1;     // i(P)
  bool eggers = false;
  bool i_cond = false;
};

struct Conditions {
  std::vector<ConditionAt> points;  // every marked point other than the root
  bool eggers = true;
  bool i_cond = true;
};

Conditions check_conditions(const PolarAnalysis& A);

struct Block {
  int node = 0;
  std::int64_t predicted_degree = 0;
  std::vector<Rational> predicted_ratio;  // i0(Gamma^(P), f_i) / i0(Gamma^(P), x) per branch of f
  std::vector<int> observed_factors;
  Rational observed_degree;
  std::vector<Rational> observed_ratio;  // empty when the block is trivial
  bool matches = false;
};

struct E2Sample {
  TreePoint q;
  PointValues v;
  std::string why;  // root, node, attach, mid, dense
  bool marked() const { return why == "root" || why == "node"; }
  Rational observed;
  std::int64_t expected = 0;
  bool ok = false;
};

struct DecompositionReport {
  Conditions conditions;
  std::vector<Block> blocks;
  // closed form for irreducible f: n_1...n_(i-1) (n_i - 1) at the i-th marked point
  std::vector<std::int64_t> irreducible_closed_form;
  bool predicted_only = true;
  bool totals_only = false;
  bool gamma_zero = false;
  bool e1 = false, e2 = false;  // e2 at every point: marked points, root and each constant piece
  bool interval_ok = false;      // the part of e2 coming from points inside segments
  std::vector<E2Sample> e2_samples;
  Rational gamma_total;          // i0(Gamma, x)
  std::int64_t expected_total = 0;  // i0(f, x) - 1
  std::vector<Rational> gamma_f_totals;  // i0(Gamma, f_i)
  bool matches_prediction = false;
  std::string verdict;  // pass, fail, uncertain, predicted

  // marked points (and the root) where (E2) fails
  std::vector<TreePoint> e2_failures() const;
};

DecompositionReport predicted_decomposition(const PolarAnalysis& A);
DecompositionReport verify_decomposition(const PolarAnalysis& A);

struct IdentityCheck {
  Rational lhs, rhs;
  bool ok = false;
};

// sum_i d(f_i,Q) i0(f_i,x) - sum_j d(G_j,Q) i0(G_j,x) against e(Q); Q not a leaf
IdentityCheck sum_identity_check(const PolarAnalysis& A, const TreePoint& Q);

struct OrdGap {
  Rational ord_f, ord_gamma, gap, e;
  TreePoint q;
  bool admissible = false;  // the attach point of the arc lies on the tree of f
  bool ok = false;
};

// alpha over A.field, exact, of positive order, f(x, alpha) != 0
OrdGap ord_gap_check(const PolarAnalysis& A, const TruncatedSeries& alpha);

struct EdgeCheck {
  Edge edge;
  Rational inclination, expected_inclination;
  std::int64_t height = 0, expected_height = 0;
  Rational bottom, expected_bottom;  // x-coordinate of the endpoint on the axis
  bool principal_ok = true;          // shape of the principal part, constructed variant only
  bool ok = false;
};

// max-inclination edge of f(x, y + alpha) for irreducible f and tame alpha
EdgeCheck edge_endpoint_check(const BivarPoly& f, const TruncatedSeries& alpha);
// the constructed arc through the point with exponent iota on (parent(P), P]
EdgeCheck constructed_edge_check(const PolarAnalysis& A, int node, const Rational& iota);
TruncatedSeries constructed_arc(const PolarAnalysis& A, int node, const Rational& iota);

struct DeeperContact {
  FieldElement c;
  Rational exponent;   // e(P)
  Rational before;     // d(f,g) i0(f,x)
  Rational after;      // ord f(x, alpha + c x^e(P))
};

DeeperContact deeper_contact_search(const BivarPoly& f, const TruncatedSeries& alpha);

// compact edge of maximal inclination; InvalidArgument when there is none
Edge max_inclination_edge(const BivarPoly& f);

// JSON renderings
std::string report_json(const PolarAnalysis& A, const DecompositionReport& R);
std::string report_text(const PolarAnalysis& A, const DecompositionReport& R);

}  // namespace ewt
