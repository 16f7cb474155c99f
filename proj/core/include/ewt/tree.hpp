#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ewt/branch.hpp"
#include "ewt/rational.hpp"

namespace ewt {

// Every non-root node is a marked point. Interior nodes with one child are
// bamboo points, with two or more children ramification points.
enum class NodeKind { Root, Bamboo, Ramification, Leaf };
const char* node_kind_name(NodeKind k);

struct TreeNode {
  int id = 0;
  Rational c;            // contact
  std::int64_t i = 1;    // index on the segment ending at this node
  Rational e;            // exponent
  NodeKind kind = NodeKind::Root;
  std::string label;
  int parent = -1;
  std::vector<int> children;
  int branch = -1;       // leaves only
  int multiplicity = 0;  // leaves only
};

struct TreeBranchInput {
  SemigroupData semigroup;
  int multiplicity = 1;
  std::string label;  // defaults to f1, f2, ...
};

// A point of the tree: the node itself when c == c(node), otherwise the
// interior point of the edge (parent(node), node] at contact c.
struct TreePoint {
  int node = 0;
  Rational c;
  bool operator==(const TreePoint& o) const { return node == o.node && c == o.c; }
};

struct PointValues {
  Rational c;
  std::int64_t i = 1;
  Rational e;
};

class EggersWallTree {
 public:
  // i0[a][b]: intersection multiplicities of distinct branches (diagonal ignored)
  static EggersWallTree build(const std::vector<TreeBranchInput>& branches, const std::vector<std::vector<Rational>>& i0);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const;
  std::size_t branch_count() const { return leaves_.size(); }
  int leaf(int branch) const;
  // x-degree of a branch, i.e. the index at its leaf
  std::int64_t degree(int branch) const { return node(leaf(branch)).i; }
  // d(f_a, f_b); infinity when a == b
  Rational distance(int a, int b) const;

  TreePoint at(int node) const;
  TreePoint point_on_branch(int branch, const Rational& c) const;
  // checks that p names a point of the tree
  void validate(const TreePoint& p) const;
  bool is_node(const TreePoint& p) const { return p.c == node(p.node).c; }
  PointValues values(const TreePoint& p) const;
  // inverse of the exponent along the path to a leaf
  Rational c_from_e(int branch, const Rational& e) const;

  bool leq(const TreePoint& a, const TreePoint& b) const;
  TreePoint meet(const TreePoint& a, const TreePoint& b) const;
  TreePoint tripod_center(const TreePoint& a, const TreePoint& b, const TreePoint& c) const;
  // branches whose leaf lies above p
  std::vector<int> branches_above(const TreePoint& p) const;
  // maximal tripod center <x, g, f_i> for the distances d(g, f_i)
  TreePoint attach_point(const std::vector<Rational>& d) const;
  // nodes on the path from the root to p, both ends included when they are nodes
  std::vector<int> path_nodes(const TreePoint& p) const;

  std::string to_json() const;
  static EggersWallTree from_json(const std::string& text);
  std::string to_dot() const;
  std::string to_ascii() const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> leaves_;
};

struct Subproduct {
  std::vector<int> factors;
  std::int64_t x_degree = 0;
};

// factors k with Q below their attach points, together with the sum of their x-degrees
Subproduct subproduct_at(const EggersWallTree& t, const std::vector<TreePoint>& attach, const std::vector<std::int64_t>& x_degrees,
                         const TreePoint& Q);

Rational noether_distance(const CharSequence& cs, const Rational& coincidence, std::uint64_t p);

}  // namespace ewt
