#include "ewt/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "json.hpp"

namespace ewt {

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Root: return "root";
    case NodeKind::Bamboo: return "bamboo";
    case NodeKind::Ramification: return "ramification";
    default: return "leaf";
  }
}

namespace {

NodeKind parse_kind(const std::string& s) {
  if (s == "root") return NodeKind::Root;
  if (s == "bamboo") return NodeKind::Bamboo;
  if (s == "ramification") return NodeKind::Ramification;
  if (s == "leaf") return NodeKind::Leaf;
  fail(ErrorKind::ParseError, "unknown node kind '" + s + "'");
}

[[noreturn]] void glue_fail(const std::string& m) { fail(ErrorKind::GluingInconsistency, m); }

std::vector<Rational> marked_contacts(const SemigroupData& s) {
  std::vector<Rational> out;
  for (int k = 1; k <= s.h(); ++k) out.push_back(s.contact(k));
  return out;
}

// index of the branch on the segment ending at contact c
std::int64_t index_at(const SemigroupData& s, const Rational& c) {
  std::int64_t idx = 1;
  for (int k = 1; k <= s.h(); ++k)
    if (s.contact(k) < c) idx *= s.n(k);
  return idx;
}

}  // namespace

EggersWallTree EggersWallTree::build(const std::vector<TreeBranchInput>& br, const std::vector<std::vector<Rational>>& i0) {
  const int r = static_cast<int>(br.size());
  if (static_cast<int>(i0.size()) != r) fail(ErrorKind::InvalidArgument, "intersection matrix has the wrong size");
  for (const auto& b : br) b.semigroup.validate();
  std::vector<std::vector<Rational>> d(r, std::vector<Rational>(r, Rational::infinity()));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      if (a == b) continue;
      if (i0[a][b] != i0[b][a]) glue_fail("intersection matrix is not symmetric");
      if (i0[a][b].is_inf()) glue_fail("two branches coincide");
      d[a][b] = i0[a][b] / Rational(checked_mul(br[a].semigroup.gens[0], br[b].semigroup.gens[0]));
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        if (a != b && b != c && a != c && d[a][c] < min(d[a][b], d[b][c])) glue_fail("distances violate the strong triangle inequality");
  // the segments of two branches agree up to their distance
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      std::vector<Rational> ma, mb;
      for (const auto& c : marked_contacts(br[a].semigroup))
        if (c < d[a][b]) ma.push_back(c);
      for (const auto& c : marked_contacts(br[b].semigroup))
        if (c < d[a][b]) mb.push_back(c);
      if (ma != mb || index_at(br[a].semigroup, d[a][b]) != index_at(br[b].semigroup, d[a][b]))
        glue_fail("marked points of " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " disagree below their distance");
    }

  // interior nodes keyed by (contact, set of branches through the point)
  using Key = std::pair<Rational, std::vector<int>>;
  auto key_less = [](const Key& x, const Key& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  };
  std::map<Key, int, decltype(key_less)> index(key_less);
  std::vector<Key> keys;
  std::vector<std::vector<int>> chain(r);
  for (int a = 0; a < r; ++a) {
    std::vector<Rational> cs = marked_contacts(br[a].semigroup);
    for (int b = 0; b < r; ++b)
      if (b != a) cs.push_back(d[a][b]);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (const auto& c : cs) {
      std::vector<int> S;
      for (int b = 0; b < r; ++b)
        if (d[a][b] >= c) S.push_back(b);
      Key k{c, S};
      auto it = index.find(k);
      int id;
      if (it == index.end()) {
        id = static_cast<int>(keys.size());
        index.emplace(k, id);
        keys.push_back(k);
      } else {
        id = it->second;
      }
      chain[a].push_back(id);
    }
  }
  const int m = static_cast<int>(keys.size());
  std::vector<int> parent(m, -2);  // -1: root
  for (int a = 0; a < r; ++a)
    for (std::size_t k = 0; k < chain[a].size(); ++k) {
      int p = k == 0 ? -1 : chain[a][k - 1];
      int id = chain[a][k];
      if (parent[id] != -2 && parent[id] != p) glue_fail("branches disagree on the parent of a point");
      parent[id] = p;
    }

  // preorder numbering; children ordered by their smallest branch
  struct Proto {
    int key = -1;  // -1 root, -2 - a for the leaf of branch a
    std::vector<int> kids;
  };
  std::vector<Proto> proto(static_cast<std::size_t>(m) + 1 + r);
  auto slot = [&](int key) { return key == -1 ? 0 : key >= 0 ? key + 1 : m + 1 + (-2 - key); };
  for (int k = 0; k < m; ++k) {
    proto[slot(k)].key = k;
    proto[slot(parent[k])].kids.push_back(k);
  }
  for (int a = 0; a < r; ++a) {
    int s = slot(-2 - a);
    proto[s].key = -2 - a;
    int p = chain[a].empty() ? -1 : chain[a].back();
    proto[slot(p)].kids.push_back(-2 - a);
  }
  auto min_branch = [&](int key) { return key >= 0 ? keys[key].second.front() : -2 - key; };
  for (auto& pr : proto)
    std::sort(pr.kids.begin(), pr.kids.end(), [&](int x, int y) {
      if (min_branch(x) != min_branch(y)) return min_branch(x) < min_branch(y);
      return x >= 0 && y < 0;
    });

  EggersWallTree t;
  t.leaves_.assign(r, -1);
  int interior = 0;
  std::function<void(int, int)> visit = [&](int key, int par) {
    TreeNode n;
    n.id = static_cast<int>(t.nodes_.size());
    n.parent = par;
    if (key == -1) {
      n.c = Rational(0);
      n.i = 1;
      n.e = Rational(0);
      n.kind = NodeKind::Root;
      n.label = "x";
    } else if (key >= 0) {
      const auto& [c, S] = keys[key];
      n.c = c;
      n.i = index_at(br[S.front()].semigroup, c);
      for (int b : S)
        if (index_at(br[b].semigroup, c) != n.i) glue_fail("index differs between branches through a point");
      const TreeNode& pn = t.nodes_[par];
      n.e = pn.e + Rational(n.i) * (c - pn.c);
      n.label = "P" + std::to_string(++interior);
    } else {
      int a = -2 - key;
      n.c = Rational::infinity();
      n.i = br[a].semigroup.gens[0];
      n.e = Rational::infinity();
      n.kind = NodeKind::Leaf;
      n.label = br[a].label.empty() ? "f" + std::to_string(a + 1) : br[a].label;
      n.branch = a;
      n.multiplicity = br[a].multiplicity;
      t.leaves_[a] = n.id;
    }
    t.nodes_.push_back(n);
    int id = n.id;
    if (par >= 0) t.nodes_[par].children.push_back(id);
    for (int kid : proto[slot(key)].kids) visit(kid, id);
    if (key >= 0) t.nodes_[id].kind = t.nodes_[id].children.size() >= 2 ? NodeKind::Ramification : NodeKind::Bamboo;
  };
  visit(-1, -1);
  return t;
}

const TreeNode& EggersWallTree::node(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes_.size())) fail(ErrorKind::PointOffTree, "no node " + std::to_string(id));
  return nodes_[id];
}

int EggersWallTree::leaf(int branch) const {
  if (branch < 0 || branch >= static_cast<int>(leaves_.size())) fail(ErrorKind::PointOffTree, "no branch " + std::to_string(branch));
  return leaves_[branch];
}

Rational EggersWallTree::distance(int a, int b) const {
  if (a == b) return Rational::infinity();
  return meet(at(leaf(a)), at(leaf(b))).c;
}

TreePoint EggersWallTree::at(int id) const { return {id, node(id).c}; }

void EggersWallTree::validate(const TreePoint& p) const {
  const TreeNode& n = node(p.node);
  if (n.parent < 0) {
    if (p.c != Rational(0)) fail(ErrorKind::PointOffTree, "the root has contact 0");
    return;
  }
  if (!(nodes_[n.parent].c < p.c) || n.c < p.c) fail(ErrorKind::PointOffTree, "contact " + p.c.str() + " is not on the edge to " + n.label);
}

TreePoint EggersWallTree::point_on_branch(int branch, const Rational& c) const {
  if (c < Rational(0)) fail(ErrorKind::PointOffTree, "negative contact");
  if (c == Rational(0)) return {0, Rational(0)};
  int id = leaf(branch);
  while (nodes_[id].parent >= 0 && nodes_[nodes_[id].parent].c >= c) id = nodes_[id].parent;
  return {id, c};
}

PointValues EggersWallTree::values(const TreePoint& p) const {
  validate(p);
  const TreeNode& n = nodes_[p.node];
  if (p.c == n.c) return {n.c, n.i, n.e};
  const TreeNode& pn = nodes_[n.parent];
  return {p.c, n.i, pn.e + Rational(n.i) * (p.c - pn.c)};
}

Rational EggersWallTree::c_from_e(int branch, const Rational& e) const {
  if (e < Rational(0)) fail(ErrorKind::PointOffTree, "negative exponent");
  if (e == Rational(0)) return Rational(0);
  int id = leaf(branch);
  while (nodes_[id].parent >= 0 && nodes_[nodes_[id].parent].e >= e) id = nodes_[id].parent;
  if (id == 0) return Rational(0);
  const TreeNode& n = nodes_[id];
  const TreeNode& pn = nodes_[n.parent];
  if (e.is_inf()) return Rational::infinity();
  return pn.c + (e - pn.e) / Rational(n.i);
}

bool EggersWallTree::leq(const TreePoint& a, const TreePoint& b) const {
  validate(a);
  validate(b);
  if (a.node == b.node) return a.c <= b.c;
  for (int id = nodes_[b.node].parent; id >= 0; id = nodes_[id].parent)
    if (id == a.node) return true;
  return false;
}

TreePoint EggersWallTree::meet(const TreePoint& a, const TreePoint& b) const {
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  std::vector<int> up;
  for (int id = a.node; id >= 0; id = nodes_[id].parent) up.push_back(id);
  for (int id = nodes_[b.node].parent; id >= 0; id = nodes_[id].parent)
    if (std::find(up.begin(), up.end(), id) != up.end()) return at(id);
  return at(0);
}

TreePoint EggersWallTree::tripod_center(const TreePoint& a, const TreePoint& b, const TreePoint& c) const {
  TreePoint m[3] = {meet(a, b), meet(b, c), meet(a, c)};
  TreePoint best = m[0];
  for (const auto& q : m)
    if (leq(best, q)) best = q;
  return best;
}

std::vector<int> EggersWallTree::branches_above(const TreePoint& p) const {
  std::vector<int> out;
  for (std::size_t a = 0; a < leaves_.size(); ++a)
    if (leq(p, at(leaves_[a]))) out.push_back(static_cast<int>(a));
  return out;
}

std::vector<int> EggersWallTree::path_nodes(const TreePoint& p) const {
  validate(p);
  std::vector<int> out;
  int id = is_node(p) ? p.node : nodes_[p.node].parent;
  for (; id >= 0; id = nodes_[id].parent) out.push_back(id);
  std::reverse(out.begin(), out.end());
  return out;
}

TreePoint EggersWallTree::attach_point(const std::vector<Rational>& d) const {
  const int r = static_cast<int>(leaves_.size());
  if (static_cast<int>(d.size()) != r) fail(ErrorKind::InvalidArgument, "one distance per branch expected");
  if (r == 0) return at(0);
  int best = 0;
  for (int a = 1; a < r; ++a)
    if (d[best] < d[a]) best = a;
  for (int a = 0; a < r; ++a) {
    Rational expect = a == best ? d[best] : min(d[best], distance(best, a));
    if (d[a] != expect) fail(ErrorKind::InconsistentDistances, "distance to branch " + std::to_string(a + 1) + " is " + d[a].str() + ", expected " + expect.str());
  }
  if (d[best].is_inf()) return at(leaves_[best]);
  return point_on_branch(best, d[best]);
}

// ---------------------------------------------------------------- serialization

std::string EggersWallTree::to_json() const {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : nodes_) {
    nlohmann::ordered_json o;
    o["id"] = n.id;
    o["c"] = n.c.str();
    o["i"] = n.i;
    o["e"] = n.e.str();
    o["kind"] = node_kind_name(n.kind);
    o["label"] = n.label;
    o["parent"] = n.parent;
    if (n.kind == NodeKind::Leaf) o["multiplicity"] = n.multiplicity;
    j["nodes"].push_back(o);
  }
  j["leaves"] = nlohmann::ordered_json::object();
  for (int id : leaves_) j["leaves"][nodes_[id].label] = id;
  return j.dump(2);
}

EggersWallTree EggersWallTree::from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("tree JSON: ") + e.what());
  }
  EggersWallTree t;
  try {
    for (const auto& o : j.at("nodes")) {
      TreeNode n;
      n.id = o.at("id").get<int>();
      if (n.id != static_cast<int>(t.nodes_.size())) fail(ErrorKind::ParseError, "node ids must be 0, 1, 2, ...");
      n.c = Rational::parse(o.at("c").get<std::string>());
      n.i = o.at("i").get<std::int64_t>();
      n.e = Rational::parse(o.at("e").get<std::string>());
      n.kind = parse_kind(o.at("kind").get<std::string>());
      n.label = o.at("label").get<std::string>();
      n.parent = o.at("parent").get<int>();
      if (o.contains("multiplicity")) n.multiplicity = o["multiplicity"].get<int>();
      if (n.parent >= n.id || (n.parent < 0 && n.id != 0)) fail(ErrorKind::ParseError, "parents must precede their children");
      t.nodes_.push_back(n);
      if (n.parent >= 0) t.nodes_[n.parent].children.push_back(n.id);
    }
    for (const auto& [label, id] : j.at("leaves").items()) {
      int k = id.get<int>();
      if (k < 0 || k >= static_cast<int>(t.nodes_.size()) || t.nodes_[k].kind != NodeKind::Leaf || t.nodes_[k].label != label)
        fail(ErrorKind::ParseError, "bad leaf entry '" + label + "'");
      t.nodes_[k].branch = static_cast<int>(t.leaves_.size());
      t.leaves_.push_back(k);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("tree JSON: ") + e.what());
  }
  if (t.nodes_.empty()) fail(ErrorKind::ParseError, "tree without root");
  return t;
}

std::string EggersWallTree::to_dot() const {
  std::string s = "digraph EggersWall {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (const auto& n : nodes_) {
    std::string shape = n.kind == NodeKind::Leaf ? "plaintext" : n.kind == NodeKind::Root ? "box" : "circle";
    s += "  n" + std::to_string(n.id) + " [shape=" + shape + ", label=\"" + n.label + "\\nc=" + n.c.str() + ", i=" + std::to_string(n.i) +
         ", e=" + n.e.str() + "\"];\n";
  }
  for (const auto& n : nodes_)
    if (n.parent >= 0)
      s += "  n" + std::to_string(n.parent) + " -> n" + std::to_string(n.id) + " [dir=none, label=\"" + std::to_string(n.i) + "\"];\n";
  return s + "}\n";
}

std::string EggersWallTree::to_ascii() const {
  std::string s;
  std::function<void(int, const std::string&, bool)> draw = [&](int id, const std::string& pre, bool last) {
    const TreeNode& n = nodes_[id];
    std::string line = n.label + " (" + node_kind_name(n.kind) + ") c=" + n.c.str() + " i=" + std::to_string(n.i) + " e=" + n.e.str();
    if (n.kind == NodeKind::Leaf && n.multiplicity > 1) line += " mult=" + std::to_string(n.multiplicity);
    if (n.parent < 0)
      s += line + "\n";
    else
      s += pre + (last ? "`-- " : "|-- ") + line + "\n";
    std::string next = n.parent < 0 ? "" : pre + (last ? "    " : "|   ");
    for (std::size_t k = 0; k < n.children.size(); ++k) draw(n.children[k], next, k + 1 == n.children.size());
  };
  if (!nodes_.empty()) draw(0, "", true);
  return s;
}

Subproduct subproduct_at(const EggersWallTree& t, const std::vector<TreePoint>& attach, const std::vector<std::int64_t>& x_degrees,
                         const TreePoint& Q) {
  if (attach.size() != x_degrees.size()) fail(ErrorKind::InvalidArgument, "one x-degree per factor expected");
  Subproduct out;
  for (std::size_t k = 0; k < attach.size(); ++k)
    if (t.leq(Q, attach[k])) {
      out.factors.push_back(static_cast<int>(k));
      out.x_degree += x_degrees[k];
    }
  return out;
}

Rational noether_distance(const CharSequence& cs, const Rational& coincidence, std::uint64_t p) {
  if (cs.b.empty()) fail(ErrorKind::InvalidArgument, "empty characteristic sequence");
  std::int64_t b0 = cs.b[0];
  if (b0 % static_cast<std::int64_t>(p) == 0) fail(ErrorKind::WildCharacteristic, "characteristic divides the x-degree");
  std::vector<std::int64_t> e;
  std::int64_t g = 0;
  for (auto b : cs.b) e.push_back(g = std::gcd(g, b));
  const int h = static_cast<int>(cs.b.size()) - 1;
  Rational B0(b0), d(0);
  for (int k = 1; k <= h + 1; ++k) {
    if (k == h + 1 || coincidence <= Rational(cs.b[k]) / B0) return d + Rational(e[k - 1]) / B0 * coincidence;
    d += Rational(e[k - 1] - e[k]) / B0 * (Rational(cs.b[k]) / B0);
  }
  return d;
}

}  // namespace ewt
