#include "ewt/newton.hpp"

#include <algorithm>
#include <map>

namespace ewt {

namespace {

// (b - a) x (c - a)
Rational cross(const NPoint& a, const NPoint& b, const NPoint& c) {
  return (b.i - a.i) * Rational(c.j - a.j) - Rational(b.j - a.j) * (c.i - a.i);
}

std::string point_json(const NPoint& p) {
  std::string i = p.i.is_integer() ? p.i.str() : "\"" + p.i.str() + "\"";
  return "[" + i + "," + std::to_string(p.j) + "]";
}

}  // namespace

std::vector<Edge> NewtonDiagram::edges() const {
  std::vector<Edge> out;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) out.push_back({vertices[k], vertices[k + 1]});
  return out;
}

NewtonDiagram newton_diagram(std::vector<NPoint> support) {
  NewtonDiagram d;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  d.support = support;
  // staircase: keep points whose j is below every point to their left
  std::vector<NPoint> stair;
  for (const auto& p : support)
    if (stair.empty() || p.j < stair.back().j) stair.push_back(p);
  for (const auto& p : stair) {
    while (d.vertices.size() >= 2 && cross(d.vertices[d.vertices.size() - 2], d.vertices.back(), p) <= Rational(0))
      d.vertices.pop_back();
    d.vertices.push_back(p);
  }
  return d;
}

std::vector<NPoint> support_of(const BivarPoly& f) {
  std::vector<NPoint> s;
  for (int j = 0; j <= f.deg_y(); ++j)
    for (std::size_t i = 0; i < f.c[j].size(); ++i)
      if (f.c[j][i]) s.push_back({Rational(static_cast<std::int64_t>(i), f.ram), j});
  return s;
}

NewtonDiagram newton_polygon(const BivarPoly& f) { return newton_diagram(support_of(f)); }

BivarPoly principal_part(const BivarPoly& f, const Edge& E) {
  NewtonDiagram d = newton_polygon(f);
  auto es = d.edges();
  if (std::find(es.begin(), es.end(), E) == es.end()) fail(ErrorKind::EdgeNotOnPolygon, "edge is not a compact edge of the polygon");
  std::vector<ser::Vec> c(static_cast<std::size_t>(f.deg_y()) + 1);
  for (int j = 0; j <= f.deg_y(); ++j)
    for (std::size_t i = 0; i < f.c[j].size(); ++i) {
      if (!f.c[j][i]) continue;
      NPoint p{Rational(static_cast<std::int64_t>(i), f.ram), j};
      if (p.j < E.to.j || p.j > E.from.j || cross(E.from, E.to, p) != Rational(0)) continue;
      if (c[j].size() <= i) c[j].resize(i + 1, 0);
      c[j][i] = f.c[j][i];
    }
  return BivarPoly(f.F, std::move(c), kExact, f.ram);
}

ArcOrder arc_order(const BivarPoly& g, const Rational& nu, Elem c) {
  auto s = support_of(g);
  if (s.empty()) fail(ErrorKind::InvalidArgument, "arc_order of the zero polynomial");
  Rational best = Rational::infinity();
  for (const auto& p : s) best = min(best, p.i + nu * Rational(p.j));
  const Field& F = g.F;
  Elem val = 0;
  for (const auto& p : s) {
    if (p.i + nu * Rational(p.j) != best) continue;
    std::int64_t i = (p.i * Rational(g.ram)).num();
    val = F.add(val, F.mul(g.at(i, static_cast<int>(p.j)), F.pow(c, static_cast<std::uint64_t>(p.j))));
  }
  return {best, val != 0};
}

NewtonDiagram minkowski_sum(const NewtonDiagram& a, const NewtonDiagram& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<NPoint> pts;
  for (const auto& p : a.vertices)
    for (const auto& q : b.vertices) pts.push_back({p.i + q.i, p.j + q.j});
  NewtonDiagram d = newton_diagram(pts);
  d.support.clear();
  for (const auto& p : a.support)
    for (const auto& q : b.support) d.support.push_back({p.i + q.i, p.j + q.j});
  return d;
}

std::string edges_json(const NewtonDiagram& d) {
  std::string s = "[";
  bool first = true;
  for (const auto& e : d.edges()) {
    Rational inc = e.inclination();
    if (!first) s += ",";
    first = false;
    s += "{\"from\":" + point_json(e.from) + ",\"to\":" + point_json(e.to) + ",\"inc\":{\"num\":" +
         std::to_string(inc.num()) + ",\"den\":" + std::to_string(inc.den()) + "}}";
  }
  return s + "]";
}

}  // namespace ewt
