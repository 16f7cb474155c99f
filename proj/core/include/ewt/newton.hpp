#pragma once

#include <string>
#include <vector>

#include "ewt/bivar.hpp"
#include "ewt/rational.hpp"

namespace ewt {

// Support point: x-exponent i (rational) and y-exponent j.
struct NPoint {
  Rational i;
  std::int64_t j = 0;
  bool operator==(const NPoint& o) const { return i == o.i && j == o.j; }
  bool operator<(const NPoint& o) const { return i < o.i || (i == o.i && j < o.j); }
};

struct Edge {
  NPoint from;  // upper-left endpoint
  NPoint to;    // lower-right endpoint
  Rational length() const { return to.i - from.i; }
  Rational height() const { return Rational(from.j - to.j); }
  Rational inclination() const { return length() / height(); }
  bool operator==(const Edge& o) const { return from == o.from && to == o.to; }
};

struct NewtonDiagram {
  std::vector<NPoint> vertices;  // ascending i, descending j
  std::vector<NPoint> support;

  std::vector<Edge> edges() const;
  bool empty() const { return vertices.empty(); }
  bool operator==(const NewtonDiagram& o) const { return vertices == o.vertices; }
};

NewtonDiagram newton_diagram(std::vector<NPoint> support);
NewtonDiagram newton_polygon(const BivarPoly& f);
std::vector<NPoint> support_of(const BivarPoly& f);

// terms of f on the edge E; EdgeNotOnPolygon when E is not a compact edge of f
BivarPoly principal_part(const BivarPoly& f, const Edge& E);

struct ArcOrder {
  Rational a;  // x-intercept of the supporting line of inclination nu
  bool exact = false;
};
// lower bound for ord g(x, c x^nu), exact iff the face polynomial does not vanish at c
ArcOrder arc_order(const BivarPoly& g, const Rational& nu, Elem c);

NewtonDiagram minkowski_sum(const NewtonDiagram& a, const NewtonDiagram& b);

// {"from":[i,j],"to":[i,j],"inc":{"num":..,"den":..}} per edge
std::string edges_json(const NewtonDiagram& d);

}  // namespace ewt
