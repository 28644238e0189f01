#pragma once

#include <map>
#include <string>
#include <vector>

#include "logchow/exact.hpp"

namespace logchow {

using VertexId = std::string;

struct CurveVertex {
  VertexId id;
  int genus = 0;
};

struct CurveLeg {
  VertexId vertex;
  int marking = 0;
};

// Oriented for slope bookkeeping; the underlying graph is undirected.
// length_ray indexes a coordinate of the base cone: the edge's length is that
// coordinate function.
struct CurveEdge {
  VertexId from, to;
  int length_ray = 0;
};

// A vertex-weighted graph over a base cone, every edge labeled by one base
// coordinate (several edges may share a coordinate).
class TropicalCurve {
 public:
  TropicalCurve() = default;
  TropicalCurve(std::vector<CurveVertex> vertices, std::vector<CurveLeg> legs,
                std::vector<CurveEdge> edges, int base_dim);

  const std::vector<CurveVertex>& vertices() const { return vertices_; }
  const std::vector<CurveLeg>& legs() const { return legs_; }
  const std::vector<CurveEdge>& edges() const { return edges_; }
  int base_dim() const { return base_dim_; }

  void validate() const;  // connected, labels in range, endpoints exist
  int betti() const;      // first Betti number
  int genus() const;      // betti + sum of vertex genera
  int edge_valence(const VertexId& v) const;  // loops count twice
  int legs_at(const VertexId& v) const;
  const CurveVertex& vertex(const VertexId& id) const;
  bool has_vertex(const VertexId& id) const;

  // Fundamental cycles from a spanning tree: one vector in {-1,0,1}^E per
  // independent cycle.
  std::vector<LatticeVector> cycle_basis() const;

 private:
  std::vector<CurveVertex> vertices_;
  std::vector<CurveLeg> legs_;
  std::vector<CurveEdge> edges_;
  int base_dim_ = 0;
};

struct Divisor {
  std::map<VertexId, Int> multidegree;
  Int total() const;
  bool operator==(const Divisor& o) const { return multidegree == o.multidegree; }
};

// A piecewise-linear function on the curve: integer slope per oriented edge
// (value(to) - value(from) = slope * length), vertex values in the base
// lattice. All outgoing slopes on legs vanish by convention.
struct PLFunction {
  VertexId base_vertex;
  std::vector<Int> slopes;                      // per edge, in curve edge order
  std::map<VertexId, LatticeVector> values;     // vertex -> Z^base_dim
};

// Builds the PL function with the given slopes; throws when the cycle
// consistency fails identically on the base cone. Values are anchored at the
// smallest vertex id and shifted so the minimum value is zero whenever the
// value set is totally ordered coordinatewise.
PLFunction pl_from_slopes(const TropicalCurve& g, const std::vector<Int>& slopes);

// multidegree(v) = sum of outgoing slopes at v; total degree 0.
Divisor div_of(const PLFunction& alpha, const TropicalCurve& g);

// Twisting by powers of the relative dualizing sheaf minus weighted markings:
// multidegree(v) = k(2 g_v - 2 + edge_valence(v)) - sum of weights at v.
// Requires sum(a) = k(2g - 2).
Divisor franchetta_divisor(const TropicalCurve& g, int k, const std::vector<Int>& a);

// Contraction of all edges whose length coordinate is not retained by the
// face (face[k] = retained base coordinate). Merged vertices take the
// smallest id, add genera, and absorb the cycle rank of the contracted part.
struct Contraction {
  TropicalCurve curve;
  std::map<VertexId, VertexId> vertex_image;
  std::vector<int> edge_image;  // index in the contracted curve, -1 if contracted
};
Contraction contract(const TropicalCurve& g, const std::vector<int>& face);

// Interpolates PL data given on some rays of the base cone (values on the
// contraction to each ray, integer multiples of that ray's coordinate) to a
// PL function on the whole cone; rays not listed carry the zero function.
// The value at v is the sum over rays of the input value at the image of v.
PLFunction extend_pl(const TropicalCurve& g,
                     const std::map<int, std::map<VertexId, Int>>& ray_values);

// Push a divisor along a contraction (merged vertices add multidegrees).
Divisor push_divisor(const Contraction& c, const Divisor& d);

}  // namespace logchow
