#include "logchow/tropical.hpp"

#include <algorithm>
#include <set>

namespace logchow {

TropicalCurve::TropicalCurve(std::vector<CurveVertex> vertices, std::vector<CurveLeg> legs,
                             std::vector<CurveEdge> edges, int base_dim)
    : vertices_(std::move(vertices)), legs_(std::move(legs)), edges_(std::move(edges)),
      base_dim_(base_dim) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const CurveVertex& a, const CurveVertex& b) { return a.id < b.id; });
}

const CurveVertex& TropicalCurve::vertex(const VertexId& id) const {
  for (const auto& v : vertices_)
    if (v.id == id) return v;
  throw Error("unknown vertex: " + id);
}

bool TropicalCurve::has_vertex(const VertexId& id) const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [&](const CurveVertex& v) { return v.id == id; });
}

void TropicalCurve::validate() const {
  if (vertices_.empty()) throw Error("curve has no vertices");
  std::set<VertexId> ids;
  for (const auto& v : vertices_) {
    if (!ids.insert(v.id).second) throw Error("duplicate vertex id: " + v.id);
    if (v.genus < 0) throw Error("negative genus on vertex " + v.id);
  }
  for (const auto& l : legs_)
    if (!ids.count(l.vertex)) throw Error("leg attached to unknown vertex: " + l.vertex);
  for (const auto& e : edges_) {
    if (!ids.count(e.from) || !ids.count(e.to)) throw Error("edge endpoint unknown");
    if (e.length_ray < 0 || e.length_ray >= base_dim_)
      throw Error("edge length coordinate out of range");
  }
  // connectivity
  std::map<VertexId, VertexId> parent;
  for (const auto& v : vertices_) parent[v.id] = v.id;
  std::function<VertexId(const VertexId&)> find = [&](const VertexId& x) -> VertexId {
    VertexId r = x;
    while (parent[r] != r) r = parent[r];
    return r;
  };
  for (const auto& e : edges_) parent[find(e.from)] = find(e.to);
  std::set<VertexId> roots;
  for (const auto& v : vertices_) roots.insert(find(v.id));
  if (roots.size() > 1) throw Error("curve is not connected");
}

int TropicalCurve::betti() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
}

int TropicalCurve::genus() const {
  int g = betti();
  for (const auto& v : vertices_) g += v.genus;
  return g;
}

int TropicalCurve::edge_valence(const VertexId& v) const {
  int n = 0;
  for (const auto& e : edges_) {
    if (e.from == v) ++n;
    if (e.to == v) ++n;
  }
  return n;
}

int TropicalCurve::legs_at(const VertexId& v) const {
  int n = 0;
  for (const auto& l : legs_)
    if (l.vertex == v) ++n;
  return n;
}

std::vector<LatticeVector> TropicalCurve::cycle_basis() const {
  // spanning tree by scanning edges in order
  std::map<VertexId, VertexId> parent;
  for (const auto& v : vertices_) parent[v.id] = v.id;
  std::function<VertexId(const VertexId&)> find = [&](const VertexId& x) -> VertexId {
    VertexId r = x;
    while (parent[r] != r) r = parent[r];
    return r;
  };
  std::vector<bool> in_tree(edges_.size(), false);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    VertexId a = find(edges_[i].from), b = find(edges_[i].to);
    if (a != b) {
      parent[a] = b;
      in_tree[i] = true;
    }
  }
  // adjacency restricted to tree edges
  std::map<VertexId, std::vector<std::pair<std::size_t, bool>>> adj;  // (edge, forward?)
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!in_tree[i]) continue;
    adj[edges_[i].from].push_back({i, true});
    adj[edges_[i].to].push_back({i, false});
  }
  // tree path as signed edge incidence
  auto tree_path = [&](const VertexId& from, const VertexId& to) {
    std::map<VertexId, std::pair<std::size_t, bool>> via;
    std::set<VertexId> seen{from};
    std::vector<VertexId> queue{from};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      VertexId cur = queue[h];
      if (cur == to) break;
      for (auto [ei, fwd] : adj[cur]) {
        VertexId nxt = fwd ? edges_[ei].to : edges_[ei].from;
        if (seen.insert(nxt).second) {
          via[nxt] = {ei, fwd};
          queue.push_back(nxt);
        }
      }
    }
    LatticeVector path(edges_.size());
    VertexId cur = to;
    while (cur != from) {
      auto [ei, fwd] = via.at(cur);
      path[ei] += fwd ? 1 : -1;
      cur = fwd ? edges_[ei].from : edges_[ei].to;
    }
    return path;
  };
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (in_tree[i]) continue;
    LatticeVector cyc = tree_path(edges_[i].to, edges_[i].from);
    cyc[i] += 1;  // close the cycle with the non-tree edge
    out.push_back(cyc);
  }
  return out;
}

Int Divisor::total() const {
  Int t = 0;
  for (const auto& [v, d] : multidegree) t += d;
  return t;
}

PLFunction pl_from_slopes(const TropicalCurve& g, const std::vector<Int>& slopes) {
  if (slopes.size() != g.edges().size()) throw Error("pl_from_slopes: one slope per edge");
  // cycle consistency must hold identically: for every cycle the signed sum of
  // slope * length vanishes coordinatewise on the base.
  for (const auto& cyc : g.cycle_basis()) {
    LatticeVector total(g.base_dim());
    for (std::size_t e = 0; e < slopes.size(); ++e)
      total[g.edges()[e].length_ray] += cyc[e] * slopes[e];
    if (!total.is_zero()) throw Error("pl_from_slopes: cycle consistency fails");
  }
  PLFunction out;
  out.slopes = slopes;
  out.base_vertex = g.vertices().front().id;
  out.values[out.base_vertex] = LatticeVector(g.base_dim());
  // propagate values across edges
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const CurveEdge& edge = g.edges()[e];
      LatticeVector step(g.base_dim());
      step[edge.length_ray] = slopes[e];
      if (out.values.count(edge.from) && !out.values.count(edge.to)) {
        out.values[edge.to] = out.values[edge.from] + step;
        grew = true;
      } else if (out.values.count(edge.to) && !out.values.count(edge.from)) {
        out.values[edge.from] = out.values[edge.to] - step;
        grew = true;
      }
    }
  }
  if (out.values.size() != g.vertices().size())
    throw Error("pl_from_slopes: curve is not connected");
  // normalize: when the values are totally ordered coordinatewise, shift the
  // minimum to zero
  auto leq = [](const LatticeVector& a, const LatticeVector& b) {
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  const LatticeVector* min = &out.values.begin()->second;
  bool ordered = true;
  for (const auto& [v, val] : out.values) {
    if (leq(val, *min)) min = &val;
  }
  for (const auto& [v, val] : out.values)
    if (!leq(*min, val)) ordered = false;
  if (ordered && !min->is_zero()) {
    LatticeVector shift = *min;
    for (auto& [v, val] : out.values) val = val - shift;
  }
  return out;
}

Divisor div_of(const PLFunction& alpha, const TropicalCurve& g) {
  Divisor d;
  for (const auto& v : g.vertices()) d.multidegree[v.id] = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const CurveEdge& edge = g.edges()[e];
    d.multidegree[edge.from] += alpha.slopes[e];
    d.multidegree[edge.to] -= alpha.slopes[e];
  }
  return d;
}

Divisor franchetta_divisor(const TropicalCurve& g, int k, const std::vector<Int>& a) {
  if (a.size() != g.legs().size()) throw Error("franchetta_divisor: one weight per marking");
  Int total = 0;
  for (const auto& w : a) total += w;
  if (total != Int(k) * (2 * g.genus() - 2))
    throw Error("franchetta_divisor: weights must sum to k(2g-2)");
  Divisor d;
  for (const auto& v : g.vertices())
    d.multidegree[v.id] = Int(k) * (2 * v.genus - 2 + g.edge_valence(v.id));
  for (std::size_t i = 0; i < g.legs().size(); ++i) d.multidegree[g.legs()[i].vertex] -= a[i];
  return d;
}

Contraction contract(const TropicalCurve& g, const std::vector<int>& face) {
  std::set<int> keep(face.begin(), face.end());
  std::map<int, int> new_coord;
  for (std::size_t k = 0; k < face.size(); ++k) new_coord[face[k]] = static_cast<int>(k);

  // merge endpoints of contracted edges
  std::map<VertexId, VertexId> parent;
  for (const auto& v : g.vertices()) parent[v.id] = v.id;
  std::function<VertexId(const VertexId&)> find = [&](const VertexId& x) -> VertexId {
    VertexId r = x;
    while (parent[r] != r) r = parent[r];
    return r;
  };
  auto unite = [&](const VertexId& a, const VertexId& b) {
    VertexId ra = find(a), rb = find(b);
    if (ra == rb) return;
    // keep the smaller id as representative
    if (ra < rb) parent[rb] = ra;
    else parent[ra] = rb;
  };
  int contracted_edges = 0;
  for (const auto& e : g.edges())
    if (!keep.count(e.length_ray)) {
      unite(e.from, e.to);
      ++contracted_edges;
    }

  Contraction out;
  for (const auto& v : g.vertices()) out.vertex_image[v.id] = find(v.id);

  // genus of merged classes: sum of genera plus absorbed cycle rank
  std::map<VertexId, int> genus, class_size, internal_edges;
  for (const auto& v : g.vertices()) {
    genus[find(v.id)] += v.genus;
    class_size[find(v.id)] += 1;
  }
  for (const auto& e : g.edges())
    if (!keep.count(e.length_ray)) internal_edges[find(e.from)] += 1;
  std::vector<CurveVertex> vertices;
  for (const auto& [rep, gsum] : genus) {
    int absorbed = internal_edges[rep] - (class_size[rep] - 1);
    vertices.push_back({rep, gsum + absorbed});
  }
  std::vector<CurveLeg> legs;
  for (const auto& l : g.legs()) legs.push_back({find(l.vertex), l.marking});
  std::vector<CurveEdge> edges;
  out.edge_image.assign(g.edges().size(), -1);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const CurveEdge& edge = g.edges()[e];
    if (!keep.count(edge.length_ray)) continue;
    out.edge_image[e] = static_cast<int>(edges.size());
    edges.push_back({find(edge.from), find(edge.to), new_coord.at(edge.length_ray)});
  }
  out.curve = TropicalCurve(vertices, legs, edges, static_cast<int>(face.size()));
  return out;
}

PLFunction extend_pl(const TropicalCurve& g,
                     const std::map<int, std::map<VertexId, Int>>& ray_values) {
  for (const auto& [ray, vals] : ray_values) {
    if (ray < 0 || ray >= g.base_dim()) throw Error("extend_pl: ray index out of range");
    Contraction c = contract(g, {ray});
    for (const auto& v : c.curve.vertices())
      if (!vals.count(v.id))
        throw Error("extend_pl: missing value on vertex " + v.id + " of the contraction to ray " +
                    std::to_string(ray));
    for (const auto& [vid, val] : vals)
      if (!c.curve.has_vertex(vid))
        throw Error("extend_pl: value on " + vid + " which is not a vertex of the contraction");
  }
  // interpolation: the value at v is the sum over rays of the input value at
  // the specialization of v
  std::map<VertexId, LatticeVector> values;
  for (const auto& v : g.vertices()) values[v.id] = LatticeVector(g.base_dim());
  for (const auto& [ray, vals] : ray_values) {
    Contraction c = contract(g, {ray});
    for (const auto& v : g.vertices())
      values[v.id][ray] = vals.at(c.vertex_image.at(v.id));
  }
  // slopes from value differences
  std::vector<Int> slopes;
  for (const auto& e : g.edges()) {
    LatticeVector diff = values.at(e.to) - values.at(e.from);
    for (std::size_t i = 0; i < diff.dim(); ++i)
      if (static_cast<int>(i) != e.length_ray && diff[i] != 0)
        throw Error("extend_pl: interpolated values jump across a foreign coordinate");
    slopes.push_back(diff[e.length_ray]);
  }
  PLFunction out = pl_from_slopes(g, slopes);
  out.values = values;  // keep the interpolated anchoring
  return out;
}

Divisor push_divisor(const Contraction& c, const Divisor& d) {
  Divisor out;
  for (const auto& v : c.curve.vertices()) out.multidegree[v.id] = 0;
  for (const auto& [vid, deg] : d.multidegree) out.multidegree[c.vertex_image.at(vid)] += deg;
  return out;
}

}  // namespace logchow
