#pragma once

// Shared model-building helpers for the unit and acceptance suites.

#include <random>

#include "logchow/cone_complex.hpp"
#include "logchow/toric.hpp"
#include "logchow/tropical.hpp"

namespace fixtures {

using namespace logchow;

// Just the origin.
inline ConeComplex zero_complex() { return ConeComplex({{"o", 0, {}}}, {}); }

// One 2-cone whose two rays are glued to a single ray carrying label E: the
// chart of a divisor with one node.
inline ConeComplex nodal_cubic() {
  std::vector<Cone> cones = {{"o", 0, {}}, {"rho", 1, {"E"}}, {"sigma", 2, {"E", "E"}}};
  std::vector<FaceMap> maps = {
      {"o", "rho", {}}, {"rho", "sigma", {0}}, {"rho", "sigma", {1}}};
  return ConeComplex(cones, maps);
}

// One smooth 2-cone with distinctly labeled rays.
inline ConeComplex coordinate_cross(const std::string& a = "A", const std::string& b = "B") {
  std::vector<Cone> cones = {{"o", 0, {}}, {"ra", 1, {a}}, {"rb", 1, {b}}, {"sigma", 2, {a, b}}};
  std::vector<FaceMap> maps = {{"o", "ra", {}},
                               {"o", "rb", {}},
                               {"ra", "sigma", {0}},
                               {"rb", "sigma", {1}}};
  return ConeComplex(cones, maps);
}

// Complex built from facets given as label sets: one cone per distinct label
// subset, faces glued by label positions. Always simple (each stratum has an
// apex cone).
inline ConeComplex from_facets(const std::vector<std::vector<std::string>>& facets) {
  std::set<std::vector<std::string>> subsets;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    unsigned n = static_cast<unsigned>(f.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::string> s;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      subsets.insert(s);
    }
  }
  auto id_of = [](const std::vector<std::string>& s) {
    std::string id = "c(";
    for (std::size_t i = 0; i < s.size(); ++i) id += (i ? "," : "") + s[i];
    return id + ")";
  };
  std::vector<Cone> cones;
  for (const auto& s : subsets)
    cones.push_back({id_of(s), static_cast<int>(s.size()), s});
  std::vector<FaceMap> maps;
  for (const auto& a : subsets)
    for (const auto& b : subsets) {
      if (a.size() + 1 != b.size()) continue;
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
      FaceMap m{id_of(a), id_of(b), {}};
      for (const auto& l : a)
        m.ray_assignment.push_back(
            static_cast<int>(std::find(b.begin(), b.end(), l) - b.begin()));
      maps.push_back(m);
    }
  return ConeComplex(cones, maps);
}

// Random simple complex: a few facets over a small label pool.
inline ConeComplex random_simple_complex(std::mt19937& rng, int max_facets = 4, int max_dim = 3) {
  static const std::vector<std::string> pool = {"A", "B", "C", "D", "E", "F"};
  std::uniform_int_distribution<int> nf(1, max_facets);
  std::uniform_int_distribution<int> nd(1, max_dim);
  std::vector<std::vector<std::string>> facets;
  int count = nf(rng);
  for (int i = 0; i < count; ++i) {
    int d = nd(rng);
    std::vector<std::string> labels = pool;
    std::shuffle(labels.begin(), labels.end(), rng);
    labels.resize(d);
    facets.push_back(labels);
  }
  return from_facets(facets);
}

// Two vertices joined by two edges with independent lengths.
inline TropicalCurve twogon(int genus_u = 1, int genus_v = 0) {
  return TropicalCurve({{"u", genus_u}, {"v", genus_v}}, {},
                       {{"u", "v", 0}, {"u", "v", 1}}, 2);
}

inline TropicalCurve threecycle() {
  return TropicalCurve({{"a", 0}, {"b", 0}, {"c", 0}}, {},
                       {{"a", "b", 0}, {"b", "c", 1}, {"c", "a", 2}}, 3);
}

inline Divisor divisor(const TropicalCurve& g, std::vector<int> degrees) {
  Divisor d;
  for (std::size_t i = 0; i < g.vertices().size(); ++i)
    d.multidegree[g.vertices()[i].id] = degrees.at(i);
  return d;
}

// Random connected curve over a small base.
inline TropicalCurve random_curve(std::mt19937& rng, int max_edges = 5, int max_base = 3) {
  std::uniform_int_distribution<int> nv(1, 4);
  int v = nv(rng);
  std::vector<CurveVertex> vertices;
  for (int i = 0; i < v; ++i)
    vertices.push_back({"v" + std::to_string(i), std::uniform_int_distribution<int>(0, 2)(rng)});
  int base = std::uniform_int_distribution<int>(1, max_base)(rng);
  std::vector<CurveEdge> edges;
  // spanning tree first, then extras
  for (int i = 1; i < v; ++i) {
    int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    edges.push_back({"v" + std::to_string(j), "v" + std::to_string(i),
                     std::uniform_int_distribution<int>(0, base - 1)(rng)});
  }
  int extra = std::uniform_int_distribution<int>(0, max_edges - (v - 1))(rng);
  for (int k = 0; k < extra; ++k) {
    int i = std::uniform_int_distribution<int>(0, v - 1)(rng);
    int j = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.push_back({"v" + std::to_string(i), "v" + std::to_string(j),
                     std::uniform_int_distribution<int>(0, base - 1)(rng)});
  }
  std::vector<CurveLeg> legs;
  int nlegs = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int k = 0; k < nlegs; ++k)
    legs.push_back({"v" + std::to_string(std::uniform_int_distribution<int>(0, v - 1)(rng)), k + 1});
  return TropicalCurve(vertices, legs, edges, base);
}

// Fan of the plane blown up in the cone spanned by the first two rays.
inline CompleteFan blown_up_plane() {
  return stellar_fan(CompleteFan::projective_plane(), LatticeVector{1, 1});
}

}  // namespace fixtures
