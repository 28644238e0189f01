#include "logchow/cone_complex.hpp"

#include <algorithm>
#include <sstream>

namespace logchow {

IntegerMatrix Morphism::embedding_matrix(int target_dim) const {
  IntegerMatrix m(target_dim, assignment.size());
  for (std::size_t k = 0; k < assignment.size(); ++k) m(assignment[k], k) = 1;
  return m;
}

ConeComplex::ConeComplex(std::vector<Cone> cones, std::vector<FaceMap> maps)
    : face_maps_(std::move(maps)) {
  for (auto& c : cones) {
    if (cones_.count(c.id)) throw Error("duplicate cone id: " + c.id);
    cones_.emplace(c.id, std::move(c));
  }
}

const Cone& ConeComplex::cone(const ConeId& id) const {
  auto it = cones_.find(id);
  if (it == cones_.end()) throw Error("unknown cone id: " + id);
  return it->second;
}

std::set<Label> ConeComplex::divisor_labels() const {
  std::set<Label> out;
  for (const auto& [id, c] : cones_) out.insert(c.ray_labels.begin(), c.ray_labels.end());
  return out;
}

void ConeComplex::build_category() const {
  if (category_built_) return;
  category_.clear();
  for (const auto& [id, c] : cones_) {
    Morphism ident{id, id, {}};
    ident.assignment.resize(c.dim);
    for (int i = 0; i < c.dim; ++i) ident.assignment[i] = i;
    category_.insert(ident);
  }
  for (const auto& f : face_maps_) category_.insert({f.source, f.target, f.ray_assignment});
  // close under composition
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Morphism> current(category_.begin(), category_.end());
    for (const auto& m1 : current)
      for (const auto& m2 : current) {
        if (m1.target != m2.source) continue;
        Morphism comp{m1.source, m2.target, {}};
        comp.assignment.reserve(m1.assignment.size());
        for (int k : m1.assignment) comp.assignment.push_back(m2.assignment[k]);
        if (category_.insert(comp).second) grew = true;
      }
  }
  category_built_ = true;
}

const std::set<Morphism>& ConeComplex::morphisms() const {
  build_category();
  return category_;
}

std::vector<Morphism> ConeComplex::morphisms_into(const ConeId& target) const {
  std::vector<Morphism> out;
  for (const auto& m : morphisms())
    if (m.target == target) out.push_back(m);
  return out;
}

std::vector<Morphism> ConeComplex::morphisms_from(const ConeId& source) const {
  std::vector<Morphism> out;
  for (const auto& m : morphisms())
    if (m.source == source) out.push_back(m);
  return out;
}

void ConeComplex::validate() const {
  if (cones_.empty()) throw Error("complex has no cones");
  bool has_zero = false;
  for (const auto& [id, c] : cones_) {
    if (c.dim < 0) throw Error("cone " + id + " has negative dimension");
    if (static_cast<int>(c.ray_labels.size()) != c.dim)
      throw Error("cone " + id + ": ray_labels length differs from dim");
    if (c.dim == 0) has_zero = true;
  }
  if (!has_zero) throw Error("missing zero cone");

  for (const auto& f : face_maps_) {
    if (!has_cone(f.source)) throw Error("face map from unknown cone: " + f.source);
    if (!has_cone(f.target)) throw Error("face map to unknown cone: " + f.target);
    const Cone& s = cone(f.source);
    const Cone& t = cone(f.target);
    if (static_cast<int>(f.ray_assignment.size()) != s.dim)
      throw Error("face map " + f.source + " -> " + f.target + ": assignment length mismatch");
    std::set<int> seen;
    for (std::size_t k = 0; k < f.ray_assignment.size(); ++k) {
      int a = f.ray_assignment[k];
      if (a < 0 || a >= t.dim)
        throw Error("face map " + f.source + " -> " + f.target + ": ray index out of range");
      if (!seen.insert(a).second)
        throw Error("face map " + f.source + " -> " + f.target + " is not injective");
      if (s.ray_labels[k] != t.ray_labels[a])
        throw Error("face map " + f.source + " -> " + f.target + ": label mismatch on ray " +
                    std::to_string(k) + " (" + s.ray_labels[k] + " vs " + t.ray_labels[a] + ")");
    }
  }

  // Every face of every cone must be realized by a chain of face maps.
  for (const auto& [id, c] : cones_) {
    std::set<std::set<int>> realized;
    for (const auto& m : morphisms_into(id)) realized.insert(m.image());
    for (unsigned mask = 0; mask < (1u << c.dim); ++mask) {
      std::set<int> want;
      for (int i = 0; i < c.dim; ++i)
        if (mask & (1u << i)) want.insert(i);
      if (!realized.count(want)) {
        std::ostringstream os;
        os << "cone " << id << ": face {";
        bool first = true;
        for (int i : want) {
          os << (first ? "" : ",") << i;
          first = false;
        }
        os << "} not realized by any face-map chain";
        throw Error(os.str());
      }
    }
  }
}

std::vector<ConeId> ConeComplex::maximal_cones() const {
  std::vector<ConeId> out;
  for (const auto& [id, c] : cones_) {
    bool maximal = true;
    for (const auto& m : morphisms_from(id))
      if (cone(m.target).dim > c.dim) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(id);
  }
  return out;
}

namespace {

// Union-find over cone ids.
struct DisjointSets {
  std::map<ConeId, ConeId> parent;
  void add(const ConeId& x) {
    if (!parent.count(x)) parent[x] = x;
  }
  ConeId find(const ConeId& x) {
    ConeId r = x;
    while (parent[r] != r) r = parent[r];
    ConeId c = x;
    while (parent[c] != r) {
      ConeId n = parent[c];
      parent[c] = r;
      c = n;
    }
    return r;
  }
  void unite(const ConeId& a, const ConeId& b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<ConeId>> group_components(DisjointSets& ds) {
  std::map<ConeId, std::vector<ConeId>> groups;
  for (const auto& [x, p] : ds.parent) groups[ds.find(x)].push_back(x);
  std::vector<std::vector<ConeId>> out;
  for (auto& [r, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool multiset_contains(const std::vector<Label>& labels, const std::vector<Label>& J) {
  std::map<Label, int> have;
  for (const auto& l : labels) ++have[l];
  std::map<Label, int> want;
  for (const auto& l : J) ++want[l];
  for (const auto& [l, n] : want)
    if (have[l] < n) return false;
  return true;
}

}  // namespace

std::vector<std::vector<ConeId>> ConeComplex::components() const {
  DisjointSets ds;
  for (const auto& [id, c] : cones_) ds.add(id);
  for (const auto& f : face_maps_) ds.unite(f.source, f.target);
  return group_components(ds);
}

StratumReport ConeComplex::strata(const std::vector<Label>& J) const {
  StratumReport rep;
  rep.label_subset = J;
  std::set<ConeId> member;
  for (const auto& [id, c] : cones_)
    if (multiset_contains(c.ray_labels, J)) member.insert(id);
  DisjointSets ds;
  for (const auto& id : member) ds.add(id);
  // Label multisets grow along face maps, so the stratum is upward closed and
  // chains through it stay inside it; the given maps suffice for connectivity.
  for (const auto& f : face_maps_)
    if (member.count(f.source) && member.count(f.target)) ds.unite(f.source, f.target);
  rep.components = group_components(ds);
  return rep;
}

SimplicityReport ConeComplex::is_simple() const {
  // (a) pairwise-distinct ray labels on every cone
  for (const auto& [id, c] : cones_) {
    std::set<Label> seen;
    for (const auto& l : c.ray_labels)
      if (!seen.insert(l).second) return {false, "cone " + id + " repeats label " + l};
  }
  // (a') at most one face-map chain onto each face of each cone
  for (const auto& [id, c] : cones_) {
    std::map<std::set<int>, int> count;
    for (const auto& m : morphisms_into(id)) ++count[m.image()];
    for (const auto& [img, n] : count)
      if (n > 1) {
        std::ostringstream os;
        os << "cone " << id << ": face {";
        bool first = true;
        for (int i : img) {
          os << (first ? "" : ",") << i;
          first = false;
        }
        os << "} is hit by " << n << " face-map chains";
        return {false, os.str()};
      }
  }
  // (b) components of every closed stratum inject into components of the complex
  auto comps = components();
  std::map<ConeId, int> comp_of;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& id : comps[i]) comp_of[id] = static_cast<int>(i);

  std::set<std::vector<Label>> candidates;
  for (const auto& [id, c] : cones_) {
    int d = c.dim;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      std::vector<Label> J;
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) J.push_back(c.ray_labels[i]);
      std::sort(J.begin(), J.end());
      J.erase(std::unique(J.begin(), J.end()), J.end());
      candidates.insert(J);
    }
  }
  for (const auto& J : candidates) {
    StratumReport rep = strata(J);
    std::set<int> hit;
    for (const auto& comp : rep.components) {
      int target = comp_of.at(comp.front());
      if (!hit.insert(target).second) {
        std::ostringstream os;
        os << "stratum {";
        for (std::size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
        os << "} has disconnected components inside one component of the complex";
        return {false, os.str()};
      }
    }
  }
  return {true, ""};
}

}  // namespace logchow
