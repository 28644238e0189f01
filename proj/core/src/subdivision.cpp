#include "logchow/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "logchow/polyhedra.hpp"

namespace logchow {

namespace {

std::set<int> vector_support(const LatticeVector& v) {
  std::set<int> s;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v[i] != 0) s.insert(static_cast<int>(i));
  return s;
}

// Push a vector along a face map: target[a_k] = source[k].
LatticeVector push_vector(const LatticeVector& v, const Morphism& m, int target_dim) {
  LatticeVector out(target_dim);
  for (std::size_t k = 0; k < m.assignment.size(); ++k) out[m.assignment[k]] = v[k];
  return out;
}

std::string vector_key(const LatticeVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

LocalFan LocalFan::trivial(int dim) {
  LocalFan f;
  f.dim = dim;
  for (int i = 0; i < dim; ++i) {
    LatticeVector e(static_cast<std::size_t>(dim));
    e[i] = 1;
    f.rays.push_back(e);
  }
  std::vector<int> all(dim);
  std::iota(all.begin(), all.end(), 0);
  f.cones.push_back(all);
  f.normalize();
  return f;
}

bool LocalFan::is_trivial() const { return *this == trivial(dim); }

void LocalFan::normalize() {
  // drop unused rays, sort rays lexicographically, remap cone indices
  std::set<int> used;
  for (const auto& c : cones) used.insert(c.begin(), c.end());
  std::vector<LatticeVector> kept;
  std::map<int, LatticeVector> old_ray;
  for (int i : used) old_ray[i] = rays[i];
  for (const auto& [i, r] : old_ray) kept.push_back(r);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < kept.size(); ++i) index[vector_key(kept[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> newcones;
  for (const auto& c : cones) {
    std::vector<int> nc;
    for (int i : c) nc.push_back(index.at(vector_key(rays[i])));
    std::sort(nc.begin(), nc.end());
    nc.erase(std::unique(nc.begin(), nc.end()), nc.end());
    newcones.push_back(nc);
  }
  std::sort(newcones.begin(), newcones.end());
  newcones.erase(std::unique(newcones.begin(), newcones.end()), newcones.end());
  rays = std::move(kept);
  cones = std::move(newcones);
}

std::vector<LatticeVector> LocalFan::cone_rays(const std::vector<int>& c) const {
  std::vector<LatticeVector> out;
  out.reserve(c.size());
  for (int i : c) out.push_back(rays[i]);
  return out;
}

std::optional<std::size_t> LocalFan::find_cone(const LatticeVector& x) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cone_contains(cone_rays(cones[i]), dim, x)) return i;
  return std::nullopt;
}

void LocalFan::stellar_subdivide(const LatticeVector& w) {
  if (static_cast<int>(w.dim()) != dim) throw Error("stellar_subdivide: dimension mismatch");
  std::vector<std::vector<LatticeVector>> out;
  for (const auto& c : cones) {
    auto cr = cone_rays(c);
    if (!cone_contains(cr, dim, w)) {
      out.push_back(cr);
      continue;
    }
    // coordinates of w in the simplicial cone
    IntegerMatrix a(dim, cr.size());
    for (std::size_t j = 0; j < cr.size(); ++j)
      for (int i = 0; i < dim; ++i) a(i, j) = cr[j][i];
    std::vector<Rational> b(dim);
    for (int i = 0; i < dim; ++i) b[i] = Rational(w[i]);
    auto lam = solve_rational(a, b);
    if (!lam) throw Error("stellar_subdivide: inconsistent membership");
    std::vector<std::size_t> supp;
    for (std::size_t j = 0; j < lam->size(); ++j)
      if ((*lam)[j] != 0) supp.push_back(j);
    if (supp.size() == 1) {
      out.push_back(cr);  // w is (a multiple of) an existing ray
      continue;
    }
    for (std::size_t j : supp) {
      std::vector<LatticeVector> piece;
      for (std::size_t t = 0; t < cr.size(); ++t)
        if (t != j) piece.push_back(cr[t]);
      piece.push_back(w);
      out.push_back(piece);
    }
  }
  // rebuild ray/index structure
  rays.clear();
  cones.clear();
  std::map<std::string, int> index;
  for (const auto& piece : out) {
    std::vector<int> c;
    for (const auto& r : piece) {
      auto key = vector_key(r);
      auto it = index.find(key);
      if (it == index.end()) {
        index[key] = static_cast<int>(rays.size());
        rays.push_back(r);
        c.push_back(static_cast<int>(rays.size() - 1));
      } else {
        c.push_back(it->second);
      }
    }
    cones.push_back(c);
  }
  normalize();
}

LocalFan LocalFan::restrict_to_face(const std::vector<int>& face) const {
  std::set<int> s(face.begin(), face.end());
  LocalFan out;
  out.dim = static_cast<int>(face.size());
  std::set<std::vector<std::vector<Int>>> seen;
  for (const auto& c : cones) {
    std::vector<LatticeVector> sub;
    for (int i : c) {
      auto supp = vector_support(rays[i]);
      if (std::includes(s.begin(), s.end(), supp.begin(), supp.end())) sub.push_back(rays[i]);
    }
    if (sub.size() != face.size()) continue;
    // rewrite in face coordinates: out[k] = v[face[k]]
    std::vector<int> idxs;
    for (const auto& v : sub) {
      LatticeVector w(face.size());
      for (std::size_t k = 0; k < face.size(); ++k) w[k] = v[face[k]];
      auto pos = std::find(out.rays.begin(), out.rays.end(), w);
      if (pos == out.rays.end()) {
        out.rays.push_back(w);
        idxs.push_back(static_cast<int>(out.rays.size() - 1));
      } else {
        idxs.push_back(static_cast<int>(pos - out.rays.begin()));
      }
    }
    std::sort(idxs.begin(), idxs.end());
    out.cones.push_back(idxs);
  }
  if (face.empty()) out.cones.push_back({});
  out.normalize();
  return out;
}

std::vector<std::vector<int>> LocalFan::all_faces() const {
  std::set<std::vector<int>> faces;
  for (const auto& c : cones) {
    unsigned n = static_cast<unsigned>(c.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> f;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(c[i]);
      faces.insert(f);
    }
  }
  return {faces.begin(), faces.end()};
}

bool LocalFan::all_cones_unimodular() const {
  for (const auto& c : cones)
    if (!is_unimodular_cone(cone_rays(c))) return false;
  return true;
}

void LocalFan::validate(bool require_smooth) const {
  if (dim == 0) {
    if (!rays.empty() || cones != std::vector<std::vector<int>>{{}})
      throw Error("local fan of a point must be trivial");
    return;
  }
  for (const auto& r : rays) {
    if (static_cast<int>(r.dim()) != dim) throw Error("local fan: ray dimension mismatch");
    if (r.is_zero()) throw Error("local fan: zero ray");
    if (r != r.primitive()) throw Error("local fan: ray not primitive");
    for (std::size_t i = 0; i < r.dim(); ++i)
      if (r[i] < 0) throw Error("local fan: ray outside the standard cone");
  }
  if (cones.empty()) throw Error("local fan: no maximal cones");
  std::map<std::vector<std::string>, int> facet_count;
  for (const auto& c : cones) {
    if (static_cast<int>(c.size()) != dim)
      throw Error("local fan: maximal cone is not full-dimensional");
    auto cr = cone_rays(c);
    if (require_smooth && !is_unimodular_cone(cr)) throw Error("local fan: non-smooth cone");
    if (!require_smooth && cone_dim(cr, dim) != dim)
      throw Error("local fan: degenerate maximal cone");
    for (int drop = 0; drop < dim; ++drop) {
      std::vector<std::string> key;
      for (int t = 0; t < dim; ++t)
        if (t != drop) key.push_back(vector_key(cr[t]));
      std::sort(key.begin(), key.end());
      ++facet_count[key];
    }
  }
  for (const auto& c : cones) {
    auto cr = cone_rays(c);
    for (int drop = 0; drop < dim; ++drop) {
      std::vector<std::string> key;
      std::vector<LatticeVector> facet;
      for (int t = 0; t < dim; ++t)
        if (t != drop) {
          key.push_back(vector_key(cr[t]));
          facet.push_back(cr[t]);
        }
      std::sort(key.begin(), key.end());
      bool boundary = false;
      for (int j = 0; j < dim && !boundary; ++j) {
        bool all_zero = true;
        for (const auto& v : facet)
          if (v[j] != 0) all_zero = false;
        if (all_zero) boundary = true;
      }
      int n = facet_count.at(key);
      if (boundary && n != 1)
        throw Error("local fan: cones overlap along a boundary facet");
      if (!boundary && n != 2)
        throw Error(n == 1 ? "local fan: gap along an interior facet"
                           : "local fan: more than two cones share a facet");
    }
  }
}

LocalFan refine_fans(const LocalFan& a, const LocalFan& b) {
  if (a.dim != b.dim) throw Error("refine_fans: dimension mismatch");
  if (a.is_trivial()) return b;
  if (b.is_trivial()) return a;
  LocalFan out;
  out.dim = a.dim;
  std::map<std::string, int> index;
  auto add_cone = [&](const std::vector<LatticeVector>& piece) {
    std::vector<int> c;
    for (const auto& r : piece) {
      auto key = vector_key(r);
      auto it = index.find(key);
      if (it == index.end()) {
        index[key] = static_cast<int>(out.rays.size());
        out.rays.push_back(r);
        c.push_back(index[key]);
      } else {
        c.push_back(it->second);
      }
    }
    out.cones.push_back(c);
  };
  for (const auto& ca : a.cones)
    for (const auto& cb : b.cones) {
      auto inter = cone_intersection(a.cone_rays(ca), b.cone_rays(cb), a.dim);
      if (cone_dim(inter, a.dim) != a.dim) continue;
      for (const auto& piece : triangulate_cone(inter, a.dim)) add_cone(piece);
    }
  out.normalize();
  return out;
}

LocalFan product_extend(const LocalFan& f, const Morphism& m, int target_dim) {
  LocalFan out;
  out.dim = target_dim;
  std::set<int> image(m.assignment.begin(), m.assignment.end());
  std::vector<LatticeVector> complement;
  for (int j = 0; j < target_dim; ++j)
    if (!image.count(j)) {
      LatticeVector e(static_cast<std::size_t>(target_dim));
      e[j] = 1;
      complement.push_back(e);
    }
  for (const auto& c : f.cones) {
    std::vector<LatticeVector> piece;
    for (int i : c) piece.push_back(push_vector(f.rays[i], m, target_dim));
    for (const auto& e : complement) piece.push_back(e);
    std::vector<int> idxs;
    for (const auto& r : piece) {
      auto pos = std::find(out.rays.begin(), out.rays.end(), r);
      if (pos == out.rays.end()) {
        out.rays.push_back(r);
        idxs.push_back(static_cast<int>(out.rays.size() - 1));
      } else {
        idxs.push_back(static_cast<int>(pos - out.rays.begin()));
      }
    }
    out.cones.push_back(idxs);
  }
  out.normalize();
  return out;
}

Subdivision::Subdivision(ConeComplex base, std::map<ConeId, LocalFan> fans)
    : base_(std::move(base)), fans_(std::move(fans)) {
  for (const auto& [id, c] : base_.cones()) {
    auto it = fans_.find(id);
    if (it == fans_.end()) throw Error("subdivision: no fan for cone " + id);
    if (it->second.dim != c.dim) throw Error("subdivision: fan dimension mismatch on " + id);
  }
  build();
}

namespace {

bool full_support(const std::vector<LatticeVector>& rays, int dim) {
  std::set<int> s;
  for (const auto& r : rays) {
    auto t = vector_support(r);
    s.insert(t.begin(), t.end());
  }
  return static_cast<int>(s.size()) == dim;
}

}  // namespace

void Subdivision::build() {
  // Fan-family compatibility along every face map.
  for (const auto& m : base_.morphisms()) {
    LocalFan restricted = fans_.at(m.target).restrict_to_face(m.assignment);
    if (!(restricted == fans_.at(m.source)))
      throw Error("subdivision: fans incompatible along face map " + m.source + " -> " + m.target);
  }

  carrier_.clear();
  embedding_.clear();
  object_of_.clear();

  struct Obj {
    ConeId base;
    std::vector<int> fan_cone;
    ConeId id;
  };
  std::vector<Obj> objects;
  for (const auto& [cid, c] : base_.cones()) {
    const LocalFan& f = fans_.at(cid);
    for (const auto& face : f.all_faces()) {
      auto rs = f.cone_rays(face);
      if (!full_support(rs, c.dim)) continue;
      std::ostringstream os;
      os << cid << "/<";
      for (const auto& r : rs) os << vector_key(r);
      os << ">";
      Obj o{cid, face, os.str()};
      object_of_[cid][face] = o.id;
      carrier_[o.id] = cid;
      IntegerMatrix emb(c.dim, face.size());
      for (std::size_t j = 0; j < face.size(); ++j)
        for (int i = 0; i < c.dim; ++i) emb(i, j) = rs[j][i];
      embedding_[o.id] = emb;
      objects.push_back(std::move(o));
    }
  }

  // Label of a full-support ray object.
  auto own_label = [&](const ConeId& cid, const LatticeVector& v) -> Label {
    const Cone& c = base_.cone(cid);
    if (c.dim == 1) return c.ray_labels[0];
    return "exc:" + cid + ":" + vector_key(v);
  };
  // Label of an arbitrary fan ray of cone cid (possibly supported on a face).
  std::function<Label(const ConeId&, const LatticeVector&)> ray_label =
      [&](const ConeId& cid, const LatticeVector& v) -> Label {
    const Cone& c = base_.cone(cid);
    auto supp = vector_support(v);
    if (static_cast<int>(supp.size()) == c.dim) return own_label(cid, v);
    for (const auto& m : base_.morphisms_into(cid)) {
      if (m.image() != supp) continue;
      LatticeVector v0(m.assignment.size());
      for (std::size_t k = 0; k < m.assignment.size(); ++k) v0[k] = v[m.assignment[k]];
      return ray_label(m.source, v0);
    }
    throw Error("subdivision: ray " + vector_key(v) + " of " + cid + " has no face carrier");
  };

  std::vector<Cone> refined_cones;
  for (const auto& o : objects) {
    Cone rc;
    rc.id = o.id;
    rc.dim = static_cast<int>(o.fan_cone.size());
    const LocalFan& f = fans_.at(o.base);
    for (int i : o.fan_cone) rc.ray_labels.push_back(ray_label(o.base, f.rays[i]));
    refined_cones.push_back(std::move(rc));
  }

  // Face maps of the refined complex from base morphisms.
  std::set<Morphism> refined_maps;
  for (const auto& m : base_.morphisms()) {
    const LocalFan& fs = fans_.at(m.source);
    const LocalFan& ft = fans_.at(m.target);
    int tdim = base_.cone(m.target).dim;
    auto src_objects = object_of_.find(m.source);
    if (src_objects == object_of_.end()) continue;
    for (const auto& [fc, oid] : src_objects->second) {
      // push each ray; must be a ray of the target fan
      std::vector<int> mapped;
      bool ok = true;
      for (int i : fc) {
        LatticeVector v = push_vector(fs.rays[i], m, tdim);
        auto pos = std::find(ft.rays.begin(), ft.rays.end(), v);
        if (pos == ft.rays.end()) {
          ok = false;
          break;
        }
        mapped.push_back(static_cast<int>(pos - ft.rays.begin()));
      }
      if (!ok) throw Error("subdivision: incompatible fan family along " + m.source);
      std::set<int> mapped_set(mapped.begin(), mapped.end());
      for (const auto& [tc, tid] : object_of_.at(m.target)) {
        std::set<int> tset(tc.begin(), tc.end());
        if (!std::includes(tset.begin(), tset.end(), mapped_set.begin(), mapped_set.end()))
          continue;
        Morphism rm{oid, tid, {}};
        for (int v : mapped) {
          auto pos = std::find(tc.begin(), tc.end(), v);
          rm.assignment.push_back(static_cast<int>(pos - tc.begin()));
        }
        refined_maps.insert(rm);
      }
    }
  }
  std::vector<FaceMap> maps;
  for (const auto& m : refined_maps) {
    if (m.source == m.target) {
      // skip identities
      bool ident = true;
      for (std::size_t k = 0; k < m.assignment.size(); ++k)
        if (m.assignment[k] != static_cast<int>(k)) ident = false;
      if (ident) continue;
    }
    maps.push_back({m.source, m.target, m.assignment});
  }
  refined_ = ConeComplex(refined_cones, maps);
}

const ConeId& Subdivision::carrier(const ConeId& refined_cone) const {
  auto it = carrier_.find(refined_cone);
  if (it == carrier_.end()) throw Error("unknown refined cone: " + refined_cone);
  return it->second;
}

const IntegerMatrix& Subdivision::embedding(const ConeId& refined_cone) const {
  auto it = embedding_.find(refined_cone);
  if (it == embedding_.end()) throw Error("unknown refined cone: " + refined_cone);
  return it->second;
}

std::optional<ConeId> Subdivision::object_for(const ConeId& base_cone,
                                              const std::vector<int>& fan_cone) const {
  auto it = object_of_.find(base_cone);
  if (it == object_of_.end()) return std::nullopt;
  std::vector<int> key = fan_cone;
  std::sort(key.begin(), key.end());
  auto jt = it->second.find(key);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

bool Subdivision::is_identity() const {
  for (const auto& [id, f] : fans_)
    if (!f.is_trivial()) return false;
  return true;
}

void Subdivision::validate(bool require_smooth) const {
  for (const auto& [id, f] : fans_) f.validate(require_smooth);
  for (const auto& m : base_.morphisms()) {
    LocalFan restricted = fans_.at(m.target).restrict_to_face(m.assignment);
    if (!(restricted == fans_.at(m.source)))
      throw Error("subdivision: fans incompatible along face map " + m.source + " -> " + m.target);
  }
  refined_.validate();
}

Subdivision identity_subdivision(const ConeComplex& c) {
  std::map<ConeId, LocalFan> fans;
  for (const auto& [id, cone] : c.cones()) fans[id] = LocalFan::trivial(cone.dim);
  return Subdivision(c, std::move(fans));
}

namespace {

// Walk a vector supported on a proper face down to its minimal carrier cone.
std::pair<ConeId, LatticeVector> carrierize(const ConeComplex& base, ConeId cid, LatticeVector w) {
  while (true) {
    auto supp = vector_support(w);
    if (static_cast<int>(supp.size()) == base.cone(cid).dim) return {cid, w};
    bool moved = false;
    for (const auto& m : base.morphisms_into(cid)) {
      if (m.image() != supp) continue;
      LatticeVector w0(m.assignment.size());
      for (std::size_t k = 0; k < m.assignment.size(); ++k) w0[k] = w[m.assignment[k]];
      cid = m.source;
      w = w0;
      moved = true;
      break;
    }
    if (!moved) throw Error("carrierize: face not realized in the complex");
  }
}

void family_stellar(const ConeComplex& base, std::map<ConeId, LocalFan>& fans,
                    const ConeId& carrier, const LatticeVector& w) {
  for (const auto& m : base.morphisms_from(carrier)) {
    LatticeVector wc = push_vector(w, m, base.cone(m.target).dim);
    fans.at(m.target).stellar_subdivide(wc);
  }
}

void resolve_smooth(const ConeComplex& base, std::map<ConeId, LocalFan>& fans) {
  const int cap = 500;
  for (int iter = 0; iter < cap; ++iter) {
    bool found = false;
    for (const auto& [cid, cone] : base.cones()) {
      const LocalFan& f = fans.at(cid);
      for (const auto& c : f.cones) {
        auto cr = f.cone_rays(c);
        if (is_unimodular_cone(cr)) continue;
        auto w = box_point(cr);
        if (!w) continue;
        auto [carrier, w0] = carrierize(base, cid, *w);
        family_stellar(base, fans, carrier, w0);
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) return;
  }
  throw Error("resolve_smooth: resolution did not terminate");
}

}  // namespace

Subdivision stellar(const ConeComplex& c, const ConeId& cone_id, const LatticeVector& ray,
                    bool allow_nonsmooth) {
  const Cone& target = c.cone(cone_id);
  if (static_cast<int>(ray.dim()) != target.dim)
    throw Error("stellar: ray dimension differs from cone dimension");
  if (ray.is_zero() || ray != ray.primitive()) throw Error("stellar: ray must be primitive");
  for (std::size_t i = 0; i < ray.dim(); ++i)
    if (ray[i] <= 0) throw Error("stellar: ray not interior to the cone");

  std::map<ConeId, LocalFan> fans;
  for (const auto& [id, cone] : c.cones()) fans[id] = LocalFan::trivial(cone.dim);
  family_stellar(c, fans, cone_id, ray);
  if (!allow_nonsmooth) {
    for (const auto& [id, f] : fans)
      if (!f.all_cones_unimodular())
        throw Error("stellar: refinement at " + ray.str() + " is not smooth");
  }
  return Subdivision(c, std::move(fans));
}

namespace {

LocalFan barycentric_fan(int dim) {
  if (dim == 0) return LocalFan::trivial(0);
  LocalFan f;
  f.dim = dim;
  // one ray for each nonempty subset of coordinates
  std::map<unsigned, int> ray_of_mask;
  for (unsigned mask = 1; mask < (1u << dim); ++mask) {
    LatticeVector v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
      if (mask & (1u << i)) v[i] = 1;
    ray_of_mask[mask] = static_cast<int>(f.rays.size());
    f.rays.push_back(v);
  }
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> cone;
    unsigned mask = 0;
    for (int i = 0; i < dim; ++i) {
      mask |= (1u << perm[i]);
      cone.push_back(ray_of_mask.at(mask));
    }
    std::sort(cone.begin(), cone.end());
    f.cones.push_back(cone);
  } while (std::next_permutation(perm.begin(), perm.end()));
  f.normalize();
  return f;
}

}  // namespace

Subdivision barycentric_once(const ConeComplex& c) {
  std::map<ConeId, LocalFan> fans;
  for (const auto& [id, cone] : c.cones()) fans[id] = barycentric_fan(cone.dim);
  return Subdivision(c, std::move(fans));
}

Subdivision barycentric(const ConeComplex& c) {
  Subdivision sub = barycentric_once(c);
  for (int pass = 0; pass < 3; ++pass) {
    if (sub.refined().is_simple().simple) return sub;
    sub = compose(sub, barycentric_once(sub.refined()));
  }
  throw Error("barycentric: complex did not become simple after iterated subdivision");
}

Subdivision compose(const Subdivision& a, const Subdivision& b) {
  if (!same_complex(b.base(), a.refined()))
    throw Error("compose: second subdivision must refine the first's refinement");
  std::map<ConeId, LocalFan> fans;
  for (const auto& [cid, cone] : a.base().cones()) {
    const LocalFan& f1 = a.fans().at(cid);
    LocalFan out;
    out.dim = cone.dim;
    std::map<std::string, int> index;
    for (const auto& tau : f1.cones) {
      auto oid = a.object_for(cid, tau);
      if (!oid) throw Error("compose: missing refined object");
      const LocalFan& f2 = b.fans().at(*oid);
      IntegerMatrix emb = a.embedding(*oid);
      for (const auto& kappa : f2.cones) {
        std::vector<int> piece;
        for (int i : kappa) {
          LatticeVector r = (emb * f2.rays[i]).primitive();
          auto key = vector_key(r);
          auto it = index.find(key);
          if (it == index.end()) {
            index[key] = static_cast<int>(out.rays.size());
            out.rays.push_back(r);
            piece.push_back(index[key]);
          } else {
            piece.push_back(it->second);
          }
        }
        out.cones.push_back(piece);
      }
    }
    out.normalize();
    fans[cid] = std::move(out);
  }
  return Subdivision(a.base(), std::move(fans));
}

CommonRefinement common_refine(const Subdivision& a, const Subdivision& b) {
  if (!same_complex(a.base(), b.base())) throw Error("common_refine: different base complexes");
  std::map<ConeId, LocalFan> fans;
  for (const auto& [cid, cone] : a.base().cones())
    fans[cid] = refine_fans(a.fans().at(cid), b.fans().at(cid));
  resolve_smooth(a.base(), fans);
  CommonRefinement out{Subdivision(a.base(), std::move(fans)), {}, {}};

  auto locate = [](const Subdivision& s, const ConeId& base_cone,
                   const LatticeVector& interior_point) -> ConeId {
    const LocalFan& f = s.fans().at(base_cone);
    auto idx = f.find_cone(interior_point);
    if (!idx) throw Error("common_refine: refined cone not covered");
    auto oid = s.object_for(base_cone, f.cones[*idx]);
    if (!oid) throw Error("common_refine: missing object");
    return *oid;
  };
  for (const auto& rid : out.sub.refined().maximal_cones()) {
    const ConeId& base_cone = out.sub.carrier(rid);
    const IntegerMatrix& emb = out.sub.embedding(rid);
    LatticeVector interior(emb.rows());
    for (std::size_t j = 0; j < emb.cols(); ++j) interior = interior + emb.column(j);
    out.in_a[rid] = locate(a, base_cone, interior);
    out.in_b[rid] = locate(b, base_cone, interior);
  }
  return out;
}

Subdivision diagram_refine(const ConeComplex& diagram, std::map<ConeId, LocalFan> given) {
  std::map<ConeId, LocalFan> assignment;
  for (const auto& [id, cone] : diagram.cones()) {
    auto it = given.find(id);
    if (it != given.end()) {
      if (it->second.dim != cone.dim) throw Error("diagram_refine: fan dimension mismatch on " + id);
      assignment[id] = it->second;
    } else {
      assignment[id] = LocalFan::trivial(cone.dim);
    }
  }
  std::size_t cap = diagram.cones().size() * std::max<std::size_t>(1, diagram.morphisms().size());
  bool changed = true;
  for (std::size_t round = 0; round < cap && changed; ++round) {
    changed = false;
    for (const auto& m : diagram.morphisms()) {
      if (m.source == m.target && m.assignment.empty()) continue;
      // pull back along the (inverted) arrow
      LocalFan pulled = assignment.at(m.target).restrict_to_face(m.assignment);
      LocalFan merged = refine_fans(assignment.at(m.source), pulled);
      if (!(merged == assignment.at(m.source))) {
        assignment[m.source] = merged;
        changed = true;
      }
      // extend by product across the face inclusion
      LocalFan extended = product_extend(assignment.at(m.source), m, diagram.cone(m.target).dim);
      LocalFan merged2 = refine_fans(assignment.at(m.target), extended);
      if (!(merged2 == assignment.at(m.target))) {
        assignment[m.target] = merged2;
        changed = true;
      }
    }
  }
  if (changed) throw Error("diagram_refine: no fixed point within the round cap");
  resolve_smooth(diagram, assignment);
  return Subdivision(diagram, std::move(assignment));
}

bool same_complex(const ConeComplex& a, const ConeComplex& b) {
  if (a.cones().size() != b.cones().size()) return false;
  for (const auto& [id, c] : a.cones()) {
    if (!b.has_cone(id)) return false;
    const Cone& d = b.cone(id);
    if (c.dim != d.dim || c.ray_labels != d.ray_labels) return false;
  }
  auto key = [](const FaceMap& f) { return std::tie(f.source, f.target, f.ray_assignment); };
  auto fa = a.face_maps();
  auto fb = b.face_maps();
  std::sort(fa.begin(), fa.end(), [&](const FaceMap& x, const FaceMap& y) { return key(x) < key(y); });
  std::sort(fb.begin(), fb.end(), [&](const FaceMap& x, const FaceMap& y) { return key(x) < key(y); });
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (key(fa[i]) != key(fb[i])) return false;
  return true;
}

}  // namespace logchow
