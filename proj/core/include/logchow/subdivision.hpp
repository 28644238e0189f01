#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logchow/cone_complex.hpp"
#include "logchow/exact.hpp"

namespace logchow {

// Subdivision data for a single cone: a fan of simplicial cones covering the
// standard cone of its dimension, in that cone's own ray coordinates.
// Kept normalized: rays sorted lexicographically, cones as sorted index lists,
// the cone list itself sorted.
struct LocalFan {
  int dim = 0;
  std::vector<LatticeVector> rays;
  std::vector<std::vector<int>> cones;  // maximal cones, each of size dim

  static LocalFan trivial(int dim);

  bool is_trivial() const;
  void normalize();
  bool operator==(const LocalFan& o) const {
    return dim == o.dim && rays == o.rays && cones == o.cones;
  }

  std::vector<LatticeVector> cone_rays(const std::vector<int>& c) const;
  // Index of the maximal cone containing x (first in order), if any.
  std::optional<std::size_t> find_cone(const LatticeVector& x) const;

  // Star subdivision at w (a point of the covered cone). A no-op when w is
  // already a ray.
  void stellar_subdivide(const LatticeVector& w);

  // Induced fan on the coordinate face listed by `face` (source coordinates
  // of a face map with that image), rewritten in face coordinates.
  LocalFan restrict_to_face(const std::vector<int>& face) const;

  // All faces of all maximal cones (including the empty cone), as sorted ray
  // index lists.
  std::vector<std::vector<int>> all_faces() const;

  bool all_cones_unimodular() const;
  // Covering/disjointness check: every interior facet is shared by exactly
  // two maximal cones, boundary facets lie in coordinate hyperplanes.
  void validate(bool require_smooth = true) const;
};

// Common refinement of two fans on the same cone: pairwise intersections of
// maximal cones, triangulated. May produce non-unimodular cones.
LocalFan refine_fans(const LocalFan& a, const LocalFan& b);

// Fan on the target obtained from a fan on a face by taking the product with
// the complementary coordinates.
LocalFan product_extend(const LocalFan& f, const Morphism& m, int target_dim);

// A subdivision of a cone complex: a compatible family of local fans, one per
// cone, together with the derived refined complex and the embedding of each
// refined cone into its carrier base cone.
class Subdivision {
 public:
  Subdivision() = default;
  // Builds the refined complex; throws if the family is not compatible along
  // the face maps of the base.
  Subdivision(ConeComplex base, std::map<ConeId, LocalFan> fans);

  const ConeComplex& base() const { return base_; }
  const ConeComplex& refined() const { return refined_; }
  const std::map<ConeId, LocalFan>& fans() const { return fans_; }

  // Carrier base cone and ray matrix (base coords x refined dim) of a refined
  // cone; columns are the refined cone's rays.
  const ConeId& carrier(const ConeId& refined_cone) const;
  const IntegerMatrix& embedding(const ConeId& refined_cone) const;

  bool is_identity() const;
  // Supports cover exactly, interiors disjoint, family compatible, refined
  // complex valid. Throws on the first failure.
  void validate(bool require_smooth = true) const;

 private:
  ConeComplex base_;
  std::map<ConeId, LocalFan> fans_;
  ConeComplex refined_;
  std::map<ConeId, ConeId> carrier_;
  std::map<ConeId, IntegerMatrix> embedding_;
  std::map<ConeId, std::map<std::vector<int>, ConeId>> object_of_;  // base cone -> fan cone -> id

  friend Subdivision compose(const Subdivision& a, const Subdivision& b);
  friend struct CommonRefinement;
  void build();

 public:
  // Refined object id for a fan cone of a base cone, when that fan cone is
  // interior (full label support); used when composing subdivisions.
  std::optional<ConeId> object_for(const ConeId& base_cone, const std::vector<int>& fan_cone) const;
};

Subdivision identity_subdivision(const ConeComplex& c);

// Star subdivision at a primitive ray interior to the named cone, propagated
// through the whole diagram. Errors when the result is not smooth unless
// allow_nonsmooth is set.
Subdivision stellar(const ConeComplex& c, const ConeId& cone_id, const LatticeVector& ray,
                    bool allow_nonsmooth = false);

// Barycentric subdivision, iterated until the refined complex is simple (one
// pass suffices for complexes with strict normal crossings labels, two in
// general).
Subdivision barycentric(const ConeComplex& c);
// One barycentric pass (flags of nonempty ray subsets).
Subdivision barycentric_once(const ConeComplex& c);

// b must be a subdivision of a.refined(); the composite subdivides a's base.
Subdivision compose(const Subdivision& a, const Subdivision& b);

struct CommonRefinement {
  Subdivision sub;
  // refined maximal cone id -> containing refined maximal cone id in a / b
  std::map<ConeId, ConeId> in_a, in_b;
};
// Common refinement of two subdivisions of the same base, smoothed by further
// stellar subdivisions when intersections are not unimodular.
CommonRefinement common_refine(const Subdivision& a, const Subdivision& b);

// Extends a partial assignment of local fans over a finite diagram of face
// maps to a compatible family: pull back along arrows, extend by products,
// superpose by common refinement, iterate to a fixed point.
Subdivision diagram_refine(const ConeComplex& diagram, std::map<ConeId, LocalFan> given);

bool same_complex(const ConeComplex& a, const ConeComplex& b);

}  // namespace logchow
