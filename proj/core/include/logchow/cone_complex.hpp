#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "logchow/exact.hpp"

namespace logchow {

using ConeId = std::string;
using Label = std::string;

// A smooth simplicial cone: rays are the standard basis of its own lattice,
// one divisor label per ray.
struct Cone {
  ConeId id;
  int dim = 0;
  std::vector<Label> ray_labels;
};

// Face embedding: source ray k lands on target ray ray_assignment[k].
// Injective and label-preserving. Several maps between the same pair of cones
// encode self-gluing.
struct FaceMap {
  ConeId source, target;
  std::vector<int> ray_assignment;
};

// An element of the category generated by the face maps under composition
// (identities included).
struct Morphism {
  ConeId source, target;
  std::vector<int> assignment;
  bool operator<(const Morphism& o) const {
    return std::tie(source, target, assignment) < std::tie(o.source, o.target, o.assignment);
  }
  bool operator==(const Morphism& o) const {
    return source == o.source && target == o.target && assignment == o.assignment;
  }
  std::set<int> image() const { return std::set<int>(assignment.begin(), assignment.end()); }
  // 0/1 matrix of the embedding: target.dim x source.dim; restriction of a
  // polynomial on the target is substitute_linear along this matrix.
  IntegerMatrix embedding_matrix(int target_dim) const;
};

struct StratumReport {
  std::vector<Label> label_subset;
  std::vector<std::vector<ConeId>> components;
};

struct SimplicityReport {
  bool simple = false;
  std::string witness;  // offending cone or label subset when not simple
};

// A generalized cone complex: a finite diagram of labeled smooth simplicial
// cones and face embeddings, closed under composition. Immutable after
// construction; the generated morphism category is computed on first use.
class ConeComplex {
 public:
  ConeComplex() = default;
  ConeComplex(std::vector<Cone> cones, std::vector<FaceMap> maps);

  const std::map<ConeId, Cone>& cones() const { return cones_; }
  const std::vector<FaceMap>& face_maps() const { return face_maps_; }
  const Cone& cone(const ConeId& id) const;
  bool has_cone(const ConeId& id) const { return cones_.count(id) > 0; }
  std::set<Label> divisor_labels() const;

  // Throws Error naming the first violated invariant.
  void validate() const;

  const std::set<Morphism>& morphisms() const;
  std::vector<Morphism> morphisms_into(const ConeId& target) const;
  std::vector<Morphism> morphisms_from(const ConeId& source) const;

  // Cones that are not a proper face of any other cone.
  std::vector<ConeId> maximal_cones() const;

  // Connected components of the face-map graph, each sorted by id; the
  // component list is sorted by its first member.
  std::vector<std::vector<ConeId>> components() const;

  // Subcomplex of cones whose label multiset contains J (with multiplicity),
  // split into connected components.
  StratumReport strata(const std::vector<Label>& J) const;

  SimplicityReport is_simple() const;

 private:
  std::map<ConeId, Cone> cones_;
  std::vector<FaceMap> face_maps_;
  mutable std::set<Morphism> category_;  // lazily generated
  mutable bool category_built_ = false;

  void build_category() const;
};

// Free-function forms matching the operation names used by the CLI.
inline void validate_complex(const ConeComplex& c) { c.validate(); }
inline SimplicityReport is_simple(const ConeComplex& c) { return c.is_simple(); }
inline StratumReport strata(const ConeComplex& c, const std::vector<Label>& J) {
  return c.strata(J);
}

}  // namespace logchow
