#pragma once

#include <optional>
#include <vector>

#include "logchow/exact.hpp"

namespace logchow {

// Utilities for rational polyhedral cones given by generators in an ambient
// lattice. All cones handled here are pointed (they live inside an orthant).

// Dimension of the linear span of the generators.
int cone_dim(const std::vector<LatticeVector>& rays, int ambient_dim);

// H-representation { x : equations x = 0, normals x >= 0 }.
struct HRep {
  std::vector<LatticeVector> equations;
  std::vector<LatticeVector> normals;
  int ambient_dim = 0;
};
HRep cone_hrep(const std::vector<LatticeVector>& rays, int ambient_dim);

bool hrep_contains(const HRep& h, const LatticeVector& x);

// Membership for a cone given by generators: x = sum lambda_i r_i, lambda >= 0.
bool cone_contains(const std::vector<LatticeVector>& rays, int ambient_dim,
                   const LatticeVector& x);
// Strict membership: lambda can be chosen with the combination supported on a
// spanning set, i.e. x lies in the relative interior.
bool cone_contains_interior(const std::vector<LatticeVector>& rays, int ambient_dim,
                            const LatticeVector& x);

// Extreme rays of { x : equations x = 0, normals x >= 0 }, primitive and
// sorted. Throws if the region is not pointed.
std::vector<LatticeVector> extreme_rays(const HRep& h);

// Extreme rays of the intersection of two cones.
std::vector<LatticeVector> cone_intersection(const std::vector<LatticeVector>& a,
                                             const std::vector<LatticeVector>& b,
                                             int ambient_dim);

// Splits a pointed cone into simplicial cones sharing its rays, by placing
// from the lexicographically smallest extreme ray. Input rays need not be
// extreme; they are reduced first.
std::vector<std::vector<LatticeVector>> triangulate_cone(const std::vector<LatticeVector>& rays,
                                                         int ambient_dim);

// A simplicial cone is unimodular when its rays extend to a lattice basis
// (all elementary divisors of the ray matrix are 1).
bool is_unimodular_cone(const std::vector<LatticeVector>& rays);

// Smallest nonzero lattice point of the half-open parallelepiped of a
// full-dimensional simplicial cone (minimal coefficient sum, then lex).
// Returns nothing when the cone is unimodular.
std::optional<LatticeVector> box_point(const std::vector<LatticeVector>& rays);

}  // namespace logchow
