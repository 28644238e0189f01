#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logchow/subdivision.hpp"
#include "logchow/tropical.hpp"

namespace logchow {

// Search data for twisting functions: a curve over its base cone, one or
// several degree-0 divisors, and the slope bound for the enumeration.
struct TwistProblem {
  TropicalCurve curve;
  std::vector<Divisor> divisors;
  Int bound = 0;  // 0 selects the default (sum |d(v)|) * #edges per divisor

  Int effective_bound() const;
};

struct TwistCertificate {
  std::vector<Int> slopes;  // per oriented edge
  bool operator==(const TwistCertificate& o) const { return slopes == o.slopes; }
  bool operator<(const TwistCertificate& o) const { return slopes < o.slopes; }
};

// A maximal cone of the twistable locus: a simplicial subcone of the base
// cone together with one certificate per divisor, valid identically on it.
struct ExtCone {
  std::vector<LatticeVector> generators;
  std::vector<TwistCertificate> certificates;
};

struct ExtFan {
  int base_dim = 0;
  std::vector<ExtCone> max_cones;
  bool complete = false;  // true only when a certified a-priori bound was supplied
  Int bound = 0;
  Int height = 0;  // set by pointwise checks that used a height cutoff
};

// Slope vectors with div(mu) = -d and sup-norm at most the bound, sorted
// lexicographically. Exhaustive within the bound.
std::vector<TwistCertificate> enumerate_twists(const TropicalCurve& g, const Divisor& d,
                                               const Int& bound);

// Does mu satisfy div(mu) = -d and cycle consistency identically on the cone?
bool certificate_valid_on(const TropicalCurve& g, const Divisor& d, const TwistCertificate& mu,
                          const std::vector<LatticeVector>& cone_generators);
// Pointwise version at a single base point.
bool certificate_valid_at(const TropicalCurve& g, const Divisor& d, const TwistCertificate& mu,
                          const LatticeVector& point);

// Lexicographically smallest certificate valid identically on the cone, if
// one exists within the bound.
std::optional<TwistCertificate> find_twist(const TwistProblem& p,
                                           const std::vector<LatticeVector>& cone_generators);

// The fan of subcones of the base cone on which a twisting exists: for each
// candidate mu the consistency conditions cut a subcone of the base; maximal
// ones are kept, triangulated, and decorated with the lex-smallest
// certificate. Exhaustive within the bound; `certified_bound` records that
// the caller vouches for exhaustiveness.
ExtFan ext_fan(const TwistProblem& p, bool certified_bound = false);

// Common refinement of the per-divisor fans, every cone decorated with the
// tuple of lex-smallest certificates.
ExtFan tuple_ext_fan(const TropicalCurve& g, const std::vector<Divisor>& ds, const Int& bound = 0,
                     bool certified_bound = false);

// Supports agree and certificates transport along mu' = M mu. M must be
// unimodular. Enumeration bounds on each side are scaled by the operator
// norms of M and its inverse so the comparison is symmetric.
bool gl_invariance_check(const TropicalCurve& g, const std::vector<Divisor>& ds,
                         const IntegerMatrix& m, const Int& bound = 0);

// The piecewise-linear eta correction -sum_e mu_e^2 * l_e on an Ext fan.
struct EtaCorrection {
  struct PerCone {
    std::vector<LatticeVector> generators;
    LatticeVector covector;            // ambient coefficients of the linear function
    std::vector<Int> values;           // at the generators (cone coordinates)
  };
  std::vector<PerCone> cones;
};
// Throws on discontinuity across a shared face (an invalid Ext fan).
EtaCorrection eta_correction(const TropicalCurve& g, const ExtFan& fan, std::size_t component = 0);

// Almost-twistability: alpha restricts to a twisting certificate on every
// cone of the subfan U, and no integer point of the subdivision outside U
// (up to the height cutoff) admits a pointwise twist within the bound.
struct AlmostTwistInput {
  LocalFan subdivision;                                // of the curve's base cone
  std::vector<std::vector<LatticeVector>> subfan;      // cones of U, generators in base coords
  std::map<std::size_t, TwistCertificate> alpha;       // certificate per subfan cone
  Int height = 10;
};
struct AlmostTwistReport {
  bool almost_twistable = false;
  std::string witness;
  std::vector<LatticeVector> tested_points;
  std::vector<LatticeVector> liftable_points;
};
AlmostTwistReport is_almost_twistable(const TwistProblem& p, const AlmostTwistInput& in);

}  // namespace logchow
