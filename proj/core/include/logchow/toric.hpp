#pragma once

#include <map>
#include <vector>

#include "logchow/cone_complex.hpp"
#include "logchow/piecewise.hpp"

namespace logchow {

// A smooth complete fan in an ambient lattice: each maximal cone's rays form a
// lattice basis, every facet is shared by exactly two maximal cones.
struct CompleteFan {
  int dim = 0;
  std::vector<LatticeVector> rays;           // primitive, pairwise distinct
  std::vector<std::vector<int>> max_cones;   // sorted ray index lists of size dim

  void validate() const;
  // The diagram of faces of the fan as an abstract labeled complex; ray i
  // carries label "D<i>", cones are named by their sorted ray index sets.
  ConeComplex complex() const;
  static ConeId cone_id(const std::vector<int>& rays);

  // Maximal cone containing x (unique when x is interior to one).
  std::optional<std::size_t> find_cone(const LatticeVector& x) const;
  // Ray matrix of a maximal cone (columns are its rays).
  IntegerMatrix cone_matrix(std::size_t max_cone) const;

  static CompleteFan projective_plane();
  static CompleteFan projective_line();
};

// Star subdivision of a complete fan at a primitive lattice vector.
CompleteFan stellar_fan(const CompleteFan& f, const LatticeVector& v);

// Graded coordinates of a class against the published quotient basis.
struct ChowClass {
  int degree = 0;
  std::vector<Rational> coords;
  bool is_zero() const;
  bool operator==(const ChowClass& o) const { return degree == o.degree && coords == o.coords; }
};

// PP(complex) modulo the ideal generated by the given degree-1 sections,
// degreewise, over the rationals. Used for Chow rings of complete fans and
// for their star subcomplexes.
class PPQuotient {
 public:
  PPQuotient() = default;
  PPQuotient(ConeComplex complex, std::vector<PPSection> linear);

  const ConeComplex& complex() const { return complex_; }
  std::size_t dimension(int degree) const;
  ChowClass reduce(const PPSection& s) const;
  PPSection lift(const ChowClass& x) const;  // canonical section representative
  ChowClass zero(int degree) const;
  ChowClass add(const ChowClass& a, const ChowClass& b) const;
  ChowClass scale(const ChowClass& a, const Rational& c) const;
  ChowClass mul(const ChowClass& a, const ChowClass& b) const;

 private:
  ConeComplex complex_;
  std::vector<PPSection> linear_;
  struct DegreeData {
    std::vector<PPSection> ambient;                  // pp_basis of this degree
    std::vector<std::vector<Rational>> rref;         // reduced rows of the ideal part
    std::vector<std::size_t> pivots, nonpivots;
  };
  mutable std::map<int, DegreeData> cache_;
  const DegreeData& data(int degree) const;
};

// The Chow ring of a smooth complete toric fan, presented as piecewise
// polynomials modulo global linear functions, with the degree map normalized
// so that the product of the ray divisors of any maximal cone has degree 1.
class ToricChow {
 public:
  explicit ToricChow(CompleteFan fan);

  const CompleteFan& fan() const { return fan_; }
  const ConeComplex& complex() const { return quotient_.complex(); }
  int dim() const { return fan_.dim; }
  std::vector<std::size_t> graded_dimensions() const;

  ChowClass phi(const PPSection& s) const { return quotient_.reduce(s); }
  PPSection lift(const ChowClass& x) const { return quotient_.lift(x); }
  ChowClass zero(int degree) const { return quotient_.zero(degree); }
  ChowClass unit() const;
  ChowClass divisor(int ray_index) const;  // class of the ray's Courant section
  PPSection divisor_section(int ray_index) const;
  ChowClass add(const ChowClass& a, const ChowClass& b) const { return quotient_.add(a, b); }
  ChowClass scale(const ChowClass& a, const Rational& c) const { return quotient_.scale(a, c); }
  ChowClass mul(const ChowClass& a, const ChowClass& b) const { return quotient_.mul(a, b); }
  // Degree of a top-dimensional class.
  Rational degree_of(const ChowClass& x) const;
  // deg(a * b) for complementary degrees.
  Rational pair(const ChowClass& a, const ChowClass& b) const;

  const PPQuotient& quotient() const { return quotient_; }

 private:
  CompleteFan fan_;
  PPQuotient quotient_;
  ChowClass point_;  // class of a point, degree normalization
};

// A subdivision of complete fans: every refined maximal cone sits inside a
// base maximal cone.
struct FanSubdivision {
  CompleteFan base, refined;
  void validate() const;
  // base maximal cone containing a refined maximal cone
  std::size_t carrier(std::size_t refined_cone) const;
};

// Restriction of a section along the subdivision, cone by cone.
PPSection pullback_section(const FanSubdivision& sub, const PPSection& s);

// Ring pullback: commutes with phi and with section pullback.
ChowClass pullback_chow(const ToricChow& base, const ToricChow& refined, const FanSubdivision& sub,
                        const ChowClass& x);

// Adjoint of pullback under the intersection pairing:
// deg(pushforward(x) * y) = deg(x * pullback(y)) for all y.
ChowClass pushforward_chow(const ToricChow& base, const ToricChow& refined,
                           const FanSubdivision& sub, const ChowClass& x);

// A log Chow class: a determination on some smooth complete refinement.
struct LogChowClass {
  FanSubdivision subdivision;
  ChowClass cls;
};
ChowClass log_pushforward(const ToricChow& base, const LogChowClass& z);

// The star of a ray: all cones containing it together with their faces, as a
// subcomplex sharing the ids of fan.complex(). Sections restrict by key.
ConeComplex star_subcomplex(const CompleteFan& f, int ray_index);
PPSection restrict_section(const ConeComplex& star, const PPSection& s);
// Quotient ring of the star by the restrictions of the global linear
// functions (the open-immersion side of the compatibility square).
PPQuotient star_quotient(const CompleteFan& f, int ray_index);

}  // namespace logchow
