#pragma once

#include <map>
#include <vector>

#include "logchow/cone_complex.hpp"
#include "logchow/polynomial.hpp"
#include "logchow/subdivision.hpp"

namespace logchow {

// A global piecewise-polynomial function of homogeneous degree n: one
// polynomial per maximal cone, compatible under restriction along every
// face-map chain.
struct PPSection {
  int degree = 0;
  std::map<ConeId, Polynomial> per_cone;

  PPSection operator+(const PPSection& o) const;
  PPSection operator-(const PPSection& o) const;
  PPSection operator*(const PPSection& o) const;
  PPSection operator*(const Rational& c) const;
  bool operator==(const PPSection& o) const {
    return degree == o.degree && per_cone == o.per_cone;
  }
  bool is_zero() const;
};

// Throws when s is not a valid degree-s.degree section on c.
void validate_section(const ConeComplex& c, const PPSection& s);

// Zero section, and the section cutting out one divisor label: on each
// maximal cone the sum of the coordinates of the rays carrying that label.
PPSection zero_section(const ConeComplex& c, int degree);
PPSection divisor_section(const ConeComplex& c, const Label& label);

// Lattice basis of PP^n of the complex, canonical (Hermite) form, computed by
// solving the face-compatibility system exactly.
std::vector<PPSection> pp_basis(const ConeComplex& c, int n);

// Rank and cokernel of Sym^n PP^1 -> PP^n.
struct GlobalGenReport {
  std::size_t pp_rank = 0;
  std::size_t image_rank = 0;
  std::vector<Int> cokernel;  // elementary divisors != 1; 0 entries are free summands
  bool surjective() const { return cokernel.empty(); }
};
GlobalGenReport sym_to_pp(const ConeComplex& c, int n);

// Coordinates of a section in the coordinate space of degree-n monomials over
// the maximal cones (the ambient space pp_basis works in), and the inverse.
std::vector<Rational> section_coordinates(const ConeComplex& c, const PPSection& s);
PPSection section_from_coordinates(const ConeComplex& c, int degree,
                                   const std::vector<Rational>& coords);
// Unique expansion of s in the given independent sections, if s lies in their
// rational span.
std::optional<std::vector<Rational>> express_in_span(const ConeComplex& c,
                                                     const std::vector<PPSection>& basis,
                                                     const PPSection& s);

// Restriction of a section to a refinement, cone by cone.
PPSection pullback_pp(const PPSection& s, const Subdivision& sub);

// A subdivided piecewise polynomial: a section on some refinement of a base.
struct SubdividedPP {
  Subdivision subdivision;
  PPSection section;
};

// Equality after pullback to a common refinement.
bool spp_equal(const SubdividedPP& p, const SubdividedPP& q);

}  // namespace logchow
