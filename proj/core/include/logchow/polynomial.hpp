#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logchow/exact.hpp"

namespace logchow {

// Sparse multivariate polynomial with rational coefficients over a fixed,
// ordered list of variables (referred to by index). No zero coefficients are
// stored, so is_zero and operator== are structural.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;

  explicit Polynomial(int arity = 0) : arity_(arity) {}

  static Polynomial constant(int arity, const Rational& c);
  static Polynomial variable(int arity, int i);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  // Total degree of the largest term, -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int n) const;

  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  bool operator<(const Polynomial& o) const;

  Rational evaluate(const std::vector<Rational>& point) const;
  bool has_integer_coefficients() const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int arity_;
  std::map<Exponents, Rational> terms_;
};

// Composes p with the linear substitution x_i -> sum_j map(i,j) y_j.
// map must have p.arity() rows; the result has map.cols() variables.
Polynomial substitute_linear(const Polynomial& p, const IntegerMatrix& map);

// Monomial exponent vectors of total degree n in `arity` variables, in
// lexicographic order. The coordinate convention for sections and bases.
std::vector<Polynomial::Exponents> monomials_of_degree(int arity, int n);

}  // namespace logchow
