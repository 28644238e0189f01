#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace logchow {

// All arithmetic in the library is exact: arbitrary-precision integers and
// rationals, no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Error type for contract violations surfaced to callers (and the CLI).
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A vector with integer entries, fixed dimension within one lattice context.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : coords_(dim, Int(0)) {}
  explicit LatticeVector(std::vector<Int> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<int> xs) {
    coords_.reserve(xs.size());
    for (int x : xs) coords_.emplace_back(x);
  }

  std::size_t dim() const { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Int>& coords() const { return coords_; }

  bool is_zero() const;
  // Divides by the content so that entries are coprime; zero stays zero.
  LatticeVector primitive() const;
  // Sum of absolute values.
  Int one_norm() const;

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator*(const Int& c) const;
  bool operator==(const LatticeVector& o) const { return coords_ == o.coords_; }
  bool operator!=(const LatticeVector& o) const { return !(*this == o); }
  bool operator<(const LatticeVector& o) const { return coords_ < o.coords_; }

  std::string str() const;

 private:
  std::vector<Int> coords_;
};

Int dot(const LatticeVector& a, const LatticeVector& b);

// Dense matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() : rows_(0), cols_(0) {}
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static IntegerMatrix identity(std::size_t n);
  // Columns are the given vectors.
  static IntegerMatrix from_columns(const std::vector<LatticeVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  IntegerMatrix operator*(const IntegerMatrix& o) const;
  LatticeVector operator*(const LatticeVector& v) const;
  IntegerMatrix transpose() const;
  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;

  // Exact determinant (square matrices only), via fraction-free elimination.
  Int determinant() const;
  bool is_unimodular() const;
  std::size_t rank() const;

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

// Smith normal form: u * m * v = d with u, v unimodular and d diagonal with
// nonnegative entries satisfying d1 | d2 | ...
struct SmithResult {
  IntegerMatrix u, d, v;
  std::vector<Int> diagonal() const;
};
SmithResult smith_normal_form(const IntegerMatrix& m);

// Row-style Hermite normal form of the lattice spanned by the rows.
// Rows of the result are a canonical basis (zero rows dropped): echelon,
// positive pivots, entries above each pivot reduced into [0, pivot).
IntegerMatrix hermite_row_basis(const IntegerMatrix& m);

// Primitive integer basis of { x : m x = 0 } over the rationals. The span is
// saturated: every integer solution is an integer combination of the basis.
std::vector<LatticeVector> rational_kernel(const IntegerMatrix& m);

// Unique rational solution of a full-column-rank system, if consistent.
std::optional<std::vector<Rational>> solve_rational(const IntegerMatrix& a,
                                                    const std::vector<Rational>& b);

// One integer solution of a x = b, if any exists (use rational_kernel(a) for
// the homogeneous part).
std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b);

// Integer inverse of a unimodular matrix; throws otherwise.
IntegerMatrix inverse_unimodular(const IntegerMatrix& m);

}  // namespace logchow
