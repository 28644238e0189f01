#include "logchow/exact.hpp"

#include <algorithm>
#include <sstream>

namespace logchow {

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& x) { return x == 0; });
}

LatticeVector LatticeVector::primitive() const {
  Int g = 0;
  for (const Int& x : coords_) g = int_gcd(g, x);
  if (g == 0 || g == 1) return *this;
  LatticeVector out(*this);
  for (Int& x : out.coords_) x /= g;
  return out;
}

Int LatticeVector::one_norm() const {
  Int s = 0;
  for (const Int& x : coords_) s += boost::multiprecision::abs(x);
  return s;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  if (dim() != o.dim()) throw Error("LatticeVector dimension mismatch");
  LatticeVector out(*this);
  for (std::size_t i = 0; i < dim(); ++i) out.coords_[i] += o.coords_[i];
  return out;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  if (dim() != o.dim()) throw Error("LatticeVector dimension mismatch");
  LatticeVector out(*this);
  for (std::size_t i = 0; i < dim(); ++i) out.coords_[i] -= o.coords_[i];
  return out;
}

LatticeVector LatticeVector::operator*(const Int& c) const {
  LatticeVector out(*this);
  for (Int& x : out.coords_) x *= c;
  return out;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ",";
    os << coords_[i];
  }
  os << ")";
  return os.str();
}

Int dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw Error("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.assign(rows_ * cols_, Int(0));
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error("IntegerMatrix: ragged initializer");
    std::size_t c = 0;
    for (int x : row) (*this)(r, c++) = x;
    ++r;
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<LatticeVector>& cols) {
  std::size_t nr = cols.empty() ? 0 : cols[0].dim();
  IntegerMatrix m(nr, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].dim() != nr) throw Error("from_columns: ragged columns");
    for (std::size_t r = 0; r < nr; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product: dimension mismatch");
  IntegerMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

LatticeVector IntegerMatrix::operator*(const LatticeVector& v) const {
  if (cols_ != v.dim()) throw Error("matrix-vector product: dimension mismatch");
  LatticeVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

LatticeVector IntegerMatrix::row(std::size_t r) const {
  LatticeVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
  return v;
}

LatticeVector IntegerMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

Int IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw Error("determinant: matrix not square");
  std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntegerMatrix a(*this);
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

bool IntegerMatrix::is_unimodular() const {
  if (rows_ != cols_) return false;
  Int d = determinant();
  return d == 1 || d == -1;
}

std::size_t IntegerMatrix::rank() const {
  return smith_normal_form(*this).diagonal().size();
}

std::string IntegerMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> out;
  std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < n; ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[a] += c * row[b]
void add_row(IntegerMatrix& m, std::size_t a, std::size_t b, const Int& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += c * m(b, j);
}
void add_col(IntegerMatrix& m, std::size_t a, std::size_t b, const Int& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) += c * m(i, b);
}
void negate_row(IntegerMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

}  // namespace

SmithResult smith_normal_form(const IntegerMatrix& m) {
  std::size_t nr = m.rows(), nc = m.cols();
  SmithResult res{IntegerMatrix::identity(nr), m, IntegerMatrix::identity(nc)};
  IntegerMatrix& d = res.d;
  IntegerMatrix& u = res.u;
  IntegerMatrix& v = res.v;

  std::size_t t = 0;
  while (t < nr && t < nc) {
    // Locate the entry of smallest nonzero absolute value in the submatrix.
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        Int a = boost::multiprecision::abs(d(i, j));
        if (a != 0 && (best == 0 || a < best)) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    if (pi != t) {
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
    }
    if (pj != t) {
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);
    }

    bool clean = true;
    for (std::size_t i = t + 1; i < nr; ++i) {
      if (d(i, t) == 0) continue;
      Int q = d(i, t) / d(t, t);
      add_row(d, i, t, -q);
      add_row(u, i, t, -q);
      if (d(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < nc; ++j) {
      if (d(t, j) == 0) continue;
      Int q = d(t, j) / d(t, t);
      add_col(d, j, t, -q);
      add_col(v, j, t, -q);
      if (d(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared, pick a new pivot

    // Pivot must divide every remaining entry for the divisibility chain.
    bool divides = true;
    for (std::size_t i = t + 1; i < nr && divides; ++i)
      for (std::size_t j = t + 1; j < nc && divides; ++j)
        if (d(i, j) % d(t, t) != 0) {
          add_row(d, t, i, 1);
          add_row(u, t, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
    ++t;
  }
  return res;
}

IntegerMatrix hermite_row_basis(const IntegerMatrix& m) {
  IntegerMatrix a(m);
  std::size_t nr = a.rows(), nc = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    // gcd-reduce the column below row r to a single nonzero entry
    while (true) {
      std::size_t p = nr;
      Int best = 0;
      for (std::size_t i = r; i < nr; ++i) {
        Int x = boost::multiprecision::abs(a(i, c));
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          p = i;
        }
      }
      if (p == nr) break;  // column zero below r
      if (p != r) swap_rows(a, r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < nr; ++i) {
        if (a(i, c) == 0) continue;
        Int q = a(i, c) / a(r, c);
        add_row(a, i, r, -q);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) negate_row(a, r);
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Int q = a(i, c) / a(r, c);
      if (a(i, c) - q * a(r, c) < 0) q -= 1;
      if (q != 0) add_row(a, i, r, -q);
    }
    ++r;
  }
  IntegerMatrix out(r, nc);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = a(i, j);
  return out;
}

std::vector<LatticeVector> rational_kernel(const IntegerMatrix& m) {
  SmithResult s = smith_normal_form(m);
  std::size_t rank = s.diagonal().size();
  std::vector<LatticeVector> out;
  // Columns of v past the rank span the kernel; they are primitive since v is
  // unimodular, and the span is saturated.
  for (std::size_t j = rank; j < m.cols(); ++j) {
    LatticeVector k = s.v.column(j);
    for (std::size_t i = 0; i < k.dim(); ++i) {
      if (k[i] == 0) continue;
      if (k[i] < 0) k = k * Int(-1);
      break;
    }
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Rational>> solve_rational(const IntegerMatrix& a,
                                                    const std::vector<Rational>& b) {
  if (a.rows() != b.size()) throw Error("solve_rational: dimension mismatch");
  std::size_t nr = a.rows(), nc = a.cols();
  std::vector<std::vector<Rational>> aug(nr, std::vector<Rational>(nc + 1));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) aug[i][j] = Rational(a(i, j));
    aug[i][nc] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && aug[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(aug[p], aug[r]);
    Rational inv = aug[r][c];
    for (std::size_t j = c; j <= nc; ++j) aug[r][j] /= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t j = c; j <= nc; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < nr; ++i)
    if (aug[i][nc] != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> x(nc, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = aug[i][nc];
  return x;
}

IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse_unimodular: not square");
  std::size_t n = m.rows();
  IntegerMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> e(n, Rational(0));
    e[c] = 1;
    auto sol = solve_rational(m, e);
    if (!sol) throw Error("inverse_unimodular: singular matrix");
    for (std::size_t r = 0; r < n; ++r) {
      if (boost::multiprecision::denominator((*sol)[r]) != 1)
        throw Error("inverse_unimodular: matrix is not unimodular");
      inv(r, c) = boost::multiprecision::numerator((*sol)[r]);
    }
  }
  return inv;
}

std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b) {
  if (a.rows() != b.dim()) throw Error("solve_integer: dimension mismatch");
  SmithResult s = smith_normal_form(a);
  LatticeVector c = s.u * b;
  std::size_t n = a.cols();
  LatticeVector y(n);
  std::size_t k = std::min(a.rows(), n);
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Int di = (i < k) ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    }
  }
  return s.v * y;
}

}  // namespace logchow
