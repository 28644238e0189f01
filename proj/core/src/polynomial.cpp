#include "logchow/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace logchow {

Polynomial Polynomial::constant(int arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponents(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(int arity, int i) {
  if (i < 0 || i >= arity) throw Error("Polynomial::variable: index out of range");
  Polynomial p(arity);
  Exponents e(arity, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = std::accumulate(e.begin(), e.end(), 0);
    if (t > d) d = t;
  }
  return d;
}

bool Polynomial::is_homogeneous(int n) const {
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != static_cast<int>(n)) return false;
  return true;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != arity_) throw Error("Polynomial::add_term: arity mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (arity_ != o.arity_) throw Error("polynomial +: arity mismatch");
  Polynomial out(*this);
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (arity_ != o.arity_) throw Error("polynomial -: arity mismatch");
  Polynomial out(*this);
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (arity_ != o.arity_) throw Error("polynomial *: arity mismatch");
  Polynomial out(arity_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(arity_);
      for (int i = 0; i < arity_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(arity_);
  if (c == 0) return out;
  for (const auto& [e, k] : terms_) out.add_term(e, k * c);
  return out;
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (arity_ != o.arity_) return arity_ < o.arity_;
  return terms_ < o.terms_;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != arity_) throw Error("evaluate: arity mismatch");
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < arity_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

bool Polynomial::has_integer_coefficients() const {
  for (const auto& [e, c] : terms_)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Polynomial substitute_linear(const Polynomial& p, const IntegerMatrix& map) {
  if (map.rows() != static_cast<std::size_t>(p.arity()))
    throw Error("substitute_linear: map rows must equal polynomial arity");
  int target = static_cast<int>(map.cols());
  // Linear form for each source variable.
  std::vector<Polynomial> images;
  images.reserve(p.arity());
  for (int i = 0; i < p.arity(); ++i) {
    Polynomial li(target);
    for (int j = 0; j < target; ++j)
      li = li + Polynomial::variable(target, j) * Rational(map(i, j));
    images.push_back(li);
  }
  Polynomial out(target);
  for (const auto& [e, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (int i = 0; i < p.arity(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t = t * images[i];
    out = out + t;
  }
  return out;
}

std::vector<Polynomial::Exponents> monomials_of_degree(int arity, int n) {
  std::vector<Polynomial::Exponents> out;
  if (arity == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  Polynomial::Exponents cur(arity, 0);
  // lexicographic enumeration by recursion on the first variable
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == arity - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, rem - k);
    }
  };
  rec(0, n);
  return out;
}

}  // namespace logchow
