#include "logchow/toric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "logchow/polyhedra.hpp"

namespace logchow {

void CompleteFan::validate() const {
  if (dim <= 0) throw Error("complete fan: dimension must be positive");
  std::set<LatticeVector> seen;
  for (const auto& r : rays) {
    if (static_cast<int>(r.dim()) != dim) throw Error("complete fan: ray dimension mismatch");
    if (r.is_zero() || r != r.primitive()) throw Error("complete fan: rays must be primitive");
    if (!seen.insert(r).second) throw Error("complete fan: duplicate ray");
  }
  if (max_cones.empty()) throw Error("complete fan: no maximal cones");
  std::map<std::vector<int>, int> facet_count;
  for (const auto& c : max_cones) {
    if (static_cast<int>(c.size()) != dim)
      throw Error("complete fan: maximal cone is not full-dimensional");
    for (int i : c)
      if (i < 0 || i >= static_cast<int>(rays.size()))
        throw Error("complete fan: ray index out of range");
    if (!std::is_sorted(c.begin(), c.end())) throw Error("complete fan: cone rays must be sorted");
    std::vector<LatticeVector> cr;
    for (int i : c) cr.push_back(rays[i]);
    if (!is_unimodular_cone(cr)) throw Error("complete fan: non-smooth maximal cone");
    for (int drop = 0; drop < dim; ++drop) {
      std::vector<int> facet;
      for (int t = 0; t < dim; ++t)
        if (t != drop) facet.push_back(c[t]);
      ++facet_count[facet];
    }
  }
  for (const auto& [facet, n] : facet_count)
    if (n != 2) throw Error("complete fan: facet not shared by exactly two maximal cones");
  // point-location probe: a complete fan covers every direction
  for (int i = 0; i < dim; ++i)
    for (int sign : {1, -1}) {
      LatticeVector probe(static_cast<std::size_t>(dim));
      probe[i] = sign;
      if (!find_cone(probe)) throw Error("complete fan: probe direction not covered");
    }
}

ConeId CompleteFan::cone_id(const std::vector<int>& rays) {
  std::ostringstream os;
  os << "c[";
  for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << rays[i];
  os << "]";
  return os.str();
}

ConeComplex CompleteFan::complex() const {
  std::set<std::vector<int>> faces;
  for (const auto& c : max_cones) {
    unsigned n = static_cast<unsigned>(c.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> f;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(c[i]);
      faces.insert(f);
    }
  }
  std::vector<Cone> cones;
  for (const auto& f : faces) {
    Cone c;
    c.id = cone_id(f);
    c.dim = static_cast<int>(f.size());
    for (int i : f) c.ray_labels.push_back("D" + std::to_string(i));
    cones.push_back(c);
  }
  std::vector<FaceMap> maps;
  for (const auto& f : faces)
    for (const auto& g : faces) {
      if (f.size() + 1 != g.size()) continue;
      if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) continue;
      FaceMap m{cone_id(f), cone_id(g), {}};
      for (int i : f) {
        auto pos = std::find(g.begin(), g.end(), i);
        m.ray_assignment.push_back(static_cast<int>(pos - g.begin()));
      }
      maps.push_back(m);
    }
  return ConeComplex(cones, maps);
}

std::optional<std::size_t> CompleteFan::find_cone(const LatticeVector& x) const {
  for (std::size_t i = 0; i < max_cones.size(); ++i) {
    std::vector<LatticeVector> cr;
    for (int j : max_cones[i]) cr.push_back(rays[j]);
    if (cone_contains(cr, dim, x)) return i;
  }
  return std::nullopt;
}

IntegerMatrix CompleteFan::cone_matrix(std::size_t max_cone) const {
  IntegerMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = rays[max_cones[max_cone][j]][i];
  return m;
}

CompleteFan CompleteFan::projective_plane() {
  CompleteFan f;
  f.dim = 2;
  f.rays = {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-1, -1}};
  f.max_cones = {{0, 1}, {0, 2}, {1, 2}};
  return f;
}

CompleteFan CompleteFan::projective_line() {
  CompleteFan f;
  f.dim = 1;
  f.rays = {LatticeVector{1}, LatticeVector{-1}};
  f.max_cones = {{0}, {1}};
  return f;
}

CompleteFan stellar_fan(const CompleteFan& f, const LatticeVector& v) {
  if (v.is_zero() || v != v.primitive()) throw Error("stellar_fan: vector must be primitive");
  CompleteFan out;
  out.dim = f.dim;
  out.rays = f.rays;
  auto pos = std::find(out.rays.begin(), out.rays.end(), v);
  int vidx;
  if (pos == out.rays.end()) {
    vidx = static_cast<int>(out.rays.size());
    out.rays.push_back(v);
  } else {
    vidx = static_cast<int>(pos - out.rays.begin());
  }
  for (const auto& c : f.max_cones) {
    std::vector<LatticeVector> cr;
    for (int i : c) cr.push_back(f.rays[i]);
    if (!cone_contains(cr, f.dim, v)) {
      out.max_cones.push_back(c);
      continue;
    }
    IntegerMatrix a(f.dim, cr.size());
    for (std::size_t j = 0; j < cr.size(); ++j)
      for (int i = 0; i < f.dim; ++i) a(i, j) = cr[j][i];
    std::vector<Rational> b(f.dim);
    for (int i = 0; i < f.dim; ++i) b[i] = Rational(v[i]);
    auto lam = solve_rational(a, b);
    if (!lam) throw Error("stellar_fan: membership inconsistency");
    std::vector<std::size_t> supp;
    for (std::size_t j = 0; j < lam->size(); ++j)
      if ((*lam)[j] != 0) supp.push_back(j);
    if (supp.size() == 1) {
      out.max_cones.push_back(c);  // v is an existing ray of this cone
      continue;
    }
    for (std::size_t j : supp) {
      std::vector<int> piece;
      for (std::size_t t = 0; t < c.size(); ++t)
        if (t != j) piece.push_back(c[t]);
      piece.push_back(vidx);
      std::sort(piece.begin(), piece.end());
      out.max_cones.push_back(piece);
    }
  }
  std::sort(out.max_cones.begin(), out.max_cones.end());
  out.max_cones.erase(std::unique(out.max_cones.begin(), out.max_cones.end()),
                      out.max_cones.end());
  return out;
}

bool ChowClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
}

PPQuotient::PPQuotient(ConeComplex complex, std::vector<PPSection> linear)
    : complex_(std::move(complex)), linear_(std::move(linear)) {
  for (const auto& l : linear_)
    if (l.degree != 1) throw Error("PPQuotient: relations must be degree-1 sections");
}

const PPQuotient::DegreeData& PPQuotient::data(int degree) const {
  auto it = cache_.find(degree);
  if (it != cache_.end()) return it->second;
  DegreeData d;
  d.ambient = pp_basis(complex_, degree);
  std::vector<std::vector<Rational>> rows;
  if (degree >= 1) {
    auto lower = pp_basis(complex_, degree - 1);
    for (const auto& l : linear_)
      for (const auto& p : lower) {
        auto coords = express_in_span(complex_, d.ambient, l * p);
        if (!coords) throw Error("PPQuotient: ideal generator escapes PP basis");
        rows.push_back(*coords);
      }
  }
  // reduced row echelon form of the ideal's degree part
  std::size_t ncols = d.ambient.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = rows[r][c];
    for (std::size_t j = 0; j < ncols; ++j) rows[r][j] /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  d.rref = rows;
  std::set<std::size_t> pivot_set;
  for (const auto& row : d.rref) {
    for (std::size_t c = 0; c < ncols; ++c)
      if (row[c] != 0) {
        pivot_set.insert(c);
        break;
      }
  }
  for (std::size_t c = 0; c < ncols; ++c)
    (pivot_set.count(c) ? d.pivots : d.nonpivots).push_back(c);
  return cache_.emplace(degree, std::move(d)).first->second;
}

std::size_t PPQuotient::dimension(int degree) const { return data(degree).nonpivots.size(); }

ChowClass PPQuotient::reduce(const PPSection& s) const {
  const DegreeData& d = data(s.degree);
  auto coords = express_in_span(complex_, d.ambient, s);
  if (!coords) throw Error("PPQuotient::reduce: section not in the PP span");
  std::vector<Rational> x = *coords;
  for (const auto& row : d.rref) {
    std::size_t p = 0;
    while (p < x.size() && row[p] == 0) ++p;
    if (p == x.size()) continue;
    Rational f = x[p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= f * row[j];
  }
  ChowClass out{s.degree, {}};
  for (std::size_t c : d.nonpivots) out.coords.push_back(x[c]);
  return out;
}

PPSection PPQuotient::lift(const ChowClass& x) const {
  const DegreeData& d = data(x.degree);
  if (x.coords.size() != d.nonpivots.size()) throw Error("PPQuotient::lift: coordinate mismatch");
  PPSection s = zero_section(complex_, x.degree);
  for (std::size_t i = 0; i < d.nonpivots.size(); ++i)
    s = s + d.ambient[d.nonpivots[i]] * x.coords[i];
  return s;
}

ChowClass PPQuotient::zero(int degree) const {
  return ChowClass{degree, std::vector<Rational>(dimension(degree), Rational(0))};
}

ChowClass PPQuotient::add(const ChowClass& a, const ChowClass& b) const {
  if (a.degree != b.degree) throw Error("ChowClass add: degree mismatch");
  ChowClass out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

ChowClass PPQuotient::scale(const ChowClass& a, const Rational& c) const {
  ChowClass out = a;
  for (auto& x : out.coords) x *= c;
  return out;
}

ChowClass PPQuotient::mul(const ChowClass& a, const ChowClass& b) const {
  return reduce(lift(a) * lift(b));
}

namespace {

// Global linear functions of the ambient lattice as degree-1 sections: the
// k-th coordinate covector restricted to each maximal cone.
std::vector<PPSection> ambient_linear_sections(const CompleteFan& f, const ConeComplex& cx) {
  (void)cx;
  std::vector<PPSection> out;
  for (int k = 0; k < f.dim; ++k) {
    PPSection s{1, {}};
    for (const auto& c : f.max_cones) {
      Polynomial p(f.dim);
      for (int j = 0; j < f.dim; ++j)
        p = p + Polynomial::variable(f.dim, j) * Rational(f.rays[c[j]][k]);
      s.per_cone[CompleteFan::cone_id(c)] = p;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

ToricChow::ToricChow(CompleteFan fan) : fan_(std::move(fan)) {
  fan_.validate();
  ConeComplex cx = fan_.complex();
  quotient_ = PPQuotient(cx, ambient_linear_sections(fan_, cx));
  // point class: product of the ray divisor sections of the first maximal cone
  PPSection pt{0, {}};
  for (const auto& id : quotient_.complex().maximal_cones())
    pt.per_cone[id] = Polynomial::constant(fan_.dim, Rational(1));
  for (int i : fan_.max_cones[0]) pt = pt * divisor_section(i);
  point_ = quotient_.reduce(pt);
  if (quotient_.dimension(fan_.dim) != 1 || point_.is_zero())
    throw Error("ToricChow: top degree is not one-dimensional");
}

std::vector<std::size_t> ToricChow::graded_dimensions() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= fan_.dim; ++n) out.push_back(quotient_.dimension(n));
  return out;
}

ChowClass ToricChow::unit() const {
  PPSection one{0, {}};
  for (const auto& id : quotient_.complex().maximal_cones())
    one.per_cone[id] = Polynomial::constant(fan_.dim, Rational(1));
  return quotient_.reduce(one);
}

PPSection ToricChow::divisor_section(int ray_index) const {
  if (ray_index < 0 || ray_index >= static_cast<int>(fan_.rays.size()))
    throw Error("divisor_section: ray index out of range");
  return logchow::divisor_section(quotient_.complex(), "D" + std::to_string(ray_index));
}

ChowClass ToricChow::divisor(int ray_index) const {
  return quotient_.reduce(divisor_section(ray_index));
}

Rational ToricChow::degree_of(const ChowClass& x) const {
  if (x.degree != fan_.dim) throw Error("degree_of: class is not top-dimensional");
  return x.coords[0] / point_.coords[0];
}

Rational ToricChow::pair(const ChowClass& a, const ChowClass& b) const {
  if (a.degree + b.degree != fan_.dim) throw Error("pair: degrees are not complementary");
  return degree_of(quotient_.mul(a, b));
}

void FanSubdivision::validate() const {
  base.validate();
  refined.validate();
  if (base.dim != refined.dim) throw Error("fan subdivision: dimension mismatch");
  for (std::size_t i = 0; i < refined.max_cones.size(); ++i) carrier(i);
}

std::size_t FanSubdivision::carrier(std::size_t refined_cone) const {
  // interior point of the refined cone locates the containing base cone
  LatticeVector interior(static_cast<std::size_t>(refined.dim));
  for (int j : refined.max_cones[refined_cone]) interior = interior + refined.rays[j];
  auto idx = base.find_cone(interior);
  if (!idx) throw Error("fan subdivision: refined cone not inside any base cone");
  std::vector<LatticeVector> cr;
  for (int j : base.max_cones[*idx]) cr.push_back(base.rays[j]);
  for (int j : refined.max_cones[refined_cone])
    if (!cone_contains(cr, base.dim, refined.rays[j]))
      throw Error("fan subdivision: refined cone crosses base cone walls");
  return *idx;
}

PPSection pullback_section(const FanSubdivision& sub, const PPSection& s) {
  PPSection out{s.degree, {}};
  for (std::size_t i = 0; i < sub.refined.max_cones.size(); ++i) {
    std::size_t b = sub.carrier(i);
    const ConeId bid = CompleteFan::cone_id(sub.base.max_cones[b]);
    // coordinates of refined rays in the base cone's ray basis
    IntegerMatrix rbase = sub.base.cone_matrix(b);
    IntegerMatrix rref = sub.refined.cone_matrix(i);
    IntegerMatrix t = inverse_unimodular(rbase) * rref;
    out.per_cone[CompleteFan::cone_id(sub.refined.max_cones[i])] =
        substitute_linear(s.per_cone.at(bid), t);
  }
  return out;
}

ChowClass pullback_chow(const ToricChow& base, const ToricChow& refined, const FanSubdivision& sub,
                        const ChowClass& x) {
  return refined.phi(pullback_section(sub, base.lift(x)));
}

ChowClass pushforward_chow(const ToricChow& base, const ToricChow& refined,
                           const FanSubdivision& sub, const ChowClass& x) {
  int d = base.dim();
  int n = x.degree;
  if (n < 0 || n > d) throw Error("pushforward_chow: degree out of range");
  std::size_t rank = base.quotient().dimension(n);
  std::size_t corank = base.quotient().dimension(d - n);
  // basis classes of the base in degrees n and d-n
  auto basis_class = [&](int degree, std::size_t i) {
    ChowClass c{degree, std::vector<Rational>(base.quotient().dimension(degree), Rational(0))};
    c.coords[i] = 1;
    return c;
  };
  // Solve: pair_base(z, y_j) = pair_refined(x, pullback(y_j)) for all j.
  IntegerMatrix a(corank, rank);
  std::vector<Rational> rhs(corank);
  // The pairing matrix entries are rational; scale rows to integers.
  std::vector<std::vector<Rational>> rows(corank, std::vector<Rational>(rank));
  for (std::size_t j = 0; j < corank; ++j) {
    ChowClass y = basis_class(d - n, j);
    for (std::size_t i = 0; i < rank; ++i) rows[j][i] = base.pair(basis_class(n, i), y);
    rhs[j] = refined.pair(x, pullback_chow(base, refined, sub, y));
  }
  // clear denominators row by row
  for (std::size_t j = 0; j < corank; ++j) {
    Int lcm = 1;
    for (const auto& v : rows[j]) {
      Int den = boost::multiprecision::denominator(v);
      lcm = lcm / int_gcd(lcm, den) * den;
    }
    for (std::size_t i = 0; i < rank; ++i) {
      Rational scaled = rows[j][i] * Rational(lcm);
      a(j, i) = boost::multiprecision::numerator(scaled);
    }
    rhs[j] *= Rational(lcm);
  }
  auto sol = solve_rational(a, rhs);
  if (!sol) throw Error("pushforward_chow: pairing system inconsistent");
  return ChowClass{n, *sol};
}

ChowClass log_pushforward(const ToricChow& base, const LogChowClass& z) {
  ToricChow refined(z.subdivision.refined);
  return pushforward_chow(base, refined, z.subdivision, z.cls);
}

ConeComplex star_subcomplex(const CompleteFan& f, int ray_index) {
  ConeComplex whole = f.complex();
  std::set<std::vector<int>> star;
  for (const auto& c : f.max_cones) {
    if (std::find(c.begin(), c.end(), ray_index) == c.end()) continue;
    unsigned n = static_cast<unsigned>(c.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> face;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(c[i]);
      star.insert(face);
    }
  }
  std::set<ConeId> keep;
  for (const auto& s : star) keep.insert(CompleteFan::cone_id(s));
  std::vector<Cone> cones;
  for (const auto& [id, c] : whole.cones())
    if (keep.count(id)) cones.push_back(c);
  std::vector<FaceMap> maps;
  for (const auto& m : whole.face_maps())
    if (keep.count(m.source) && keep.count(m.target)) maps.push_back(m);
  return ConeComplex(cones, maps);
}

PPSection restrict_section(const ConeComplex& star, const PPSection& s) {
  PPSection out{s.degree, {}};
  for (const auto& id : star.maximal_cones()) out.per_cone[id] = s.per_cone.at(id);
  return out;
}

PPQuotient star_quotient(const CompleteFan& f, int ray_index) {
  ConeComplex star = star_subcomplex(f, ray_index);
  ConeComplex whole = f.complex();
  std::vector<PPSection> linear;
  for (auto& l : ambient_linear_sections(f, whole)) linear.push_back(restrict_section(star, l));
  return PPQuotient(star, std::move(linear));
}

}  // namespace logchow
