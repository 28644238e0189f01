#include "logchow/piecewise.hpp"

#include <algorithm>

namespace logchow {

PPSection PPSection::operator+(const PPSection& o) const {
  if (degree != o.degree) throw Error("section +: degree mismatch");
  PPSection out{degree, {}};
  for (const auto& [id, p] : per_cone) out.per_cone[id] = p + o.per_cone.at(id);
  return out;
}

PPSection PPSection::operator-(const PPSection& o) const {
  if (degree != o.degree) throw Error("section -: degree mismatch");
  PPSection out{degree, {}};
  for (const auto& [id, p] : per_cone) out.per_cone[id] = p - o.per_cone.at(id);
  return out;
}

PPSection PPSection::operator*(const PPSection& o) const {
  PPSection out{degree + o.degree, {}};
  for (const auto& [id, p] : per_cone) out.per_cone[id] = p * o.per_cone.at(id);
  return out;
}

PPSection PPSection::operator*(const Rational& c) const {
  PPSection out{degree, {}};
  for (const auto& [id, p] : per_cone) out.per_cone[id] = p * c;
  return out;
}

bool PPSection::is_zero() const {
  return std::all_of(per_cone.begin(), per_cone.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

// Morphisms from b into maximal cones, in category order.
std::vector<Morphism> maps_to_maximal(const ConeComplex& c, const ConeId& b,
                                      const std::set<ConeId>& maximal) {
  std::vector<Morphism> out;
  for (const auto& m : c.morphisms_from(b))
    if (maximal.count(m.target)) out.push_back(m);
  return out;
}

}  // namespace

void validate_section(const ConeComplex& c, const PPSection& s) {
  auto maximal = c.maximal_cones();
  std::set<ConeId> maxset(maximal.begin(), maximal.end());
  if (s.per_cone.size() != maxset.size())
    throw Error("section: per_cone keys must be exactly the maximal cones");
  for (const auto& [id, p] : s.per_cone) {
    if (!maxset.count(id)) throw Error("section: " + id + " is not a maximal cone");
    if (p.arity() != c.cone(id).dim) throw Error("section: polynomial arity mismatch on " + id);
    if (!p.is_homogeneous(s.degree))
      throw Error("section: polynomial on " + id + " is not homogeneous of the stated degree");
  }
  for (const auto& [bid, bcone] : c.cones()) {
    auto maps = maps_to_maximal(c, bid, maxset);
    if (maps.size() < 2) continue;
    Polynomial ref = substitute_linear(s.per_cone.at(maps[0].target),
                                       maps[0].embedding_matrix(c.cone(maps[0].target).dim));
    for (std::size_t i = 1; i < maps.size(); ++i) {
      Polynomial q = substitute_linear(s.per_cone.at(maps[i].target),
                                       maps[i].embedding_matrix(c.cone(maps[i].target).dim));
      if (!(q == ref))
        throw Error("section: restrictions to " + bid + " disagree");
    }
  }
}

PPSection zero_section(const ConeComplex& c, int degree) {
  PPSection s{degree, {}};
  for (const auto& id : c.maximal_cones()) s.per_cone[id] = Polynomial(c.cone(id).dim);
  return s;
}

PPSection divisor_section(const ConeComplex& c, const Label& label) {
  PPSection s{1, {}};
  for (const auto& id : c.maximal_cones()) {
    const Cone& cone = c.cone(id);
    Polynomial p(cone.dim);
    for (int i = 0; i < cone.dim; ++i)
      if (cone.ray_labels[i] == label) p = p + Polynomial::variable(cone.dim, i);
    s.per_cone[id] = p;
  }
  return s;
}

std::vector<Rational> section_coordinates(const ConeComplex& c, const PPSection& s) {
  std::vector<Rational> out;
  for (const auto& id : c.maximal_cones()) {
    int d = c.cone(id).dim;
    const Polynomial& p = s.per_cone.at(id);
    for (const auto& e : monomials_of_degree(d, s.degree)) out.push_back(p.coefficient(e));
  }
  return out;
}

PPSection section_from_coordinates(const ConeComplex& c, int degree,
                                   const std::vector<Rational>& coords) {
  PPSection s{degree, {}};
  std::size_t pos = 0;
  for (const auto& id : c.maximal_cones()) {
    int d = c.cone(id).dim;
    Polynomial p(d);
    for (const auto& e : monomials_of_degree(d, degree)) {
      if (pos >= coords.size()) throw Error("section_from_coordinates: too few coordinates");
      p.add_term(e, coords[pos++]);
    }
    s.per_cone[id] = p;
  }
  if (pos != coords.size()) throw Error("section_from_coordinates: too many coordinates");
  return s;
}

std::vector<PPSection> pp_basis(const ConeComplex& c, int n) {
  if (n < 0) throw Error("pp_basis: negative degree");
  auto maximal = c.maximal_cones();
  std::set<ConeId> maxset(maximal.begin(), maximal.end());

  // layout of the coefficient coordinate space
  std::size_t total = 0;
  std::map<ConeId, std::size_t> offset;
  for (const auto& id : maximal) {
    offset[id] = total;
    total += monomials_of_degree(c.cone(id).dim, n).size();
  }

  // face-compatibility equations
  std::vector<std::vector<Int>> rows;
  for (const auto& [bid, bcone] : c.cones()) {
    auto maps = maps_to_maximal(c, bid, maxset);
    if (maps.size() < 2) continue;
    auto bmons = monomials_of_degree(bcone.dim, n);
    std::map<Polynomial::Exponents, std::size_t> bindex;
    for (std::size_t i = 0; i < bmons.size(); ++i) bindex[bmons[i]] = i;

    // coefficient rows of the restriction along one map, per source monomial
    auto restriction_columns = [&](const Morphism& m) {
      const ConeId& mid = m.target;
      int mdim = c.cone(mid).dim;
      auto mons = monomials_of_degree(mdim, n);
      std::vector<std::vector<Rational>> cols(mons.size());
      IntegerMatrix emb = m.embedding_matrix(mdim);
      for (std::size_t j = 0; j < mons.size(); ++j) {
        Polynomial mono(mdim);
        mono.add_term(mons[j], Rational(1));
        Polynomial restricted = substitute_linear(mono, emb);
        cols[j].assign(bmons.size(), Rational(0));
        for (const auto& [e, coeff] : restricted.terms()) cols[j][bindex.at(e)] = coeff;
      }
      return cols;
    };

    auto ref_cols = restriction_columns(maps[0]);
    for (std::size_t mi = 1; mi < maps.size(); ++mi) {
      auto cols = restriction_columns(maps[mi]);
      for (std::size_t be = 0; be < bmons.size(); ++be) {
        std::vector<Int> row(total, Int(0));
        bool nonzero = false;
        for (std::size_t j = 0; j < ref_cols.size(); ++j) {
          Rational v = ref_cols[j][be];
          if (v != 0) {
            row[offset.at(maps[0].target) + j] += boost::multiprecision::numerator(v);
            nonzero = true;
          }
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
          Rational v = cols[j][be];
          if (v != 0) {
            row[offset.at(maps[mi].target) + j] -= boost::multiprecision::numerator(v);
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }

  IntegerMatrix system(rows.size(), total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) system(i, j) = rows[i][j];

  auto kernel = rational_kernel(system);
  // canonical form: Hermite basis of the kernel lattice
  IntegerMatrix kmat(kernel.size(), total);
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) kmat(i, j) = kernel[i][j];
  IntegerMatrix hb = hermite_row_basis(kmat);

  std::vector<PPSection> out;
  for (std::size_t i = 0; i < hb.rows(); ++i) {
    std::vector<Rational> coords(total);
    for (std::size_t j = 0; j < total; ++j) coords[j] = Rational(hb(i, j));
    out.push_back(section_from_coordinates(c, n, coords));
  }
  return out;
}

std::optional<std::vector<Rational>> express_in_span(const ConeComplex& c,
                                                     const std::vector<PPSection>& basis,
                                                     const PPSection& s) {
  if (basis.empty()) {
    if (s.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  auto target = section_coordinates(c, s);
  std::size_t total = target.size();
  IntegerMatrix a(total, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto col = section_coordinates(c, basis[j]);
    if (col.size() != total) throw Error("express_in_span: coordinate size mismatch");
    for (std::size_t i = 0; i < total; ++i) {
      if (boost::multiprecision::denominator(col[i]) != 1)
        throw Error("express_in_span: basis not integral");
      a(i, j) = boost::multiprecision::numerator(col[i]);
    }
  }
  return solve_rational(a, target);
}

GlobalGenReport sym_to_pp(const ConeComplex& c, int n) {
  GlobalGenReport rep;
  auto basis_n = pp_basis(c, n);
  rep.pp_rank = basis_n.size();
  if (n == 0) {
    // Sym^0 is generated by the unit section.
    PPSection unit{0, {}};
    for (const auto& id : c.maximal_cones())
      unit.per_cone[id] = Polynomial::constant(c.cone(id).dim, Rational(1));
    auto coords = express_in_span(c, basis_n, unit);
    if (!coords) throw Error("sym_to_pp: unit section not in PP^0");
    IntegerMatrix m(rep.pp_rank, 1);
    for (std::size_t i = 0; i < rep.pp_rank; ++i)
      m(i, 0) = boost::multiprecision::numerator((*coords)[i]);
    auto smith = smith_normal_form(m);
    rep.image_rank = smith.diagonal().size();
    for (const auto& d : smith.diagonal())
      if (d != 1) rep.cokernel.push_back(d);
    for (std::size_t i = rep.image_rank; i < rep.pp_rank; ++i) rep.cokernel.push_back(0);
    return rep;
  }

  auto basis_1 = pp_basis(c, 1);
  auto exps = monomials_of_degree(static_cast<int>(basis_1.size()), n);
  IntegerMatrix m(rep.pp_rank, exps.size());
  for (std::size_t j = 0; j < exps.size(); ++j) {
    PPSection prod{0, {}};
    for (const auto& id : c.maximal_cones())
      prod.per_cone[id] = Polynomial::constant(c.cone(id).dim, Rational(1));
    for (std::size_t g = 0; g < basis_1.size(); ++g)
      for (std::uint32_t k = 0; k < exps[j][g]; ++k) prod = prod * basis_1[g];
    auto coords = express_in_span(c, basis_n, prod);
    if (!coords) throw Error("sym_to_pp: product section not in PP^n span");
    for (std::size_t i = 0; i < rep.pp_rank; ++i) {
      if (boost::multiprecision::denominator((*coords)[i]) != 1)
        throw Error("sym_to_pp: non-integral coordinates against the lattice basis");
      m(i, j) = boost::multiprecision::numerator((*coords)[i]);
    }
  }
  auto smith = smith_normal_form(m);
  rep.image_rank = smith.diagonal().size();
  for (const auto& d : smith.diagonal())
    if (d != 1) rep.cokernel.push_back(d);
  for (std::size_t i = rep.image_rank; i < rep.pp_rank; ++i) rep.cokernel.push_back(0);
  return rep;
}

PPSection pullback_pp(const PPSection& s, const Subdivision& sub) {
  auto base_maximal = sub.base().maximal_cones();
  for (const auto& id : base_maximal)
    if (!s.per_cone.count(id))
      throw Error("pullback_pp: section does not live on the subdivision's base");
  PPSection out{s.degree, {}};
  for (const auto& rid : sub.refined().maximal_cones()) {
    const ConeId& carrier = sub.carrier(rid);
    out.per_cone[rid] = substitute_linear(s.per_cone.at(carrier), sub.embedding(rid));
  }
  return out;
}

bool spp_equal(const SubdividedPP& p, const SubdividedPP& q) {
  if (!same_complex(p.subdivision.base(), q.subdivision.base()))
    throw Error("spp_equal: different base complexes");
  auto cr = common_refine(p.subdivision, q.subdivision);
  auto poly_on = [&](const SubdividedPP& side, const std::map<ConeId, ConeId>& in_side,
                     const ConeId& rid) {
    const ConeId& coarse = in_side.at(rid);
    // coordinates of the refined cone's rays in the coarse cone's ray basis;
    // the coarse cone need not be unimodular, so work with the adjugate and
    // divide by the determinant degree by degree
    const IntegerMatrix& emb = side.subdivision.embedding(coarse);
    Int det = emb.determinant();
    if (det < 0) det = -det;
    if (det == 0) throw Error("spp_equal: degenerate coarse cone");
    std::size_t n = emb.rows();
    IntegerMatrix adj(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<Rational> e(n, Rational(0));
      e[c] = det;
      auto sol = solve_rational(emb, e);
      if (!sol) throw Error("spp_equal: singular embedding");
      for (std::size_t r = 0; r < n; ++r) {
        if (boost::multiprecision::denominator((*sol)[r]) != 1)
          throw Error("spp_equal: adjugate is not integral");
        adj(r, c) = boost::multiprecision::numerator((*sol)[r]);
      }
    }
    IntegerMatrix t = adj * cr.sub.embedding(rid);
    Polynomial scaled = substitute_linear(side.section.per_cone.at(coarse), t);
    Rational inv_det_pow(1);
    for (int k = 0; k < side.section.degree; ++k) inv_det_pow /= Rational(det);
    return scaled * inv_det_pow;
  };
  for (const auto& rid : cr.sub.refined().maximal_cones()) {
    if (!(poly_on(p, cr.in_a, rid) == poly_on(q, cr.in_b, rid))) return false;
  }
  return true;
}

}  // namespace logchow
