#include "logchow/twist.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "logchow/polyhedra.hpp"

namespace logchow {

namespace {

Int default_bound(const TropicalCurve& g, const Divisor& d) {
  Int s = 0;
  for (const auto& [v, deg] : d.multidegree) s += boost::multiprecision::abs(deg);
  return s * Int(g.edges().size());
}

// Signed vertex-edge incidence: div(mu) = D mu.
IntegerMatrix incidence(const TropicalCurve& g) {
  IntegerMatrix m(g.vertices().size(), g.edges().size());
  std::map<VertexId, std::size_t> row;
  for (std::size_t i = 0; i < g.vertices().size(); ++i) row[g.vertices()[i].id] = i;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    m(row.at(g.edges()[e].from), e) += 1;
    m(row.at(g.edges()[e].to), e) -= 1;
  }
  return m;
}

// The covector of one cycle condition: sum over edges of gamma_e mu_e l_{ray(e)}.
LatticeVector cycle_covector(const TropicalCurve& g, const LatticeVector& cycle,
                             const std::vector<Int>& mu) {
  LatticeVector c(g.base_dim());
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    c[g.edges()[e].length_ray] += cycle[e] * mu[e];
  return c;
}

std::string curve_key(const TropicalCurve& g) {
  std::ostringstream os;
  os << g.base_dim() << ";";
  for (const auto& v : g.vertices()) os << v.id << ":" << v.genus << ",";
  os << ";";
  for (const auto& e : g.edges()) os << e.from << ">" << e.to << "@" << e.length_ray << ",";
  return os.str();
}

std::string divisor_key(const Divisor& d) {
  std::ostringstream os;
  for (const auto& [v, deg] : d.multidegree) os << v << "=" << deg << ",";
  return os.str();
}

std::string rays_key(const std::vector<LatticeVector>& rays) {
  std::ostringstream os;
  for (const auto& r : rays) os << r.str();
  return os.str();
}

// A candidate slope vector with its cycle covectors (independent of the base
// point); valid on a cone iff every covector pairs to zero with every
// generator.
struct Candidate {
  TwistCertificate cert;
  std::vector<LatticeVector> covectors;  // nonzero ones only
};

bool candidate_valid_on(const Candidate& c, const std::vector<LatticeVector>& gens) {
  for (const auto& cov : c.covectors)
    for (const auto& g : gens)
      if (dot(cov, g) != 0) return false;
  return true;
}

std::vector<TwistCertificate> enumerate_uncached(const TropicalCurve& g, const Divisor& d,
                                                 const Int& bound) {
  IntegerMatrix D = incidence(g);
  LatticeVector target(g.vertices().size());
  for (std::size_t i = 0; i < g.vertices().size(); ++i)
    target[i] = -d.multidegree.at(g.vertices()[i].id);
  auto particular = solve_integer(D, target);
  if (!particular) return {};
  auto kernel = rational_kernel(D);
  std::size_t e = g.edges().size();
  std::size_t b = kernel.size();

  std::set<TwistCertificate> out;
  auto push_if_bounded = [&](const LatticeVector& mu) {
    for (std::size_t i = 0; i < e; ++i)
      if (boost::multiprecision::abs(mu[i]) > bound) return;
    TwistCertificate c;
    c.slopes = mu.coords();
    out.insert(c);
  };
  if (b == 0) {
    push_if_bounded(*particular);
    return {out.begin(), out.end()};
  }

  // Independent rows of the kernel matrix bound the free coefficients
  // exactly: t = S^-1 (mu_rows - mu0_rows).
  IntegerMatrix k(e, b);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < e; ++i) k(i, j) = kernel[j][i];
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < e && rows.size() < b; ++i) {
    IntegerMatrix trial(rows.size() + 1, b);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < b; ++c) trial(r, c) = k(rows[r], c);
    for (std::size_t c = 0; c < b; ++c) trial(rows.size(), c) = k(i, c);
    if (trial.rank() == rows.size() + 1) rows.push_back(i);
  }
  IntegerMatrix s(b, b);
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c) s(r, c) = k(rows[r], c);
  std::vector<Rational> row_norm(b, Rational(0));
  for (std::size_t c = 0; c < b; ++c) {
    std::vector<Rational> rhs(b, Rational(0));
    rhs[c] = 1;
    auto col = solve_rational(s, rhs);
    if (!col) throw Error("enumerate_twists: kernel rows not independent");
    for (std::size_t r = 0; r < b; ++r) row_norm[r] += boost::multiprecision::abs((*col)[r]);
  }
  Int mu0_max = 0;
  for (std::size_t r : rows) {
    Int a = boost::multiprecision::abs((*particular)[r]);
    if (a > mu0_max) mu0_max = a;
  }
  std::vector<Int> box(b);
  for (std::size_t r = 0; r < b; ++r) {
    Rational t = row_norm[r] * Rational(bound + mu0_max);
    Int ceil = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
    if (Rational(ceil) < t) ceil += 1;
    box[r] = ceil;
  }

  std::vector<Int> t(b);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == b) {
      LatticeVector mu = *particular;
      for (std::size_t j = 0; j < b; ++j) mu = mu + kernel[j] * t[j];
      push_if_bounded(mu);
      return;
    }
    for (Int v = -box[pos]; v <= box[pos]; ++v) {
      t[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

// Enumeration with covectors, memoized: the invariance sweeps re-ask for the
// same divisor many times.
const std::vector<Candidate>& cached_candidates(const TropicalCurve& g, const Divisor& d,
                                                const Int& bound) {
  thread_local std::map<std::string, std::vector<Candidate>> cache;
  std::string key = curve_key(g) + "|" + divisor_key(d) + "|" + bound.str();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Candidate> out;
  auto cycles = g.cycle_basis();
  for (auto& cert : enumerate_uncached(g, d, bound)) {
    Candidate c;
    c.cert = std::move(cert);
    for (const auto& cyc : cycles) {
      LatticeVector cov = cycle_covector(g, cyc, c.cert.slopes);
      if (!cov.is_zero()) c.covectors.push_back(cov);
    }
    out.push_back(std::move(c));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

// Extreme rays of { x >= 0, equations x = 0 }, memoized on the reduced
// equation lattice.
const std::vector<LatticeVector>& cached_consistency_cone(int dim,
                                                          std::vector<LatticeVector> eqs) {
  thread_local std::map<std::string, std::vector<LatticeVector>> cache;
  if (!eqs.empty()) {
    IntegerMatrix m(eqs.size(), dim);
    for (std::size_t i = 0; i < eqs.size(); ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = eqs[i][j];
    IntegerMatrix hb = hermite_row_basis(m);
    eqs.clear();
    for (std::size_t i = 0; i < hb.rows(); ++i) eqs.push_back(hb.row(i));
  }
  std::string key = std::to_string(dim) + "|" + rays_key(eqs);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  HRep h;
  h.ambient_dim = dim;
  h.equations = eqs;
  for (int i = 0; i < dim; ++i) {
    LatticeVector e(static_cast<std::size_t>(dim));
    e[i] = 1;
    h.normals.push_back(e);
  }
  return cache.emplace(key, extreme_rays(h)).first->second;
}

const std::vector<LatticeVector>& cached_intersection(const std::vector<LatticeVector>& a,
                                                      const std::vector<LatticeVector>& b,
                                                      int dim) {
  thread_local std::map<std::string, std::vector<LatticeVector>> cache;
  std::string key = std::to_string(dim) + "|" + rays_key(a) + "&" + rays_key(b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, cone_intersection(a, b, dim)).first->second;
}

bool cone_subset(const std::vector<LatticeVector>& small, const std::vector<LatticeVector>& big,
                 int dim) {
  return std::all_of(small.begin(), small.end(),
                     [&](const LatticeVector& r) { return cone_contains(big, dim, r); });
}

std::vector<std::vector<LatticeVector>> keep_maximal(
    const std::set<std::vector<LatticeVector>>& cones, int dim) {
  std::vector<std::vector<LatticeVector>> out;
  for (const auto& c : cones) {
    bool dominated = false;
    for (const auto& other : cones) {
      if (other == c) continue;
      if (cone_subset(c, other, dim) && !cone_subset(other, c, dim)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(c);
  }
  return out;
}

// Maximal support cones of one divisor, simplicial pieces decorated with the
// lex-smallest certificate. Memoized.
const std::vector<ExtCone>& cached_single_fan(const TropicalCurve& g, const Divisor& d,
                                              const Int& bound) {
  thread_local std::map<std::string, std::vector<ExtCone>> cache;
  std::string key = curve_key(g) + "|" + divisor_key(d) + "|" + bound.str();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  int dim = g.base_dim();
  const auto& candidates = cached_candidates(g, d, bound);
  std::set<std::vector<LatticeVector>> cones;
  for (const auto& c : candidates) {
    const auto& rays = cached_consistency_cone(dim, c.covectors);
    if (!rays.empty()) cones.insert(rays);
  }
  std::set<std::vector<LatticeVector>> pieces;
  for (const auto& c : keep_maximal(cones, dim))
    for (const auto& piece : triangulate_cone(c, dim)) pieces.insert(piece);

  std::vector<ExtCone> out;
  for (const auto& gens : pieces) {
    for (const auto& c : candidates)
      if (candidate_valid_on(c, gens)) {
        out.push_back({gens, {c.cert}});
        break;  // candidates are sorted lexicographically
      }
  }
  std::sort(out.begin(), out.end(),
            [](const ExtCone& a, const ExtCone& b) { return a.generators < b.generators; });
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

Int TwistProblem::effective_bound() const {
  if (bound > 0) return bound;
  Int b = 0;
  for (const auto& d : divisors) b = std::max(b, default_bound(curve, d));
  return b;
}

std::vector<TwistCertificate> enumerate_twists(const TropicalCurve& g, const Divisor& d,
                                               const Int& bound) {
  std::vector<TwistCertificate> out;
  for (const auto& c : cached_candidates(g, d, bound)) out.push_back(c.cert);
  return out;
}

bool certificate_valid_on(const TropicalCurve& g, const Divisor& d, const TwistCertificate& mu,
                          const std::vector<LatticeVector>& cone_generators) {
  Divisor dv = div_of(PLFunction{"", mu.slopes, {}}, g);
  for (const auto& [v, deg] : dv.multidegree)
    if (deg != -d.multidegree.at(v)) return false;
  for (const auto& cyc : g.cycle_basis()) {
    LatticeVector c = cycle_covector(g, cyc, mu.slopes);
    for (const auto& gen : cone_generators)
      if (dot(c, gen) != 0) return false;
  }
  return true;
}

bool certificate_valid_at(const TropicalCurve& g, const Divisor& d, const TwistCertificate& mu,
                          const LatticeVector& point) {
  return certificate_valid_on(g, d, mu, {point});
}

std::optional<TwistCertificate> find_twist(const TwistProblem& p,
                                           const std::vector<LatticeVector>& cone_generators) {
  if (p.divisors.size() != 1) throw Error("find_twist: exactly one divisor expected");
  for (const auto& c : cached_candidates(p.curve, p.divisors[0], p.effective_bound()))
    if (candidate_valid_on(c, cone_generators)) return c.cert;
  return std::nullopt;
}

ExtFan ext_fan(const TwistProblem& p, bool certified_bound) {
  if (p.divisors.size() != 1) throw Error("ext_fan: exactly one divisor expected");
  return tuple_ext_fan(p.curve, p.divisors, p.bound, certified_bound);
}

ExtFan tuple_ext_fan(const TropicalCurve& g, const std::vector<Divisor>& ds, const Int& bound,
                     bool certified_bound) {
  if (ds.empty()) throw Error("tuple_ext_fan: at least one divisor required");
  for (const auto& d : ds) {
    if (d.total() != 0) throw Error("tuple_ext_fan: divisors must have total degree 0");
    for (const auto& v : g.vertices())
      if (!d.multidegree.count(v.id)) throw Error("tuple_ext_fan: divisor missing vertex " + v.id);
  }
  TwistProblem p{g, ds, bound};
  Int B = p.effective_bound();
  int dim = g.base_dim();

  std::set<std::vector<LatticeVector>> pieces;
  for (const auto& cone : cached_single_fan(g, ds[0], B)) pieces.insert(cone.generators);
  for (std::size_t j = 1; j < ds.size(); ++j) {
    std::set<std::vector<LatticeVector>> next;
    for (const auto& a : pieces)
      for (const auto& b : cached_single_fan(g, ds[j], B)) {
        const auto& inter = cached_intersection(a, b.generators, dim);
        if (!inter.empty()) next.insert(inter);
      }
    std::set<std::vector<LatticeVector>> maximal;
    for (const auto& c : keep_maximal(next, dim)) maximal.insert(c);
    pieces = std::move(maximal);
  }

  ExtFan fan;
  fan.base_dim = dim;
  fan.bound = B;
  fan.complete = certified_bound;
  std::set<std::vector<LatticeVector>> simplicial;
  for (const auto& c : pieces)
    for (const auto& piece : triangulate_cone(c, dim)) simplicial.insert(piece);
  for (const auto& gens : simplicial) {
    ExtCone cone;
    cone.generators = gens;
    bool all_found = true;
    for (std::size_t j = 0; j < ds.size() && all_found; ++j) {
      bool found = false;
      for (const auto& c : cached_candidates(g, ds[j], B))
        if (candidate_valid_on(c, gens)) {
          cone.certificates.push_back(c.cert);
          found = true;
          break;
        }
      all_found = found;
    }
    if (all_found) fan.max_cones.push_back(std::move(cone));
  }
  std::sort(fan.max_cones.begin(), fan.max_cones.end(),
            [](const ExtCone& a, const ExtCone& b) { return a.generators < b.generators; });
  return fan;
}

bool gl_invariance_check(const TropicalCurve& g, const std::vector<Divisor>& ds,
                         const IntegerMatrix& m, const Int& bound) {
  std::size_t r = ds.size();
  if (m.rows() != r || m.cols() != r) throw Error("gl_invariance_check: matrix size mismatch");
  if (!m.is_unimodular()) throw Error("gl_invariance_check: matrix is not unimodular");
  IntegerMatrix minv = inverse_unimodular(m);

  auto transform = [&](const IntegerMatrix& mat, const std::vector<Divisor>& in) {
    std::vector<Divisor> out(r);
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& v : g.vertices()) {
        Int acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc += mat(i, j) * in[j].multidegree.at(v.id);
        out[i].multidegree[v.id] = acc;
      }
    return out;
  };
  auto row_norm = [&](const IntegerMatrix& mat) {
    Int n = 1;
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < mat.cols(); ++j) s += boost::multiprecision::abs(mat(i, j));
      if (s > n) n = s;
    }
    return n;
  };
  auto transform_certs = [&](const IntegerMatrix& mat, const std::vector<TwistCertificate>& cs) {
    std::vector<TwistCertificate> out(r);
    for (std::size_t i = 0; i < r; ++i) {
      out[i].slopes.assign(g.edges().size(), Int(0));
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t e = 0; e < g.edges().size(); ++e)
          out[i].slopes[e] += mat(i, j) * cs[j].slopes[e];
    }
    return out;
  };

  std::vector<Divisor> mds = transform(m, ds);
  Int b0 = bound;
  if (b0 == 0) {
    Int b1 = TwistProblem{g, ds, 0}.effective_bound();
    Int b2 = TwistProblem{g, mds, 0}.effective_bound();
    b0 = b1 > b2 ? b1 : b2;
  }

  int dim = g.base_dim();
  auto covered_with_transport = [&](const std::vector<Divisor>& from,
                                    const std::vector<Divisor>& to, const IntegerMatrix& mat,
                                    const Int& scale) {
    ExtFan f = tuple_ext_fan(g, from, b0);
    ExtFan f_big = tuple_ext_fan(g, to, b0 * scale);
    for (const auto& cone : f.max_cones) {
      bool inside =
          std::any_of(f_big.max_cones.begin(), f_big.max_cones.end(), [&](const ExtCone& big) {
            return cone_subset(cone.generators, big.generators, dim);
          });
      if (!inside) return false;
      auto moved = transform_certs(mat, cone.certificates);
      for (std::size_t j = 0; j < r; ++j)
        if (!certificate_valid_on(g, to[j], moved[j], cone.generators)) return false;
    }
    return true;
  };
  return covered_with_transport(ds, mds, m, row_norm(m)) &&
         covered_with_transport(mds, ds, minv, row_norm(minv));
}

EtaCorrection eta_correction(const TropicalCurve& g, const ExtFan& fan, std::size_t component) {
  EtaCorrection out;
  for (const auto& cone : fan.max_cones) {
    if (component >= cone.certificates.size())
      throw Error("eta_correction: component index out of range");
    const TwistCertificate& mu = cone.certificates[component];
    EtaCorrection::PerCone pc;
    pc.generators = cone.generators;
    pc.covector = LatticeVector(g.base_dim());
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      pc.covector[g.edges()[e].length_ray] -= mu.slopes[e] * mu.slopes[e];
    for (const auto& gen : cone.generators) pc.values.push_back(dot(pc.covector, gen));
    out.cones.push_back(std::move(pc));
  }
  for (std::size_t i = 0; i < out.cones.size(); ++i)
    for (std::size_t j = i + 1; j < out.cones.size(); ++j) {
      const auto& shared = cached_intersection(out.cones[i].generators, out.cones[j].generators,
                                               g.base_dim());
      for (const auto& f : shared)
        if (dot(out.cones[i].covector, f) != dot(out.cones[j].covector, f))
          throw Error("eta_correction: discontinuity across a shared face");
    }
  return out;
}

AlmostTwistReport is_almost_twistable(const TwistProblem& p, const AlmostTwistInput& in) {
  if (p.divisors.size() != 1) throw Error("is_almost_twistable: exactly one divisor expected");
  const TropicalCurve& g = p.curve;
  const Divisor& d = p.divisors[0];
  int dim = g.base_dim();
  Int B = p.effective_bound();
  AlmostTwistReport rep;

  // U must be a subfan of the subdivision and meet every maximal cone
  for (const auto& u : in.subfan) {
    bool inside = false;
    for (const auto& c : in.subdivision.cones)
      if (cone_subset(u, in.subdivision.cone_rays(c), dim)) {
        inside = true;
        break;
      }
    if (!inside) throw Error("is_almost_twistable: U is not a subfan of the subdivision");
  }
  for (const auto& c : in.subdivision.cones) {
    auto cr = in.subdivision.cone_rays(c);
    bool met = false;
    for (const auto& u : in.subfan)
      if (!cone_intersection(cr, u, dim).empty()) {
        met = true;
        break;
      }
    if (!met) throw Error("is_almost_twistable: U misses a maximal cone of the subdivision");
  }

  // (1) alpha restricts to a twisting certificate on every cone of U
  for (std::size_t k = 0; k < in.subfan.size(); ++k) {
    auto it = in.alpha.find(k);
    if (it == in.alpha.end()) throw Error("is_almost_twistable: missing certificate on a U cone");
    if (!certificate_valid_on(g, d, it->second, in.subfan[k])) {
      rep.almost_twistable = false;
      std::ostringstream os;
      os << "alpha is not a twisting certificate on U cone " << k;
      rep.witness = os.str();
      return rep;
    }
  }
  // alpha must glue: tree-anchored values agree on shared faces of U
  {
    std::vector<std::map<VertexId, LatticeVector>> values(in.subfan.size());
    for (std::size_t k = 0; k < in.subfan.size(); ++k) {
      const auto& mu = in.alpha.at(k).slopes;
      std::map<VertexId, LatticeVector>& val = values[k];
      val[g.vertices().front().id] = LatticeVector(dim);
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
          const CurveEdge& edge = g.edges()[e];
          LatticeVector step(dim);
          step[edge.length_ray] = mu[e];
          if (val.count(edge.from) && !val.count(edge.to)) {
            val[edge.to] = val[edge.from] + step;
            grew = true;
          } else if (val.count(edge.to) && !val.count(edge.from)) {
            val[edge.from] = val[edge.to] - step;
            grew = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < in.subfan.size(); ++i)
      for (std::size_t j = i + 1; j < in.subfan.size(); ++j) {
        auto shared = cone_intersection(in.subfan[i], in.subfan[j], dim);
        for (const auto& f : shared)
          for (const auto& v : g.vertices())
            if (dot(values[i].at(v.id) - values[j].at(v.id), f) != 0) {
              rep.almost_twistable = false;
              rep.witness = "alpha does not glue across a shared face of U";
              return rep;
            }
      }
  }

  // (2) no integer point outside U lifts, up to the height cutoff
  const auto& candidates = cached_candidates(g, d, B);
  LatticeVector point(dim);
  bool ok = true;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == dim) {
      if (point.is_zero()) return;
      for (const auto& u : in.subfan)
        if (cone_contains(u, dim, point)) return;
      rep.tested_points.push_back(point);
      for (const auto& c : candidates)
        if (candidate_valid_on(c, {point})) {
          rep.liftable_points.push_back(point);
          ok = false;
          break;
        }
      return;
    }
    for (Int v = 0; v <= in.height; ++v) {
      point[pos] = v;
      rec(pos + 1);
    }
    point[pos] = 0;
  };
  rec(0);
  rep.almost_twistable = ok;
  if (!ok) rep.witness = "liftable point " + rep.liftable_points.front().str();
  return rep;
}

}  // namespace logchow
