#include "logchow/polyhedra.hpp"

#include <algorithm>
#include <set>

namespace logchow {

namespace {

IntegerMatrix rows_matrix(const std::vector<LatticeVector>& rows, int ambient_dim) {
  IntegerMatrix m(rows.size(), ambient_dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < ambient_dim; ++j) m(i, j) = rows[i][j];
  return m;
}

LatticeVector sign_fixed(LatticeVector v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] < 0) v = v * Int(-1);
    break;
  }
  return v;
}

}  // namespace

int cone_dim(const std::vector<LatticeVector>& rays, int ambient_dim) {
  if (rays.empty()) return 0;
  return static_cast<int>(rows_matrix(rays, ambient_dim).rank());
}

HRep cone_hrep(const std::vector<LatticeVector>& rays, int ambient_dim) {
  HRep h;
  h.ambient_dim = ambient_dim;
  // Equations: the orthogonal complement of the span.
  h.equations = rational_kernel(rows_matrix(rays, ambient_dim));
  int k = ambient_dim - static_cast<int>(h.equations.size());
  if (rays.empty()) return h;

  // Candidate facet normals: kernels of (k-1)-subsets of rays together with
  // the span equations, kept when all rays lie on one side.
  std::set<LatticeVector> found;
  std::vector<std::size_t> idx(rays.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::size_t> subset;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(subset.size()) == std::max(0, k - 1)) {
      std::vector<LatticeVector> block = h.equations;
      for (std::size_t s : subset) block.push_back(rays[s]);
      auto ker = rational_kernel(rows_matrix(block, ambient_dim));
      if (ker.size() != 1) return;
      LatticeVector n = ker[0];
      bool nonneg = true, nonpos = true;
      for (const auto& r : rays) {
        Int d = dot(n, r);
        if (d < 0) nonneg = false;
        if (d > 0) nonpos = false;
      }
      if (nonpos && !nonneg) n = n * Int(-1);
      if (nonneg || nonpos) found.insert(n);
      return;
    }
    for (std::size_t i = start; i < rays.size(); ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
  h.normals.assign(found.begin(), found.end());
  return h;
}

bool hrep_contains(const HRep& h, const LatticeVector& x) {
  for (const auto& e : h.equations)
    if (dot(e, x) != 0) return false;
  for (const auto& n : h.normals)
    if (dot(n, x) < 0) return false;
  return true;
}

namespace {

// Nonnegative rational solution of rays^T lambda = x, via rational elimination
// restricted to the simplicial case or general small systems.
std::optional<std::vector<Rational>> conic_coordinates(const std::vector<LatticeVector>& rays,
                                                       int ambient_dim, const LatticeVector& x) {
  if (rays.empty()) {
    for (std::size_t i = 0; i < x.dim(); ++i)
      if (x[i] != 0) return std::nullopt;
    return std::vector<Rational>{};
  }
  IntegerMatrix a(ambient_dim, rays.size());
  for (std::size_t c = 0; c < rays.size(); ++c)
    for (int r = 0; r < ambient_dim; ++r) a(r, c) = rays[c][r];
  std::vector<Rational> b(ambient_dim);
  for (int r = 0; r < ambient_dim; ++r) b[r] = Rational(x[r]);
  auto sol = solve_rational(a, b);
  if (!sol) return std::nullopt;
  // solve_rational picks the representative with free variables equal to 0;
  // fine for simplicial (independent) rays, which is how membership is used.
  for (const auto& l : *sol)
    if (l < 0) return std::nullopt;
  return sol;
}

}  // namespace

bool cone_contains(const std::vector<LatticeVector>& rays, int ambient_dim,
                   const LatticeVector& x) {
  if (rays.size() <= static_cast<std::size_t>(cone_dim(rays, ambient_dim)))
    return conic_coordinates(rays, ambient_dim, x).has_value();
  return hrep_contains(cone_hrep(rays, ambient_dim), x);
}

bool cone_contains_interior(const std::vector<LatticeVector>& rays, int ambient_dim,
                            const LatticeVector& x) {
  HRep h = cone_hrep(rays, ambient_dim);
  for (const auto& e : h.equations)
    if (dot(e, x) != 0) return false;
  for (const auto& n : h.normals)
    if (dot(n, x) <= 0) return false;
  return true;
}

std::vector<LatticeVector> extreme_rays(const HRep& h) {
  int d = h.ambient_dim;
  int k = d - static_cast<int>(h.equations.size());
  std::set<LatticeVector> out;
  if (k <= 0) return {};
  std::vector<std::size_t> subset;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(subset.size()) == k - 1) {
      std::vector<LatticeVector> block = h.equations;
      for (std::size_t s : subset) block.push_back(h.normals[s]);
      auto ker = rational_kernel(rows_matrix(block, d));
      if (ker.size() != 1) return;
      LatticeVector v = ker[0];
      bool plus = true, minus = true;
      for (const auto& n : h.normals) {
        Int s = dot(n, v);
        if (s < 0) plus = false;
        if (s > 0) minus = false;
      }
      if (plus && minus) throw Error("extreme_rays: region is not pointed");
      if (minus) v = v * Int(-1);
      if (plus || minus) out.insert(v);
      return;
    }
    for (std::size_t i = start; i < h.normals.size(); ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  if (k == 1) {
    // single generator: kernel of the equations, sign fixed by the normals
    auto ker = rational_kernel(rows_matrix(h.equations, d));
    if (ker.size() == 1) {
      LatticeVector v = ker[0];
      bool plus = true, minus = true;
      for (const auto& n : h.normals) {
        Int s = dot(n, v);
        if (s < 0) plus = false;
        if (s > 0) minus = false;
      }
      if (minus && !plus) v = v * Int(-1);
      if (plus || minus) out.insert(v);
    }
  } else {
    rec(0);
  }
  return {out.begin(), out.end()};
}

std::vector<LatticeVector> cone_intersection(const std::vector<LatticeVector>& a,
                                             const std::vector<LatticeVector>& b,
                                             int ambient_dim) {
  HRep ha = cone_hrep(a, ambient_dim);
  HRep hb = cone_hrep(b, ambient_dim);
  HRep h;
  h.ambient_dim = ambient_dim;
  h.equations = ha.equations;
  for (const auto& e : hb.equations) h.equations.push_back(e);
  // prune dependent equations via kernel of nothing: keep as-is, harmless
  h.normals = ha.normals;
  for (const auto& n : hb.normals) h.normals.push_back(n);
  // The span of the intersection may be smaller than the common solution set
  // of the listed equations; recover it from the candidate rays.
  std::vector<LatticeVector> rays;
  // reduce equation list to an independent basis to keep subset sizes right
  IntegerMatrix eq = rows_matrix(h.equations, ambient_dim);
  IntegerMatrix eqb = hermite_row_basis(eq);
  h.equations.clear();
  for (std::size_t i = 0; i < eqb.rows(); ++i) h.equations.push_back(eqb.row(i));
  rays = extreme_rays(h);
  // Drop rays outside either cone (possible when the combined H-rep is not
  // facet-minimal); membership is exact.
  std::vector<LatticeVector> kept;
  for (const auto& r : rays)
    if (hrep_contains(ha, r) && hrep_contains(hb, r)) kept.push_back(r);
  // The intersection can be lower-dimensional than the equation count
  // suggests; recompute extreme rays within the actual span.
  if (!kept.empty()) {
    int dk = cone_dim(kept, ambient_dim);
    int dh = ambient_dim - static_cast<int>(h.equations.size());
    if (dk < dh) {
      HRep h2 = cone_hrep(kept, ambient_dim);
      for (const auto& n : h.normals) h2.normals.push_back(n);
      kept = extreme_rays(h2);
      std::vector<LatticeVector> kept2;
      for (const auto& r : kept)
        if (hrep_contains(ha, r) && hrep_contains(hb, r)) kept2.push_back(r);
      kept = kept2;
    }
  }
  return kept;
}

std::vector<std::vector<LatticeVector>> triangulate_cone(const std::vector<LatticeVector>& rays,
                                                         int ambient_dim) {
  // reduce to extreme rays
  HRep h = cone_hrep(rays, ambient_dim);
  std::vector<LatticeVector> ext;
  if (rays.size() <= 1) {
    ext = rays;
  } else {
    ext = extreme_rays(h);
  }
  int k = cone_dim(ext, ambient_dim);
  if (ext.empty()) return {};
  if (static_cast<int>(ext.size()) == k) return {ext};

  LatticeVector apex = ext.front();  // extreme_rays is sorted, lex-smallest
  std::vector<std::vector<LatticeVector>> out;
  for (const auto& n : h.normals) {
    if (dot(n, apex) == 0) continue;  // facet contains the apex
    std::vector<LatticeVector> facet;
    for (const auto& r : ext)
      if (dot(n, r) == 0) facet.push_back(r);
    if (cone_dim(facet, ambient_dim) != k - 1) continue;  // not a facet
    for (auto piece : triangulate_cone(facet, ambient_dim)) {
      piece.push_back(apex);
      std::sort(piece.begin(), piece.end());
      out.push_back(piece);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_unimodular_cone(const std::vector<LatticeVector>& rays) {
  if (rays.empty()) return true;
  IntegerMatrix m(rays[0].dim(), rays.size());
  for (std::size_t c = 0; c < rays.size(); ++c)
    for (std::size_t r = 0; r < rays[0].dim(); ++r) m(r, c) = rays[c][r];
  auto divisors = smith_normal_form(m).diagonal();
  if (divisors.size() != rays.size()) return false;  // rays dependent
  for (const auto& d : divisors)
    if (d != 1) return false;
  return true;
}

std::optional<LatticeVector> box_point(const std::vector<LatticeVector>& rays) {
  if (rays.empty()) return std::nullopt;
  std::size_t k = rays.size();
  std::size_t d = rays[0].dim();
  if (k != d) throw Error("box_point: cone must be full-dimensional simplicial");
  if (is_unimodular_cone(rays)) return std::nullopt;

  // Bounding box of the closed parallelepiped sum lambda_i rays_i, 0<=lambda<=1.
  std::vector<Int> lo(d, Int(0)), hi(d, Int(0));
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& r : rays) {
      if (r[j] < 0) lo[j] += r[j];
      if (r[j] > 0) hi[j] += r[j];
    }

  IntegerMatrix a(d, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < d; ++r) a(r, c) = rays[c][r];

  std::optional<LatticeVector> best;
  Rational best_sum(0);
  LatticeVector x(d);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == d) {
      if (x.is_zero()) return;
      std::vector<Rational> b(d);
      for (std::size_t i = 0; i < d; ++i) b[i] = Rational(x[i]);
      auto lam = solve_rational(a, b);
      if (!lam) return;
      Rational sum(0);
      for (const auto& l : *lam) {
        if (l < 0 || l >= 1) return;
        sum += l;
      }
      if (!best || sum < best_sum || (sum == best_sum && x < *best)) {
        best = x;
        best_sum = sum;
      }
      return;
    }
    for (Int v = lo[pos]; v <= hi[pos]; ++v) {
      x[pos] = v;
      rec(pos + 1);
    }
    x[pos] = 0;
  };
  rec(0);
  if (!best) throw Error("box_point: non-unimodular cone without box point");
  return best->primitive();
}

}  // namespace logchow
