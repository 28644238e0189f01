#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "logchow/toric.hpp"

using namespace logchow;

namespace {

ChowClass basis_class(const ToricChow& ring, int degree, std::size_t i) {
  ChowClass c = ring.zero(degree);
  c.coords.at(i) = 1;
  return c;
}

PPSection random_section(std::mt19937& rng, const ConeComplex& cx, int degree) {
  auto basis = pp_basis(cx, degree);
  PPSection s = zero_section(cx, degree);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (const auto& b : basis) s = s + b * Rational(coeff(rng));
  return s;
}

}  // namespace

TEST_CASE("Chow ring of the projective plane has graded dimensions 1,1,1") {
  ToricChow ring(CompleteFan::projective_plane());
  CHECK(ring.graded_dimensions() == std::vector<std::size_t>{1, 1, 1});
  // all three ray divisors are the same class, with self-intersection 1
  ChowClass h = ring.divisor(0);
  CHECK(ring.divisor(1) == h);
  CHECK(ring.divisor(2) == h);
  CHECK(ring.degree_of(ring.mul(h, h)) == 1);
}

TEST_CASE("Chow ring of the projective line has graded dimensions 1,1") {
  ToricChow ring(CompleteFan::projective_line());
  CHECK(ring.graded_dimensions() == std::vector<std::size_t>{1, 1});
  CHECK(ring.divisor(0) == ring.divisor(1));
  CHECK(ring.degree_of(ring.divisor(0)) == 1);
}

TEST_CASE("blowing up a point raises the Picard rank by one") {
  ToricChow ring(fixtures::blown_up_plane());
  CHECK(ring.graded_dimensions() == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("phi kills global linear functions") {
  CompleteFan fan = CompleteFan::projective_plane();
  ToricChow ring(fan);
  CHECK(ring.phi(zero_section(ring.complex(), 1)).is_zero());
  // each ambient coordinate gives a global linear section
  for (int k = 0; k < 2; ++k) {
    PPSection lin{1, {}};
    for (const auto& c : fan.max_cones) {
      Polynomial p(2);
      for (int j = 0; j < 2; ++j)
        p = p + Polynomial::variable(2, j) * Rational(fan.rays[c[j]][k]);
      lin.per_cone[CompleteFan::cone_id(c)] = p;
    }
    validate_section(ring.complex(), lin);
    CHECK(ring.phi(lin).is_zero());
  }
}

TEST_CASE("phi is a ring homomorphism") {
  std::mt19937 rng(41);
  for (const CompleteFan& fan : {CompleteFan::projective_plane(), fixtures::blown_up_plane()}) {
    ToricChow ring(fan);
    for (int trial = 0; trial < 6; ++trial) {
      PPSection p = random_section(rng, ring.complex(), 1);
      PPSection q = random_section(rng, ring.complex(), 1);
      CHECK(ring.phi(p * q) == ring.mul(ring.phi(p), ring.phi(q)));
      PPSection p2 = random_section(rng, ring.complex(), 2);
      CHECK(ring.phi(p2 * q) == ring.mul(ring.phi(p2), ring.phi(q)));
    }
  }
}

TEST_CASE("the ray section on the plane squares to degree one") {
  ToricChow ring(CompleteFan::projective_plane());
  PPSection d0 = ring.divisor_section(0);
  ChowClass h = ring.phi(d0);
  CHECK_FALSE(h.is_zero());
  CHECK(ring.degree_of(ring.mul(h, h)) == 1);
}

TEST_CASE("point class is independent of the maximal cone") {
  for (const CompleteFan& fan : {CompleteFan::projective_plane(), fixtures::blown_up_plane()}) {
    ToricChow ring(fan);
    std::optional<ChowClass> point;
    for (const auto& c : fan.max_cones) {
      ChowClass prod = ring.unit();
      for (int i : c) prod = ring.mul(prod, ring.divisor(i));
      if (!point) point = prod;
      CHECK(*point == prod);
      CHECK(ring.degree_of(prod) == 1);
    }
  }
}

TEST_CASE("pullback preserves the unit and the point degree") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  sub.validate();
  ToricChow base(sub.base), refined(sub.refined);
  CHECK(pullback_chow(base, refined, sub, base.unit()) == refined.unit());
  ChowClass pt = base.mul(base.divisor(0), base.divisor(1));
  ChowClass pulled = pullback_chow(base, refined, sub, pt);
  CHECK(refined.degree_of(pulled) == 1);
}

TEST_CASE("hyperplane pulls back to the total transform") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  // ray 3 of the refined fan is the exceptional (1,1)
  REQUIRE(sub.refined.rays.at(3) == (LatticeVector{1, 1}));
  ChowClass pulled = pullback_chow(base, refined, sub, base.divisor(0));
  ChowClass total = refined.add(refined.divisor(0), refined.divisor(3));
  CHECK(pulled == total);
}

TEST_CASE("pushforward is a one-sided inverse of pullback") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  for (int degree = 0; degree <= 2; ++degree)
    for (std::size_t i = 0; i < base.quotient().dimension(degree); ++i) {
      ChowClass x = basis_class(base, degree, i);
      CHECK(pushforward_chow(base, refined, sub, pullback_chow(base, refined, sub, x)) == x);
    }
}

TEST_CASE("pushforward satisfies the projection formula pairing") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  for (int degree = 0; degree <= 2; ++degree) {
    int co = 2 - degree;
    for (std::size_t i = 0; i < refined.quotient().dimension(degree); ++i) {
      ChowClass x = basis_class(refined, degree, i);
      ChowClass push = pushforward_chow(base, refined, sub, x);
      for (std::size_t j = 0; j < base.quotient().dimension(co); ++j) {
        ChowClass y = basis_class(base, co, j);
        CHECK(base.pair(push, y) == refined.pair(x, pullback_chow(base, refined, sub, y)));
      }
    }
  }
}

TEST_CASE("the exceptional divisor pushes to zero and has self-intersection -1") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  ChowClass e = refined.divisor(3);
  CHECK(pushforward_chow(base, refined, sub, e).is_zero());
  ChowClass e2 = refined.mul(e, e);
  CHECK(refined.degree_of(e2) == -1);
  // E^2 pushes forward to minus the point class
  ChowClass minus_pt = base.scale(base.mul(base.divisor(0), base.divisor(1)), Rational(-1));
  CHECK(pushforward_chow(base, refined, sub, e2) == minus_pt);
}

TEST_CASE("log pushforward of a class determined on the identity is itself") {
  CompleteFan plane = CompleteFan::projective_plane();
  ToricChow base(plane);
  LogChowClass z{{plane, plane}, base.divisor(0)};
  CHECK(log_pushforward(base, z) == base.divisor(0));
}

TEST_CASE("pushforward of pulled-back divisor monomials recovers them") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  for (int i = 0; i < 3; ++i) {
    ChowClass di = pullback_chow(base, refined, sub, base.divisor(i));
    CHECK(log_pushforward(base, {sub, di}) == base.divisor(i));
    for (int j = 0; j < 3; ++j) {
      ChowClass dj = pullback_chow(base, refined, sub, base.divisor(j));
      CHECK(log_pushforward(base, {sub, refined.mul(di, dj)}) ==
            base.mul(base.divisor(i), base.divisor(j)));
    }
  }
}

TEST_CASE("pushforward commutes with phi on pulled-back sections") {
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  std::mt19937 rng(43);
  for (int degree = 1; degree <= 2; ++degree)
    for (int trial = 0; trial < 5; ++trial) {
      PPSection s = random_section(rng, base.complex(), degree);
      ChowClass via_refined = pushforward_chow(base, refined, sub,
                                               refined.phi(pullback_section(sub, s)));
      CHECK(via_refined == base.phi(s));
    }
}

TEST_CASE("log pushforward is stable under further refinement") {
  CompleteFan plane = CompleteFan::projective_plane();
  CompleteFan once = fixtures::blown_up_plane();
  CompleteFan twice = stellar_fan(once, LatticeVector{2, 1});
  FanSubdivision sub1{plane, once};
  FanSubdivision sub12{once, twice};
  FanSubdivision sub2{plane, twice};
  ToricChow base(plane), mid(once), top(twice);
  ChowClass e2 = mid.mul(mid.divisor(3), mid.divisor(3));
  ChowClass pushed_once = log_pushforward(base, {sub1, e2});
  ChowClass pushed_twice = log_pushforward(base, {sub2, pullback_chow(mid, top, sub12, e2)});
  CHECK(pushed_once == pushed_twice);
}

TEST_CASE("the squared exceptional section pushes forward to the pairing value") {
  // Phi of the barycentric ray section, squared, pushed to the plane: a
  // multiple of the point class fixed by the adjoint pairing.
  FanSubdivision sub{CompleteFan::projective_plane(), fixtures::blown_up_plane()};
  ToricChow base(sub.base), refined(sub.refined);
  ChowClass e2 = refined.mul(refined.phi(refined.divisor_section(3)),
                             refined.phi(refined.divisor_section(3)));
  ChowClass pushed = log_pushforward(base, {sub, e2});
  ChowClass pt = base.mul(base.divisor(0), base.divisor(1));
  CHECK(pushed == base.scale(pt, Rational(-1)));
  CHECK(base.degree_of(pushed) == refined.degree_of(e2));
}

TEST_CASE("phi commutes with restriction to the star of a ray") {
  std::mt19937 rng(47);
  CompleteFan fan = fixtures::blown_up_plane();
  ToricChow ring(fan);
  for (int ray = 0; ray < static_cast<int>(fan.rays.size()); ++ray) {
    ConeComplex star = star_subcomplex(fan, ray);
    star.validate();
    PPQuotient starq = star_quotient(fan, ray);
    for (int degree = 1; degree <= 2; ++degree)
      for (int trial = 0; trial < 3; ++trial) {
        PPSection s = random_section(rng, ring.complex(), degree);
        // two representatives of the same class restrict to the same class
        PPSection lifted = ring.lift(ring.phi(s));
        ChowClass a = starq.reduce(restrict_section(star, s));
        ChowClass b = starq.reduce(restrict_section(star, lifted));
        CHECK(a == b);
      }
  }
}
