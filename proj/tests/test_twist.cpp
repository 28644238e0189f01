#include <doctest.h>

#include "fixtures.hpp"
#include "logchow/polyhedra.hpp"
#include "logchow/twist.hpp"

using namespace logchow;
using fixtures::divisor;

namespace {

std::vector<LatticeVector> full_quadrant() {
  return {LatticeVector{0, 1}, LatticeVector{1, 0}};  // sorted, as the fan reports
}

}  // namespace

TEST_CASE("the zero divisor is twisted by zero everywhere") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {0, 0})}, 4};
  auto cert = find_twist(p, full_quadrant());
  REQUIRE(cert.has_value());
  CHECK(cert->slopes == std::vector<Int>{0, 0});
}

TEST_CASE("the 2-gon twists on the diagonal but not on the whole cone") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {2, -2})}, 4};
  auto diag = find_twist(p, {LatticeVector{1, 1}});
  REQUIRE(diag.has_value());
  CHECK(diag->slopes == std::vector<Int>{-1, -1});
  CHECK_FALSE(find_twist(p, full_quadrant()).has_value());
}

TEST_CASE("enumerate_twists is exhaustive within the bound") {
  TropicalCurve g = fixtures::twogon();
  Divisor d = divisor(g, {2, -2});
  auto certs = enumerate_twists(g, d, 4);
  // all (m, -2-m) with both entries within [-4, 4]
  CHECK(certs.size() == 7);
  for (const auto& c : certs) CHECK(c.slopes[0] + c.slopes[1] == -2);
  CHECK(std::is_sorted(certs.begin(), certs.end()));
}

TEST_CASE("ext fan of the 2-gon: exactly the three rays of the blowup") {
  TropicalCurve g = fixtures::twogon();
  ExtFan fan = ext_fan(TwistProblem{g, {divisor(g, {2, -2})}, 4});
  REQUIRE(fan.max_cones.size() == 3);
  CHECK(fan.max_cones[0].generators == std::vector<LatticeVector>{LatticeVector{0, 1}});
  CHECK(fan.max_cones[1].generators == std::vector<LatticeVector>{LatticeVector{1, 0}});
  CHECK(fan.max_cones[2].generators == std::vector<LatticeVector>{LatticeVector{1, 1}});
  CHECK(fan.max_cones[0].certificates[0].slopes == std::vector<Int>{-2, 0});
  CHECK(fan.max_cones[1].certificates[0].slopes == std::vector<Int>{0, -2});
  CHECK(fan.max_cones[2].certificates[0].slopes == std::vector<Int>{-1, -1});
  CHECK_FALSE(fan.complete);
  CHECK(fan.bound == 4);
}

TEST_CASE("ext fan support matches pointwise twistability") {
  // brute-force oracle: a point is in the support iff some bounded slope
  // vector twists there
  TropicalCurve g = fixtures::twogon();
  Divisor d = divisor(g, {2, -2});
  ExtFan fan = ext_fan(TwistProblem{g, {d}, 4});
  auto certs = enumerate_twists(g, d, 4);
  for (Int a = 0; a <= 10; ++a)
    for (Int b = 0; b <= 10; ++b) {
      LatticeVector p{0, 0};
      p[0] = a;
      p[1] = b;
      if (p.is_zero()) continue;
      bool oracle = false;
      for (const auto& mu : certs)
        if (certificate_valid_at(g, d, mu, p)) oracle = true;
      bool in_support = false;
      for (const auto& cone : fan.max_cones)
        if (cone_contains(cone.generators, 2, p)) in_support = true;
      CHECK_MESSAGE(oracle == in_support, "point ", p.str());
    }
}

TEST_CASE("ext fan of the zero divisor is the whole cone") {
  TropicalCurve g = fixtures::twogon();
  ExtFan fan = ext_fan(TwistProblem{g, {divisor(g, {0, 0})}, 0});
  REQUIRE(fan.max_cones.size() == 1);
  CHECK(fan.max_cones[0].generators == full_quadrant());
  CHECK(fan.max_cones[0].certificates[0].slopes == std::vector<Int>{0, 0});
}

TEST_CASE("trees twist everywhere by leaf elimination") {
  TropicalCurve path({{"a", 0}, {"b", 0}, {"c", 0}}, {},
                     {{"a", "b", 0}, {"b", "c", 1}}, 2);
  ExtFan fan = ext_fan(TwistProblem{path, {divisor(path, {3, -1, -2})}, 0});
  REQUIRE(fan.max_cones.size() == 1);
  CHECK(fan.max_cones[0].generators == full_quadrant());
  // unique slopes by leaf elimination: div(mu) = -d forces (-3, -2)
  CHECK(fan.max_cones[0].certificates[0].slopes == std::vector<Int>{-3, -2});
  Divisor check = div_of(PLFunction{"", fan.max_cones[0].certificates[0].slopes, {}}, path);
  CHECK(check.multidegree.at("a") == -3);
  CHECK(check.multidegree.at("c") == 2);
}

TEST_CASE("eta correction on the 2-gon fan") {
  TropicalCurve g = fixtures::twogon();
  ExtFan fan = ext_fan(TwistProblem{g, {divisor(g, {2, -2})}, 4});
  EtaCorrection eta = eta_correction(g, fan);
  REQUIRE(eta.cones.size() == 3);
  // diagonal ray: certificate (-1,-1), eta = -(l1 + l2), value -2 at (1,1)
  CHECK(eta.cones[2].generators[0] == (LatticeVector{1, 1}));
  CHECK(eta.cones[2].covector == (LatticeVector{-1, -1}));
  CHECK(eta.cones[2].values[0] == -2);
  // boundary rays: the twisted edge has length zero there
  CHECK(eta.cones[0].values[0] == 0);
  CHECK(eta.cones[1].values[0] == 0);
}

TEST_CASE("eta correction of the zero twist is zero") {
  TropicalCurve g = fixtures::twogon();
  ExtFan fan = ext_fan(TwistProblem{g, {divisor(g, {0, 0})}, 0});
  EtaCorrection eta = eta_correction(g, fan);
  REQUIRE(eta.cones.size() == 1);
  CHECK(eta.cones[0].covector.is_zero());
}

TEST_CASE("eta correction rejects discontinuous decorations") {
  TropicalCurve g = fixtures::twogon();
  ExtFan fan;
  fan.base_dim = 2;
  // two 2-dimensional cones sharing the diagonal with incompatible twists
  fan.max_cones.push_back(
      {{LatticeVector{1, 0}, LatticeVector{1, 1}}, {TwistCertificate{{0, 0}}}});
  fan.max_cones.push_back(
      {{LatticeVector{1, 1}, LatticeVector{0, 1}}, {TwistCertificate{{-1, -1}}}});
  CHECK_THROWS_WITH_AS(eta_correction(g, fan), doctest::Contains("discontinuity"), Error);
}

TEST_CASE("tuple fan with a zero component keeps the support") {
  TropicalCurve g = fixtures::twogon();
  ExtFan single = ext_fan(TwistProblem{g, {divisor(g, {2, -2})}, 4});
  ExtFan pair = tuple_ext_fan(g, {divisor(g, {2, -2}), divisor(g, {0, 0})}, 4);
  REQUIRE(pair.max_cones.size() == single.max_cones.size());
  for (std::size_t i = 0; i < pair.max_cones.size(); ++i) {
    CHECK(pair.max_cones[i].generators == single.max_cones[i].generators);
    CHECK(pair.max_cones[i].certificates[0] == single.max_cones[i].certificates[0]);
    for (const auto& s : pair.max_cones[i].certificates[1].slopes) CHECK(s == 0);
  }
}

TEST_CASE("tuple fan intersects the component supports") {
  // (1,-1) does not twist on the diagonal (no integer solution), so the pair
  // fan keeps only the two boundary rays
  TropicalCurve g = fixtures::twogon();
  ExtFan pair = tuple_ext_fan(g, {divisor(g, {2, -2}), divisor(g, {1, -1})}, 4);
  REQUIRE(pair.max_cones.size() == 2);
  CHECK(pair.max_cones[0].generators == std::vector<LatticeVector>{LatticeVector{0, 1}});
  CHECK(pair.max_cones[1].generators == std::vector<LatticeVector>{LatticeVector{1, 0}});
  CHECK(pair.max_cones[0].certificates[1].slopes == std::vector<Int>{-1, 0});
  CHECK(pair.max_cones[1].certificates[1].slopes == std::vector<Int>{0, -1});
}

TEST_CASE("GL invariance: identity and shear") {
  TropicalCurve g = fixtures::twogon();
  std::vector<Divisor> ds = {divisor(g, {2, -2}), divisor(g, {0, 0})};
  CHECK(gl_invariance_check(g, ds, IntegerMatrix::identity(2)));
  // DR(L1, L2) = DR(L1, L1 (x) L2)
  CHECK(gl_invariance_check(g, ds, IntegerMatrix{{1, 0}, {1, 1}}));
}

TEST_CASE("GL invariance rejects non-unimodular matrices") {
  TropicalCurve g = fixtures::twogon();
  CHECK_THROWS_WITH_AS(gl_invariance_check(g, {divisor(g, {2, -2})}, IntegerMatrix{{2}}),
                       doctest::Contains("unimodular"), Error);
}

TEST_CASE("almost twistable: a global certificate with U the whole fan") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {0, 0})}, 2};
  AlmostTwistInput in;
  in.subdivision = LocalFan::trivial(2);
  in.subfan = {full_quadrant()};
  in.alpha[0] = TwistCertificate{{0, 0}};
  in.height = 6;
  auto rep = is_almost_twistable(p, in);
  CHECK(rep.almost_twistable);
  CHECK(rep.tested_points.empty());
}

TEST_CASE("almost twistable on the subdivided 2-gon") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {2, -2})}, 4};
  AlmostTwistInput in;
  in.subdivision = LocalFan::trivial(2);
  in.subdivision.stellar_subdivide(LatticeVector{1, 1});
  in.subfan = {{LatticeVector{1, 0}}, {LatticeVector{0, 1}}, {LatticeVector{1, 1}}};
  in.alpha[0] = TwistCertificate{{0, -2}};
  in.alpha[1] = TwistCertificate{{-2, 0}};
  in.alpha[2] = TwistCertificate{{-1, -1}};
  in.height = 10;
  auto rep = is_almost_twistable(p, in);
  CHECK(rep.almost_twistable);
  CHECK(rep.liftable_points.empty());
  // exactly the off-diagonal interior points were probed
  for (const auto& pt : rep.tested_points) {
    CHECK(pt[0] != pt[1]);
    CHECK(pt[0] != 0);
    CHECK(pt[1] != 0);
  }
  CHECK(rep.tested_points.size() == 90);  // 10*10 minus 10 diagonal points
}

TEST_CASE("almost twistable fails when alpha is not a certificate on U") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {2, -2})}, 4};
  AlmostTwistInput in;
  in.subdivision = LocalFan::trivial(2);
  in.subfan = {full_quadrant()};
  in.alpha[0] = TwistCertificate{{-1, -1}};  // not consistent on the full cone
  auto rep = is_almost_twistable(p, in);
  CHECK_FALSE(rep.almost_twistable);
  CHECK(rep.witness == "alpha is not a twisting certificate on U cone 0");
}

TEST_CASE("almost twistable fails when a liftable point escapes U") {
  TropicalCurve g = fixtures::twogon();
  TwistProblem p{g, {divisor(g, {2, -2})}, 4};
  AlmostTwistInput in;
  in.subdivision = LocalFan::trivial(2);
  in.subdivision.stellar_subdivide(LatticeVector{1, 1});
  // leave the diagonal out of U: its points are twistable, so condition (2)
  // must fail
  in.subfan = {{LatticeVector{1, 0}}, {LatticeVector{0, 1}}};
  in.alpha[0] = TwistCertificate{{0, -2}};
  in.alpha[1] = TwistCertificate{{-2, 0}};
  in.height = 5;
  auto rep = is_almost_twistable(p, in);
  CHECK_FALSE(rep.almost_twistable);
  CHECK_FALSE(rep.liftable_points.empty());
  for (const auto& pt : rep.liftable_points) CHECK(pt[0] == pt[1]);
}

TEST_CASE("single-cone ext fans carry cone-global data") {
  // when the problem is twistable on the whole cone, the fan is one cone and
  // the eta correction is globally linear
  TropicalCurve g = fixtures::twogon();
  for (auto d : {divisor(g, {0, 0})}) {
    ExtFan fan = ext_fan(TwistProblem{g, {d}, 2});
    REQUIRE(fan.max_cones.size() == 1);
    EtaCorrection eta = eta_correction(g, fan);
    CHECK(eta.cones.size() == 1);
  }
}
