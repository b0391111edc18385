// Certificate construction pipeline for homogeneous problems on the
// ice-cream (second-order cone) constraint: the distance lemma, the clipped
// ratio and its Lipschitz extension, the end-to-end build, the homogeneous
// SOS margin, and the symbolic epsilon-exponent chain.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pvh/construct.hpp"

using pvh::ConstructParams;
using pvh::ConstructState;
using pvh::Monomial;
using pvh::Polynomial;
using pvh::Rational;

namespace {

Polynomial norm_sq2() {  // x1^2 + x2^2
  Polynomial f(2);
  f.add_term(Monomial({2, 0}), 1.0);
  f.add_term(Monomial({0, 2}), 1.0);
  return f;
}

Polynomial cone2() {  // x2^2 - x1^2
  Polynomial g(2);
  g.add_term(Monomial({0, 2}), 1.0);
  g.add_term(Monomial({2, 0}), -1.0);
  return g;
}

}  // namespace

TEST_CASE("cone surface distance: closed form on probe points") {
  // (1, 0): nearest surface points (±1/2, ±1/2), squared distance 1/2.
  const double d1 = pvh::icecream_dist({1.0, 0.0});
  CHECK(d1 * d1 == doctest::Approx(0.5).epsilon(1e-12));
  // (0, 2) lies inside the solid cone but off the surface: distance^2 = 2.
  const double d2 = pvh::icecream_dist({0.0, 2.0});
  CHECK(d2 * d2 == doctest::Approx(2.0).epsilon(1e-12));
  // Surface points have distance 0.
  CHECK(pvh::icecream_dist({1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(pvh::icecream_dist({0.5, -0.5}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(pvh::icecream_dist({1.0}), std::invalid_argument);
}

TEST_CASE("growth inequality dist^2 <= |g|/2 on random points") {
  const Polynomial g3 = pvh::icecream_constraint(3);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<double> x = {u(rng), u(rng), u(rng)};
    const double gval = pvh::evaluate(g3, x);
    const double d = pvh::icecream_dist(x);
    CHECK(d * d <= std::fabs(gval) / 2.0 + 1e-12);
  }
}

TEST_CASE("ice-cream constraint polynomial and growth data") {
  const Polynomial g = pvh::icecream_constraint(3);
  CHECK(g.coeff(Monomial({0, 0, 2})) == 1.0);
  CHECK(g.coeff(Monomial({2, 0, 0})) == -1.0);
  CHECK(g.coeff(Monomial({0, 2, 0})) == -1.0);
  CHECK(g.term_count() == 3);
  CHECK_THROWS_AS(pvh::icecream_constraint(1), std::invalid_argument);

  const auto loj = pvh::icecream_lojasiewicz();
  CHECK(loj.alpha == 2.0);
  CHECK(loj.C == 0.5);
  CHECK(loj.certified);
}

TEST_CASE("clipped ratio infimum matches the hand value") {
  // f = |x|^2, g = x2^2 - x1^2, eps = 0.5 on the ball of radius sqrt(2)+1.
  // The infimum of (f + 1/4)/g sits at x1 = 0, |x2| = R: 1 + (3-2sqrt2)/4.
  const double want = 1.0 + (3.0 - 2.0 * std::sqrt(2.0)) / 4.0;
  const double got = pvh::compute_M(norm_sq2(), cone2(), 0.5, 41);
  CHECK(got == doctest::Approx(want).epsilon(2e-3));

  ConstructState st;
  st.eps = 0.5;
  st.M = got;
  // psi equals M wherever the ratio does not exceed it (f >= 0 here).
  CHECK(pvh::psi({0.5, 1.0}, st, norm_sq2(), cone2()) == doctest::Approx(got));
  CHECK(pvh::psi({1.0, 0.0}, st, norm_sq2(), cone2()) == doctest::Approx(got));

  // No positivity region -> runtime_error.
  Polynomial gneg(2);
  gneg.add_term(Monomial({2, 0}), -1.0);
  gneg.add_term(Monomial({0, 2}), -1.0);
  CHECK_THROWS_AS(pvh::compute_M(norm_sq2(), gneg, 0.5, 21), std::runtime_error);
}

TEST_CASE("Lipschitz extension from anchors") {
  ConstructState st;
  st.L_phi = 1.0;
  pvh::AnchorSet anchors;
  anchors.points = {{0.0}, {1.0}};
  anchors.values = {1.0, 2.0};
  // min(1 + 0.5, 2 + 0.5) = 1.5.
  CHECK(pvh::phi_bar({0.5}, st, anchors) == doctest::Approx(1.5));
  // Extension is 1-Lipschitz.
  const double a = pvh::phi_bar({0.2}, st, anchors);
  const double b = pvh::phi_bar({0.35}, st, anchors);
  CHECK(std::fabs(a - b) <= 0.15 + 1e-12);
  pvh::AnchorSet empty;
  CHECK_THROWS_AS(pvh::phi_bar({0.0}, st, empty), std::invalid_argument);
}

TEST_CASE("end-to-end build on the two-variable cone instance") {
  ConstructParams params;
  params.grid_res = 41;
  params.anchor_res = 11;
  params.sphere_samples = 2048;
  params.u_cap = 2;
  const ConstructState st = pvh::build_F(norm_sq2(), cone2(), 0.5, params);

  CHECK(st.eps == 0.5);
  CHECK(st.demonstration);  // formula order is astronomically larger than 2
  CHECK(st.u == 2);
  CHECK(st.M == doctest::Approx(1.0 + (3.0 - 2.0 * std::sqrt(2.0)) / 4.0)
                    .epsilon(5e-3));

  // F is homogeneous of degree 2D with D = 2nu + d_g = 8 + 1 = 9.
  CHECK(st.D == 9);
  CHECK(pvh::is_homogeneous(st.F));
  CHECK(st.F.degree() == 18);
  CHECK(pvh::is_homogeneous(st.q));
  CHECK(st.q.degree() == 8);  // 2nu

  // Sphere scan: minimum comfortably above the eps/4 threshold.
  CHECK(st.diagnostics.count("sphere_min") == 1);
  CHECK(st.diagnostics.count("sphere_slack") == 1);
  CHECK(st.diagnostics.at("sphere_min") >=
        0.125 - st.diagnostics.at("sphere_slack"));
  // Hand calculation: F on the sphere is 1.5 - M(x2^2-x1^2)q^2-ish with
  // minimum about 0.457.
  CHECK(st.diagnostics.at("sphere_min") == doctest::Approx(0.457).epsilon(0.05));
  CHECK(st.diagnostics.at("sphere_max") > st.diagnostics.at("sphere_min"));
  CHECK(st.diagnostics.count("theta_ratio") == 1);
  CHECK(st.K_bar > 0);

  // Demonstration-mode diagnostics are present.
  CHECK(st.diagnostics.count("u_formula") == 1);
  CHECK(st.diagnostics.count("eps_backcomputed") == 1);
  CHECK(st.diagnostics.at("u_formula") > 2.0);
}

TEST_CASE("build_F input validation") {
  CHECK_THROWS_AS(pvh::build_F(norm_sq2(), cone2(), 0.0), std::invalid_argument);
  Polynomial inhom(2);  // 1 + x1^2: not homogeneous
  inhom.add_term(Monomial({0, 0}), 1.0);
  inhom.add_term(Monomial({2, 0}), 1.0);
  CHECK_THROWS_AS(pvh::build_F(inhom, cone2(), 0.5), std::invalid_argument);
  Polynomial oddf(2);  // degree 3: homogeneous but odd
  oddf.add_term(Monomial({3, 0}), 1.0);
  CHECK_THROWS_AS(pvh::build_F(oddf, cone2(), 0.5), std::invalid_argument);
}

TEST_CASE("homogeneous SOS margin oracles") {
  Polynomial p = norm_sq2();  // x^2 + y^2: margin exactly 1
  CHECK(pvh::homogeneous_sos_margin(p) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(pvh::homogeneous_sos_margin(cone2()) == doctest::Approx(-1.0).epsilon(1e-6));

  Polynomial sq(2);  // (x+y)^2: SOS but on the boundary, margin 0
  sq.add_term(Monomial({2, 0}), 1.0);
  sq.add_term(Monomial({1, 1}), 2.0);
  sq.add_term(Monomial({0, 2}), 1.0);
  CHECK(pvh::homogeneous_sos_margin(sq) == doctest::Approx(0.0).epsilon(1e-5).scale(1.0));

  // Homogenized Motzkin form x^4y^2 + x^2y^4 - 3x^2y^2z^2 + z^6 is
  // nonnegative but not SOS: margin strictly negative.
  Polynomial mz(3);
  mz.add_term(Monomial({4, 2, 0}), 1.0);
  mz.add_term(Monomial({2, 4, 0}), 1.0);
  mz.add_term(Monomial({2, 2, 2}), -3.0);
  mz.add_term(Monomial({0, 0, 6}), 1.0);
  CHECK(pvh::homogeneous_sos_margin(mz) < -1e-5);

  Polynomial odd(1);
  odd.add_term(Monomial({1}), 1.0);
  CHECK_THROWS_AS(pvh::homogeneous_sos_margin(odd), std::invalid_argument);
}

TEST_CASE("order search certifies the built form at K = 0") {
  ConstructParams params;
  params.grid_res = 41;
  params.anchor_res = 11;
  params.sphere_samples = 2048;
  params.u_cap = 2;
  ConstructState st = pvh::build_F(norm_sq2(), cone2(), 0.5, params);
  const long long kb = pvh::reznick_order(st, 4, 120);
  CHECK(kb == st.K_bar);
  CHECK(kb > 0);
  REQUIRE(st.diagnostics.count("sos_K_found") == 1);
  // The form is dominated by its 1.5*|x|^18 head: already SOS at K = 0.
  CHECK(st.diagnostics.at("sos_K_found") == 0.0);
  CHECK(st.diagnostics.count("sos_margin_K0") == 1);
  CHECK(st.diagnostics.at("sos_margin_K0") >= -1e-6);
}

TEST_CASE("exact rational arithmetic") {
  const Rational half = Rational::of(1, 2);
  const Rational third = Rational::of(2, 6);  // normalizes to 1/3
  CHECK(third.num == 1);
  CHECK(third.den == 3);
  CHECK((half + third) == Rational::of(5, 6));
  CHECK((half - third) == Rational::of(1, 6));
  CHECK((half * third) == Rational::of(1, 6));
  CHECK(third < half);
  CHECK(Rational::of(-2, -4) == half);
  CHECK(Rational::of(3, -6).num == -1);
}

TEST_CASE("epsilon-exponent chain is exact and ends at 65") {
  const auto rate = pvh::rate_exponent_icecream();
  REQUIRE(rate.chain.size() == 12);
  const std::vector<std::pair<std::string, Rational>> want = {
      {"delta", Rational::of(2)},
      {"C_psi", Rational::of(-2)},
      {"C_phi", Rational::of(-1)},
      {"w", Rational::of(5)},
      {"L_sqrt_xi", Rational::of(-9, 2)},
      {"L_phi_bar", Rational::of(-6)},
      {"C_phi_bar", Rational::of(-6)},
      {"u", Rational::of(-26)},
      {"d", Rational::of(-26)},
      {"C_F", Rational::of(-12)},
      {"D", Rational::of(-26)},
      {"K_bar", Rational::of(-65)},
  };
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(rate.chain[i].first == want[i].first);
    CHECK(rate.chain[i].second == want[i].second);
  }
  CHECK(rate.c == 65);
}
