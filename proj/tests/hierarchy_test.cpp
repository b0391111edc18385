// Relaxation ladder orchestration: known bounds, certificate extraction and
// symbolic re-verification, the brute-force grid oracle, and diagnostics.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pvh/hierarchy.hpp"
#include "pvh/pop.hpp"

using pvh::Certificate;
using pvh::Monomial;
using pvh::Polynomial;
using pvh::PopProblem;
using pvh::SymMatrix;

namespace {

PopProblem min_x_on_ball() {
  PopProblem prob;
  prob.nvars = 1;
  Polynomial f(1);
  f.add_term(Monomial({1}), 1.0);
  prob.objective = f;
  prob.constraints.push_back(pvh::ball_constraint(1, 1.0));
  pvh::detect_ball(prob);
  return prob;
}

}  // namespace

TEST_CASE("min x on the unit ball solves to -1 with a tight certificate") {
  const PopProblem prob = min_x_on_ball();
  const auto res = pvh::run_hierarchy(prob, 0, 0.0);
  REQUIRE(res.trace.entries.size() == 1);
  CHECK(res.trace.entries[0].bound == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(res.trace.entries[0].status == "optimal");
  REQUIRE(res.certificates.size() == 1);
  CHECK(res.certificates[0].residual <= 1e-9);
  CHECK(res.certificates[0].k == 0);
  CHECK(res.trace.monotonicity_violations.empty());
}

TEST_CASE("unperturbed ladder without a ball is rejected") {
  PopProblem prob;
  prob.nvars = 1;
  Polynomial f(1);
  f.add_term(Monomial({2}), 1.0);
  prob.objective = f;  // no constraints at all
  CHECK_THROWS_AS(pvh::run_hierarchy(prob, 1, 0.0), std::invalid_argument);
  // With eps > 0 the same problem is legal.
  const auto res = pvh::run_hierarchy(prob, 1, 0.1);
  CHECK(res.trace.entries.size() == 2);
}

TEST_CASE("hand-built certificate verifies to machine precision") {
  // 1 + x = 0.5(1+x)^2 + 0.5(1-x^2): lambda=-1, G0 over {1,x}, G1 = [0.5].
  const PopProblem prob = min_x_on_ball();
  Certificate cert;
  cert.k = 0;
  cert.eps = 0.0;
  cert.lambda = -1.0;
  SymMatrix g0(2);
  g0.at(0, 0) = 0.5;
  g0.at(0, 1) = 0.5;
  g0.at(1, 1) = 0.5;
  SymMatrix g1(1);
  g1.at(0, 0) = 0.5;
  cert.grams = {g0, g1};
  CHECK(pvh::verify_certificate(prob, cert) <= 1e-12);

  // Wrong lambda must show up as a large residual.
  cert.lambda = -0.5;
  CHECK(pvh::verify_certificate(prob, cert) > 1e-3);
}

TEST_CASE("extract_sos splits Gram matrices into squared factors") {
  // Identity over basis {1, x}: factors recover 1 and x (up to sign/order).
  const auto facs = pvh::extract_sos(SymMatrix::identity(2), 1, 1);
  REQUIRE(facs.size() == 2);
  Polynomial sum(1);
  for (const auto& p : facs) sum += p * p;
  Polynomial want(1);
  want.add_term(Monomial({0}), 1.0);
  want.add_term(Monomial({2}), 1.0);
  CHECK(pvh::poly_close(sum, want, 1e-10));

  // Rank-one [[1,2],[2,4]] -> single factor 1 + 2x.
  SymMatrix r1(2);
  r1.at(0, 0) = 1.0;
  r1.at(0, 1) = 2.0;
  r1.at(1, 1) = 4.0;
  const auto fr = pvh::extract_sos(r1, 1, 1);
  REQUIRE(fr.size() == 1);
  Polynomial sq = fr[0] * fr[0];
  Polynomial wantsq(1);
  wantsq.add_term(Monomial({0}), 1.0);
  wantsq.add_term(Monomial({1}), 4.0);
  wantsq.add_term(Monomial({2}), 4.0);
  CHECK(pvh::poly_close(sq, wantsq, 1e-9));

  // Indefinite matrices are rejected.
  SymMatrix indef(2);
  indef.at(0, 1) = 1.0;
  CHECK_THROWS_AS(pvh::extract_sos(indef, 1, 1), std::invalid_argument);
  // Size/basis mismatch is rejected.
  CHECK_THROWS_AS(pvh::extract_sos(SymMatrix::identity(2), 2, 1),
                  std::invalid_argument);
}

TEST_CASE("sos_factors from the ladder recompose into the Gram values") {
  const PopProblem prob = min_x_on_ball();
  const auto res = pvh::run_hierarchy(prob, 0, 0.0);
  REQUIRE(res.certificates.size() == 1);
  const Certificate& cert = res.certificates[0];
  REQUIRE(cert.grams.size() == 2);
  REQUIRE(cert.sos_factors.size() == 2);
  // sigma_0 evaluated at a few points equals v'G0 v there.
  for (double x : {-0.7, 0.0, 0.3, 1.1}) {
    const std::vector<double> v = {1.0, x};
    double quad = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) quad += v[i] * cert.grams[0].at(i, j) * v[j];
    double sumsq = 0.0;
    for (const auto& p : cert.sos_factors[0]) {
      const double val = pvh::evaluate(p, {x});
      sumsq += val * val;
    }
    CHECK(sumsq == doctest::Approx(quad).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("grid oracle reproduces known minima") {
  CHECK(pvh::grid_oracle(min_x_on_ball(), 201) == doctest::Approx(-1.0).epsilon(1e-6));

  // Motzkin polynomial on the ball of radius 2: minimum 0 at |x|=|y|=1.
  PopProblem mot;
  mot.nvars = 2;
  Polynomial f(2);
  f.add_term(Monomial({4, 2}), 1.0);
  f.add_term(Monomial({2, 4}), 1.0);
  f.add_term(Monomial({2, 2}), -3.0);
  f.add_term(Monomial({0, 0}), 1.0);
  mot.objective = f;
  mot.constraints.push_back(pvh::ball_constraint(2, 4.0));
  pvh::detect_ball(mot);
  CHECK(pvh::grid_oracle(mot, 101) == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));

  // Extra constraint x >= 1/2 shifts the minimum of x^2+y^2 to 0.25.
  PopProblem half;
  half.nvars = 2;
  Polynomial f2(2);
  f2.add_term(Monomial({2, 0}), 1.0);
  f2.add_term(Monomial({0, 2}), 1.0);
  half.objective = f2;
  half.constraints.push_back(pvh::ball_constraint(2, 4.0));
  Polynomial gx(2);
  gx.add_term(Monomial({1, 0}), 1.0);
  gx.add_term(Monomial({0, 0}), -0.5);
  half.constraints.push_back(gx);
  pvh::detect_ball(half);
  CHECK(pvh::grid_oracle(half, 101) == doctest::Approx(0.25).epsilon(1e-6));

  // Guards: ball required; dimension capped at 3.
  PopProblem noball;
  noball.nvars = 1;
  noball.objective = f2;
  CHECK_THROWS_AS(pvh::grid_oracle(noball, 11), std::invalid_argument);
  PopProblem big;
  big.nvars = 4;
  Polynomial f4(4);
  f4.add_term(Monomial({2, 0, 0, 0}), 1.0);
  big.objective = f4;
  big.constraints.push_back(pvh::ball_constraint(4, 1.0));
  pvh::detect_ball(big);
  CHECK_THROWS_AS(pvh::grid_oracle(big, 11), std::invalid_argument);
}

TEST_CASE("moment form agrees with the sum-of-squares form") {
  const PopProblem prob = min_x_on_ball();
  pvh::HierarchyOptions mopts;
  mopts.moment_form = true;
  const auto mres = pvh::run_hierarchy(prob, 1, 0.0, mopts);
  const auto sres = pvh::run_hierarchy(prob, 1, 0.0);
  REQUIRE(mres.trace.entries.size() == 2);
  REQUIRE(sres.trace.entries.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(mres.trace.entries[i].bound ==
          doctest::Approx(sres.trace.entries[i].bound).epsilon(1e-6));
  // Moment form produces no certificates.
  CHECK(mres.certificates.empty());
}

TEST_CASE("convergence slope recovers a fabricated power law") {
  pvh::HierarchyTrace trace;
  for (int k = 1; k <= 6; ++k) {
    pvh::TraceEntry e;
    e.k = k;
    e.bound = 1.0 - 1.0 / (k * k);  // gap k^-2 below f_star = 1
    e.status = "optimal";
    trace.entries.push_back(e);
  }
  CHECK(pvh::convergence_slope(trace, 1.0) == doctest::Approx(-2.0).epsilon(1e-9));
  // Fewer than two usable entries -> NaN.
  pvh::HierarchyTrace tiny;
  pvh::TraceEntry only;
  only.k = 1;
  only.bound = 0.0;
  tiny.entries.push_back(only);
  CHECK(std::isnan(pvh::convergence_slope(tiny, 1.0)));
}
