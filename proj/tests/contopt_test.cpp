// Sample-based relaxations for continuous objectives: grid generation,
// hand-checkable bounds, monotonicity in samples and basis degree, and the
// ordering between the rank-one and full Gram relaxations.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pvh/contopt.hpp"

using pvh::ContinuousProblem;

namespace {

ContinuousProblem cube_constrained_line() {
  // f = x with g = x^3 >= 0: feasible minimum 0, box minimum -1.  A constant
  // multiplier cannot relax the near-zero infeasible samples, so the bound
  // genuinely improves with k.
  ContinuousProblem prob;
  prob.nvars = 1;
  prob.objective = [](const std::vector<double>& x) { return x[0]; };
  prob.constraints.push_back(
      [](const std::vector<double>& x) { return x[0] * x[0] * x[0]; });
  return prob;
}

std::vector<std::vector<double>> feasible_only(
    const ContinuousProblem& prob, const std::vector<std::vector<double>>& omega) {
  std::vector<std::vector<double>> out;
  for (const auto& x : omega) {
    bool ok = true;
    for (const auto& g : prob.constraints)
      if (g(x) < -1e-9) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("sample_box grid layout and guards") {
  const auto g13 = pvh::sample_box(1, 3);
  REQUIRE(g13.size() == 3);
  CHECK(g13[0] == std::vector<double>{-1.0});
  CHECK(g13[1] == std::vector<double>{0.0});
  CHECK(g13[2] == std::vector<double>{1.0});

  // First coordinate varies fastest.
  const auto g22 = pvh::sample_box(2, 2);
  REQUIRE(g22.size() == 4);
  CHECK(g22[0] == std::vector<double>{-1.0, -1.0});
  CHECK(g22[1] == std::vector<double>{1.0, -1.0});
  CHECK(g22[2] == std::vector<double>{-1.0, 1.0});
  CHECK(g22[3] == std::vector<double>{1.0, 1.0});

  CHECK(pvh::sample_box(2, 5).size() == 25);
  CHECK_THROWS_AS(pvh::sample_box(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pvh::sample_box(3, 101), std::invalid_argument);  // > 10^6
}

TEST_CASE("constant objective solves to the constant plus eps") {
  ContinuousProblem prob;
  prob.nvars = 1;
  prob.objective = [](const std::vector<double>&) { return 2.0; };
  const auto omega = pvh::sample_box(1, 9);
  const double sdp = pvh::sdp_relaxation(prob, omega, 1, 0.01);
  CHECK(sdp == doctest::Approx(2.01).epsilon(1e-6));
  const double qc = pvh::qc_relaxation(prob, omega, 1, 0.01);
  CHECK(qc == doctest::Approx(2.01).epsilon(1e-6));
}

TEST_CASE("square objective on the box, feasible everywhere") {
  ContinuousProblem prob = pvh::builtin_problem("square");
  const auto omega = pvh::sample_box(1, 21);
  const double lam = pvh::sdp_relaxation(prob, omega, 1, 0.01);
  // The sample 0 caps the bound at f(0)+eps; nothing should push it lower by
  // much or raise it above that cap.
  CHECK(lam >= -0.0101);
  CHECK(lam <= 0.0201);
}

TEST_CASE("bounds never improve when samples are added") {
  const ContinuousProblem prob = cube_constrained_line();
  const auto coarse = pvh::sample_box(1, 11);  // subset of the fine grid
  const auto fine = pvh::sample_box(1, 21);
  for (int k : {0, 1, 2}) {
    const double lc = pvh::sdp_relaxation(prob, coarse, k, 0.05);
    const double lf = pvh::sdp_relaxation(prob, fine, k, 0.05);
    CHECK(lf <= lc + 1e-6);
  }
  const auto fc = feasible_only(prob, coarse);
  const auto ff = feasible_only(prob, fine);
  const double qcc = pvh::qc_relaxation(prob, fc, 1, 0.05);
  const double qcf = pvh::qc_relaxation(prob, ff, 1, 0.05);
  CHECK(qcf <= qcc + 1e-6);
}

TEST_CASE("bounds never degrade when the basis degree grows") {
  const ContinuousProblem prob = cube_constrained_line();
  const auto omega = pvh::sample_box(1, 17);
  double prev = -1e100;
  for (int k : {0, 1, 2}) {
    const double lam = pvh::sdp_relaxation(prob, omega, k, 0.05);
    CHECK(lam >= prev - 1e-6);
    prev = lam;
  }
  const auto feas = feasible_only(prob, omega);
  double prev_qc = -1e100;
  for (int k : {0, 1, 2}) {
    const double lam = pvh::qc_relaxation(prob, feas, k, 0.05);
    CHECK(lam >= prev_qc - 1e-6);
    prev_qc = lam;
  }
}

TEST_CASE("rank-one bound never exceeds the Gram bound") {
  for (const auto& name : pvh::builtin_problem_names()) {
    const ContinuousProblem prob = pvh::builtin_problem(name);
    const int res = prob.nvars == 1 ? 9 : 5;
    const auto omega = feasible_only(prob, pvh::sample_box(prob.nvars, res));
    REQUIRE(!omega.empty());
    for (int k : {0, 1}) {
      const double s = pvh::sdp_relaxation(prob, omega, k, 0.05);
      const double q = pvh::qc_relaxation(prob, omega, k, 0.05);
      CHECK(q <= s + 1e-6);
    }
  }
}

TEST_CASE("relaxed bound is consistent with the true minimum") {
  // abs: minimum 0; bound lies in [-eps-tol, min_omega f + eps].
  const ContinuousProblem prob = pvh::builtin_problem("abs");
  const auto omega = pvh::sample_box(1, 33);
  const double lam = pvh::sdp_relaxation(prob, omega, 2, 0.02);
  CHECK(lam <= 0.02 + 1e-6);
  CHECK(lam >= -0.02 - 1e-4);

  // expm1: minimum exp(-1) - 1 at the corner.
  const ContinuousProblem ex = pvh::builtin_problem("expm1");
  const double le = pvh::sdp_relaxation(ex, pvh::sample_box(1, 33), 2, 0.02);
  CHECK(le <= std::exp(-1.0) - 1.0 + 0.02 + 1e-6);
}

TEST_CASE("input validation") {
  const ContinuousProblem prob = cube_constrained_line();
  const auto omega = pvh::sample_box(1, 9);

  CHECK_THROWS_AS(pvh::sdp_relaxation(prob, {}, 1, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(pvh::sdp_relaxation(prob, omega, -1, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(pvh::sdp_relaxation(prob, omega, 1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(pvh::sdp_relaxation(prob, {{0.0, 0.0}}, 1, 0.05),
                  std::invalid_argument);

  // qc rejects infeasible samples and names the offender.
  bool threw = false;
  try {
    pvh::qc_relaxation(prob, {{-1.0}}, 1, 0.05);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("sample") != std::string::npos);
  }
  CHECK(threw);

  // No feasible sample at all -> runtime_error from the sdp relaxation.
  ContinuousProblem never;
  never.nvars = 1;
  never.objective = [](const std::vector<double>& x) { return x[0]; };
  never.constraints.push_back(
      [](const std::vector<double>&) { return -1.0; });
  CHECK_THROWS_AS(pvh::sdp_relaxation(never, omega, 1, 0.05),
                  std::runtime_error);

  CHECK_THROWS_AS(pvh::builtin_problem("nope"), std::invalid_argument);
  CHECK(pvh::builtin_problem_names().size() == 4);
}
