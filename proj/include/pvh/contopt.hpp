// Relaxations for continuous (black-box) objectives over the box [-1,1]^n
// intersected with black-box inequality constraints, evaluated on finite
// sample sets.
//
// Two bound families are provided, both solved with the interior-point
// solver after lifting:
//   * sdp_relaxation: shared Gram matrices G_0..G_m (PSD) with one linear
//     inequality per sample,
//       f(x) - lambda - v(x)^T G_0 v(x) - sum_j g_j(x) v(x)^T G_j v(x) >= -eps,
//     maximizing lambda; infeasible samples (g_j(x) < 0) let the G_j terms
//     relax the constraint there.
//   * qc_relaxation: rank-one multipliers (u_j^T v(x))^2 instead of full
//     Gram matrices, valid only on feasible samples (g_j >= 0) where the
//     problem stays convex; lifted via 2x2 blocks [[1, w],[w, t]] encoding
//     t >= w^2 with w tied to u_j^T v(x).
// Every qc-feasible point maps to an sdp-feasible one (G_j = u_j u_j^T), so
// the qc bound never exceeds the sdp bound on identical inputs; both bounds
// shrink as samples are added and grow with the basis degree k.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pvh/ipm.hpp"

namespace pvh {

struct ContinuousProblem {
  int nvars = 1;
  // Deterministic black-box functions on [-1,1]^n.
  std::function<double(const std::vector<double>&)> objective;
  std::vector<std::function<double(const std::vector<double>&)>> constraints;
};

// Uniform grid over [-1,1]^n with resolution points per axis, deterministic
// ordering (first coordinate fastest). Throws when resolution < 2 or the
// total point count exceeds 10^6. The Hausdorff distance of the grid to the
// box is sqrt(n)/(resolution-1).
std::vector<std::vector<double>> sample_box(int n, int resolution);

// Gram-matrix relaxation over the sample set; returns the optimal lambda.
// Basis: monomials of degree <= k. Requires a nonempty sample set, eps > 0,
// and at least one sample satisfying every constraint up to 1e-9. Solver
// failures are reported as std::runtime_error with the status.
double sdp_relaxation(const ContinuousProblem& prob,
                      const std::vector<std::vector<double>>& omega, int k,
                      double eps, const SolverOptions& opts = {});

// Rank-one (convex quadratic) relaxation over a feasible sample set; every
// sample must satisfy g_j >= -1e-9 for all j (throws std::invalid_argument
// otherwise, naming the offending sample).
double qc_relaxation(const ContinuousProblem& prob,
                     const std::vector<std::vector<double>>& omega, int k,
                     double eps, const SolverOptions& opts = {});

// Built-in black-box test problems, selectable by name:
//   "square"     n=1  f(x) = x^2                    minimum  0
//   "abs"        n=1  f(x) = |x|                    minimum  0
//   "expm1"      n=1  f(x) = exp(x) - 1             minimum  1/e - 1
//   "plane-disk" n=2  f(x,y) = x + y on the unit disk, minimum -sqrt(2)
ContinuousProblem builtin_problem(const std::string& name);
std::vector<std::string> builtin_problem_names();

}  // namespace pvh
