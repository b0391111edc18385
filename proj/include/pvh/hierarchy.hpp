// Orchestration of the relaxation ladder: solve orders k = 0..k_max, pull
// weighted-SOS certificates out of the Gram blocks, and re-verify the
// representation identity symbolically.

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "pvh/ipm.hpp"
#include "pvh/polynomial.hpp"
#include "pvh/pop.hpp"
#include "pvh/sym_matrix.hpp"

namespace pvh {

// A weighted-SOS certificate for the lower bound `lambda` at order `k`:
//   theta^k (f - lambda + eps·theta^{d_f}) = sigma_0 + sum_j sigma_j g_j
// with sigma_j = v_t' G_j v_t and theta = 1 + |x|^2.
struct Certificate {
  int k = 0;
  double eps = 0.0;
  double lambda = 0.0;
  // G_0..G_m in constraint order; a 0x0 matrix marks a constraint whose
  // localizing block is absent at this order (degree budget exhausted).
  std::vector<SymMatrix> grams;
  // sigma_j split into squared factors (eigendecomposition of G_j).  These
  // are a convenience; `residual` is always recomputed from the Gram
  // matrices themselves.
  std::vector<std::vector<Polynomial>> sos_factors;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct TraceEntry {
  int k = 0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::string status;
  double solve_time_ms = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct HierarchyTrace {
  std::vector<TraceEntry> entries;
  // Orders k whose bound exceeds the next order's bound by more than 1e-6
  // (the ladder should be nondecreasing; violations indicate solver noise).
  std::vector<int> monotonicity_violations;
};

struct HierarchyResult {
  HierarchyTrace trace;
  std::vector<Certificate> certificates;  // one per successfully solved order
};

struct HierarchyOptions {
  SolverOptions solver;
  bool moment_form = false;  // solve the moment-side dual instead
  bool extract = true;       // extract + verify certificates (ignored for
                             // the moment form, which has no Gram blocks)
};

// Runs orders k = 0..k_max of the relaxation with perturbation eps >= 0.
// eps = 0 requires the ball constraint (the unperturbed ladder is only
// valid on a ball); otherwise throws std::invalid_argument.  A solver
// failure at some order is recorded in the trace and later orders are
// still attempted.
HierarchyResult run_hierarchy(const PopProblem& prob, int k_max, double eps,
                              const HierarchyOptions& options = {});

// Splits a PSD Gram matrix over the monomial basis of degree <= basis_degree
// in n variables into polynomials p_i with sum p_i^2 = v' G v.  Eigenvalues
// are floored at zero; directions below 1e-10 are dropped.  Throws if the
// matrix is indefinite beyond -1e-6 or its size does not match the basis.
std::vector<Polynomial> extract_sos(const SymMatrix& gram, int basis_degree,
                                    int n);

// Recomputes the certificate residual from scratch: assembles both sides of
// the representation identity with exact polynomial arithmetic and returns
// |LHS - RHS|_inf / (1 + |LHS|_inf).  Throws on dimension mismatches.
double verify_certificate(const PopProblem& prob, const Certificate& cert);

// Brute-force upper bound on the problem minimum: scans the uniform grid of
// [-sqrt(L), sqrt(L)]^n (ball radius L required, n <= 3), keeps points with
// every g_j >= -1e-9, then refines the best one by pattern search.  Throws
// if no grid point is feasible.
double grid_oracle(const PopProblem& prob, int resolution);

// Heuristic convergence diagnostic: least-squares slope of log(f_star - rho_k)
// against log k over trace entries with k >= 1 and a positive gap.  Returns
// NaN when fewer than two entries qualify.
double convergence_slope(const HierarchyTrace& trace, double f_star);

}  // namespace pvh
