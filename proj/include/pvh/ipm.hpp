// Dense primal-dual interior-point solver for the block-diagonal
// standard-form SDPs assembled elsewhere in the library.
//
// Method: infeasible-start path following with the HKM scaling direction and
// Mehrotra predictor-corrector.  Free scalars are handled through a bordered
// Schur system.  Everything is dense and deterministic; one solve runs
// single-threaded (concurrent solves on distinct problems are safe).

#pragma once

#include <string>
#include <vector>

#include "pvh/sdp.hpp"
#include "pvh/sym_matrix.hpp"

namespace pvh {

enum class SdpStatus {
  optimal,
  // Stopped short of tolerance: iteration limit, residual plateau (common on
  // degenerate optima without strict complementarity), or a late factorization
  // breakdown after reaching residuals <= 1e-2.  The best iterate seen and its
  // residuals are still returned; check SdpSolution::residuals for quality.
  max_iter,
  infeasible_primal,
  infeasible_dual,
  numerical_failure,
};

const char* to_string(SdpStatus s);

struct SolverOptions {
  double tolerance = 1e-8;  // must lie in (0, 1e-2]
  int max_iter = 100;       // >= 1
  bool verbose = false;     // per-iteration residual trace on stderr
};

struct SdpResiduals {
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::numerical_failure;
  double primal_obj = 0.0;  // declared-sense objective at the returned X, s
  double dual_obj = 0.0;    // declared-sense dual bound b·y
  std::vector<SymMatrix> block_values;  // X blocks
  std::vector<SymMatrix> dual_blocks;   // Z blocks
  std::vector<double> scalars;          // free scalar values
  std::vector<double> y;                // equality multipliers, row order
  int iterations = 0;
  SdpResiduals residuals;
  std::string diagnostics;  // populated on failures
};

// Solves the SDP; throws std::invalid_argument only for malformed inputs or
// out-of-range options.  Solver breakdowns are reported through status.
SdpSolution solve(const SdpProblem& sdp, const SolverOptions& opts = {});

}  // namespace pvh
