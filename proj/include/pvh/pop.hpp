// Polynomial optimization problem: minimize f over {g_j(x) >= 0 for all j}.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pvh/polynomial.hpp"

namespace pvh {

struct PopProblem {
  int nvars = 0;
  Polynomial objective;
  std::vector<Polynomial> constraints;  // g_j >= 0
  // When set to L, the first constraint is the ball inequality
  // g_1 = L - ‖x‖₂² (so the feasible set lies in the radius-√L ball).
  std::optional<double> ball_radius;
  // All of f, g_j homogeneous (informative; checked by validate()).
  bool homogeneous = false;

  // Half-degrees driving the relaxation sizes; recomputed on demand so they
  // can never go stale:  d_f = ⌊deg f/2⌋ + 1,  d_{g_j} = ⌈deg g_j/2⌉.
  int d_f() const;
  int d_g(std::size_t j) const;

  // Throws std::invalid_argument describing the first violation.
  void validate() const;
};

// The ball inequality L - ‖x‖₂² as a polynomial.
Polynomial ball_constraint(int nvars, double L);

// If the first constraint matches L - ‖x‖₂² coefficient-wise, record L in
// ball_radius.  Returns true when detected.
bool detect_ball(PopProblem& prob);

}  // namespace pvh
