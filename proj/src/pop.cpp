#include "pvh/pop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvh {

int PopProblem::d_f() const {
  const int deg = std::max(0, objective.degree());
  return deg / 2 + 1;
}

int PopProblem::d_g(std::size_t j) const {
  if (j >= constraints.size())
    throw std::invalid_argument("d_g: constraint index out of range");
  const int deg = std::max(0, constraints[j].degree());
  return (deg + 1) / 2;
}

void PopProblem::validate() const {
  if (nvars < 1) throw std::invalid_argument("PopProblem: need nvars >= 1");
  if (objective.nvars() != nvars)
    throw std::invalid_argument("PopProblem: objective variable count != n");
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    if (constraints[j].nvars() != nvars)
      throw std::invalid_argument("PopProblem: constraint " +
                                  std::to_string(j + 1) +
                                  " variable count != n");
    if (constraints[j].is_zero())
      throw std::invalid_argument("PopProblem: constraint " +
                                  std::to_string(j + 1) + " is the zero polynomial");
  }
  if (ball_radius) {
    if (!(*ball_radius > 0.0))
      throw std::invalid_argument("PopProblem: ball_radius must be positive");
    if (constraints.empty() ||
        !poly_close(constraints[0], ball_constraint(nvars, *ball_radius),
                    1e-12))
      throw std::invalid_argument(
          "PopProblem: ball_radius set but first constraint is not L - |x|^2");
  }
  if (homogeneous) {
    if (!is_homogeneous(objective))
      throw std::invalid_argument(
          "PopProblem: flagged homogeneous but objective is not");
    for (std::size_t j = 0; j < constraints.size(); ++j)
      if (!is_homogeneous(constraints[j]))
        throw std::invalid_argument("PopProblem: flagged homogeneous but constraint " +
                                    std::to_string(j + 1) + " is not");
  }
}

Polynomial ball_constraint(int nvars, double L) {
  return Polynomial::constant(nvars, L) - norm_sq(nvars);
}

bool detect_ball(PopProblem& prob) {
  if (prob.constraints.empty()) return false;
  const Polynomial& g = prob.constraints[0];
  const double L = g.coeff(Monomial::unit(prob.nvars));
  if (!(L > 0.0)) return false;
  if (!poly_close(g, ball_constraint(prob.nvars, L), 1e-12)) return false;
  prob.ball_radius = L;
  return true;
}

}  // namespace pvh
