// Pseudo-moment sequences and the matrices built from them.
//
// A MomentVector holds one real per monomial of degree <= max_deg, in the
// canonical graded-lex listing.  The Riesz functional extends it linearly to
// polynomials; moment and localizing matrices are its Gram-type restrictions.

#pragma once

#include <vector>

#include "pvh/monomial.hpp"
#include "pvh/polynomial.hpp"
#include "pvh/sym_matrix.hpp"

namespace pvh {

struct MomentVector {
  int nvars = 0;
  int max_deg = 0;
  std::vector<double> y;  // one entry per monomial of degree <= max_deg

  MomentVector() = default;
  MomentVector(int n, int deg);

  // Moment of a single monomial (throws when deg m > max_deg).
  double moment(const Monomial& m) const;
  void set_moment(const Monomial& m, double v);

  // Moments of the Dirac measure at x (y_a = x^a).
  static MomentVector dirac(const std::vector<double>& x, int max_deg);

 private:
  MonomialIndex index_;
};

// Riesz functional L_y(p) = sum_a p_a y_a; requires deg p <= max_deg.
double riesz(const MomentVector& y, const Polynomial& p);

// Moment matrix M_t(y): entry (i,j) = y_{a_i + a_j} over the basis of
// monomials of degree <= t.  Requires 2t <= max_deg.
SymMatrix moment_matrix(const MomentVector& y, int t);

// Localizing matrix M_t(g·y): entry (i,j) = L_y(g · x^{a_i + a_j}).
// Requires 2t + deg g <= max_deg.
SymMatrix localizing_matrix(const MomentVector& y, const Polynomial& g, int t);

}  // namespace pvh
