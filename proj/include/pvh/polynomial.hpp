// Sparse multivariate polynomials over the reals.
//
// Terms are kept in a map ordered by the canonical graded-lex comparator, so
// iteration order (and therefore every derived listing: serialization, SDP
// row order, moment indexing) is deterministic.  Coefficients that become
// exactly zero are dropped immediately; the representation is always in
// normal form.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "pvh/monomial.hpp"

namespace pvh {

class Polynomial {
 public:
  explicit Polynomial(int nvars = 0);
  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int i);  // x_{i+1}, zero-based i
  static Polynomial term(Monomial m, double c);

  int nvars() const { return nvars_; }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  double coeff(const Monomial& m) const;
  void set_coeff(const Monomial& m, double c);
  void add_term(const Monomial& m, double c);

  const std::map<Monomial, double, GrlexLess>& terms() const { return terms_; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);

  std::string str() const;

 private:
  int nvars_ = 0;
  std::map<Monomial, double, GrlexLess> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(Polynomial a, double s);
Polynomial operator*(double s, Polynomial a);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

double evaluate(const Polynomial& p, const std::vector<double>& x);
Polynomial derivative(const Polynomial& p, int var);
bool is_homogeneous(const Polynomial& p);

// Homogenization to the requested total degree via a fresh last variable;
// requires target_deg >= deg(p).
Polynomial homogenize(const Polynomial& p, int target_deg);
// Substitutes 1 for the last variable (inverse of homogenize on its image).
Polynomial dehomogenize(const Polynomial& p);

// ‖x‖₂² and its powers; θ = 1 + ‖x‖₂².
Polynomial norm_sq(int nvars);
Polynomial norm_sq_pow(int nvars, int k);
Polynomial theta_poly(int nvars);
Polynomial theta_pow(int nvars, int k);
// θ^k · p.
Polynomial theta_pow_mul(const Polynomial& p, int k);

// max over terms of |c_a| · a₁!…aₙ!/|a|! (the multinomial-weighted max norm
// used by the degree-bound formulas).
double weighted_norm(const Polynomial& p);

double max_abs_coeff(const Polynomial& p);
// Coefficient-wise comparison within tol (absolute).
bool poly_close(const Polynomial& a, const Polynomial& b, double tol);

}  // namespace pvh
