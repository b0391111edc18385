// Multivariate Bernstein approximation on [0,1]^n and [-1,1]^n with
// Lipschitz error bounds, even-symmetrization, and homogeneous lifting to
// the unit sphere.
//
// Numerical contract: the monomial expansion uses exact 128-bit integer
// binomial arithmetic for per-axis degrees <= 60; beyond that it falls back
// to floating-point binomials, and the expansion of a degree-d approximant
// of a nonsmooth function has monomial coefficients that grow exponentially
// with d (around 1e15 at d = 128), so the expanded Polynomial loses accuracy
// when evaluated.  BernsteinForm::value() evaluates the same approximant
// stably at any degree; prefer it for function values and use the expansion
// for symbolic work at moderate degree.

#pragma once

#include <functional>
#include <vector>

#include "pvh/polynomial.hpp"

namespace pvh {

// A black-box function together with caller-supplied metadata.  `eval` must
// be deterministic and safe to call concurrently (grid sampling runs in
// parallel).
struct SampledFunction {
  int n = 1;
  std::function<double(const std::vector<double>&)> eval;
  double lipschitz = 1.0;  // > 0, estimated by the caller
  double sup_bound = 0.0;  // >= 0, sup |f| over the domain when known
};

// The Bernstein approximant of a sampled function: holds the value grid and
// offers stable evaluation plus monomial expansion.
class BernsteinForm {
 public:
  // Samples f on the tensor grid {k_1/d_1} x ... x {k_n/d_n} of [0,1]^n.
  // Requires every d_j >= 1 and a total sample count of at most 10^7.
  BernsteinForm(const SampledFunction& f01, std::vector<int> degrees);

  // The [-1,1]^n variant with uniform per-axis degree k; approximation
  // error is at most lipschitz * sqrt(n/k) in sup norm.
  static BernsteinForm shifted(const SampledFunction& f, int k);

  // Stable evaluation (nonnegative basis values, no cancellation); x lives
  // in the form's own domain ([0,1]^n or [-1,1]^n).
  double value(const std::vector<double>& x) const;

  // Expansion into sparse monomial form over the same domain.
  Polynomial expand() const;

  int nvars() const { return n_; }
  const std::vector<int>& degrees() const { return degrees_; }
  bool is_shifted() const { return shifted_; }

 private:
  BernsteinForm() = default;
  int n_ = 0;
  bool shifted_ = false;
  std::vector<int> degrees_;
  std::vector<double> values_;  // f on the node grid, axis 0 fastest
};

// Convenience wrappers returning the expansion directly.
Polynomial bernstein_poly(const SampledFunction& f01,
                          const std::vector<int>& degrees);
Polynomial bernstein_shifted(const SampledFunction& f, int k);

// (p(x) + p(-x)) / 2: drops every odd-total-degree term.
Polynomial even_part(const Polynomial& p);

// For p with only even-total-degree terms and deg(p) <= 2nu: multiplies each
// homogeneous component of degree 2t by |x|^{2(nu-t)}.  The result is
// homogeneous of degree 2nu and agrees with p on the unit sphere.
Polynomial homogeneous_lift(const Polynomial& p, int u);

// Approximation degree u = ceil(2 C_g^2 C_phi^2 n L_phi^2 (m+1)^2 2^{2m}
// / eps^2), the per-axis Bernstein degree that makes the sup error small
// enough for the certificate pipeline.  All inputs must be positive;
// saturates at LLONG_MAX when the formula overflows.
long long bernstein_degree_for(double eps, double C_g, double C_phi,
                               double L_phi, int n, int m);

// Grid estimates over [-1,1]^n (max finite-difference slope between axis
// neighbors, resp. max |f|).  resolution <= 0 picks the default per-axis
// resolution: 401 for n = 1, 101 for n = 2, 41 beyond.  Estimates, not
// bounds; report them as such.
double estimate_lipschitz(const SampledFunction& f, int resolution = 0);
double estimate_sup(const SampledFunction& f, int resolution = 0);

}  // namespace pvh
