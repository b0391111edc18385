// Constructive certificate pipeline for homogeneous objectives over a single
// homogeneous inequality constraint on the unit sphere, together with the
// explicit degree bound it yields and the symbolic epsilon-exponent chain.
//
// Pipeline outline (single constraint, ball-of-anchors radius sqrt(n),
// constants measured over the enlarged ball of radius sqrt(n)+1):
//   1. M     : infimum of (f + eps/2)/g over the region where g > 0.
//   2. delta : margin below which g must stay so that f changes by < eps/2
//              when projecting onto {g >= 0} (distance estimate with the
//              caller-supplied Lojasiewicz data; certified for the ice-cream
//              constraint x_n^2 - ||x'||^2 with alpha = 2, C = 1/2).
//   3. phi   : sqrt of the clipped ratio psi = max(M, (f+eps/2)/g on g < 0),
//              sampled at a grid of anchors in the radius-sqrt(n) ball and
//              extended to all of space as a Lipschitz infimal convolution.
//   4. q     : even part of a tensor Bernstein approximant of the extension,
//              lifted to a homogeneous polynomial of degree 2nu.
//   5. F     : homogenized combination  ||x||^(2(D-df)) (f + eps ||x||^(2df))
//              - g q^2 ||x||^(2(D-2nu-dg)), positive on the unit sphere with
//              margin at least eps/4; a sphere grid plus local descent checks
//              this and measures the ratio max/min.
//   6. K_bar : order from the positivity ratio at which ||x||^(2K) F has a
//              sum-of-squares representation; small orders can be certified
//              directly with the interior-point solver.
//
// Numerical contract: the a-priori extension constant L_phibar scales like
// eps^-6 and is astronomically large at desk scale, so the anchor extension
// uses the measured Lipschitz constant of the sampled values instead (the
// minimal-Lipschitz extension of the data; the theory bounds it by L_phibar).
// The a-priori constants still decide the target Bernstein order u; whenever
// that target exceeds ConstructParams::u_cap the pipeline runs in
// demonstration mode: u is clamped, the positivity margin actually certified
// by the sphere check is reported, and the epsilon that the clamped order
// would have supported (holding the earlier-stage constants fixed) is
// back-computed into the diagnostics.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvh/ipm.hpp"
#include "pvh/polynomial.hpp"

namespace pvh {

// Distance growth data for the constraint sublevel sets:
//   dist(x, {g >= 0})^alpha <= C * max(-g(x), 0)  near the feasible set.
// `certified` marks the built-in ice-cream case (alpha = 2, C = 1/2); any
// other values are accepted but are the caller's responsibility.
struct LojasiewiczData {
  double alpha = 2.0;
  double C = 0.5;
  bool certified = false;
};

// Certified data for the ice-cream constraint x_n^2 - (x_1^2+...+x_{n-1}^2).
LojasiewiczData icecream_lojasiewicz();

// The constraint polynomial x_n^2 - (x_1^2 + ... + x_{n-1}^2), n >= 2.
Polynomial icecream_constraint(int n);

// Closed-form Euclidean distance from x (dimension >= 2) to the surface of
// the double cone {y : y_n^2 = y_1^2 + ... + y_{n-1}^2}; outside the solid
// cone this equals the distance to {y_n^2 >= ||y'||^2}, and its square is
// bounded by |g|/2 everywhere (g = x_n^2 - ||x'||^2).
double icecream_dist(const std::vector<double>& x);

// Anchor grid for the Lipschitz extension: points inside the radius-sqrt(n)
// ball with precomputed phi = sqrt(psi) values.
struct AnchorSet {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

struct ConstructParams {
  int grid_res = 51;         // per-axis resolution for constant estimation
  int anchor_res = 15;       // per-axis resolution of the anchor grid
  int sphere_samples = 8192; // deterministic sphere grid for the F check
  long long u_cap = 12;      // clamp on the Bernstein order (d = 2u <= 24
                             // stays in the exact-integer expansion regime)
  LojasiewiczData lojasiewicz = icecream_lojasiewicz();
  bool strict = false;       // throw if the sphere margin check fails even
                             // though the order was not clamped
};

struct ConstructState {
  double eps = 0.0;
  double M = 0.0;            // infimum of (f+eps/2)/g on {g > 0}
  double delta = 0.0;        // safe margin on -g
  double lipschitz_f = 0.0;  // sup of ||grad f|| over the enlarged ball
  double sup_f = 0.0;        // sup of |f| over the enlarged ball
  double sup_g = 0.0;        // sup of |g| over the enlarged ball
  double C_phi = 0.0;        // a-priori bound on the extension (drives u)
  double L_phi = 0.0;        // Lipschitz constant used by the extension
                             // (measured from the anchor data)
  double w = 0.0;            // transition width of the ratio clipping
  long long u = 0;           // Bernstein order actually used (d = 2u)
  bool demonstration = false;// true when the a-priori order was clamped
  Polynomial q;              // homogeneous multiplier, degree 2nu
  Polynomial F;              // homogeneous combination, degree 2D
  long long D = 0;           // half-degree of F
  long long K_bar = 0;       // order bound from the measured sphere ratio
  std::map<std::string, double> diagnostics;
};

// Infimum of (f(x) + eps/2) / g(x) over {x in B(0, sqrt(n)+1) : g(x) > 0},
// estimated on a grid of the given per-axis resolution and refined by
// pattern search. Throws std::runtime_error if no grid point has g > 0.
double compute_M(const Polynomial& f, const Polynomial& g, double eps,
                 int grid_res = 51);

// Clipped ratio psi(x) = M when g(x) >= 0, max(M, (f(x)+eps/2)/g(x))
// otherwise. Requires st.M and st.eps.
double psi(const std::vector<double>& x, const ConstructState& st,
           const Polynomial& f, const Polynomial& g);

// Anchor grid over the radius-sqrt(n) ball with values sqrt(psi).
AnchorSet build_anchors(const Polynomial& f, const Polynomial& g,
                        const ConstructState& st, int resolution);

// Discrete Lipschitz extension: min over anchors of value + L_phi * ||x-y||.
// Nonnegative anchor values give a function >= their minimum, and the result
// is L_phi-Lipschitz in x.
double phi_bar(const std::vector<double>& x, const ConstructState& st,
               const AnchorSet& anchors);

// Runs the full pipeline for homogeneous f (even degree) and a single
// homogeneous constraint g (even degree) with eps > 0. Returns the completed
// state; throws std::invalid_argument for malformed inputs and
// std::runtime_error when a stage fails (no feasible interior, bracket
// violation, or -- in strict mode -- a sphere point where F drops below
// eps/4 minus the grid slack, which is reported in the message).
ConstructState build_F(const Polynomial& f, const Polynomial& g, double eps,
                       const ConstructParams& params = {});

// Largest lambda such that p - lambda * ||x||^(2t) is a sum of squares over
// the exact-degree-t monomial basis, for p homogeneous of even degree 2t.
// p is a sum of squares iff the returned margin is >= 0 up to solver
// tolerance (small negative values mean "numerically on the boundary").
double homogeneous_sos_margin(const Polynomial& p,
                              const SolverOptions& opts = {});

// Order bound K_bar = reznick_bound(n, D, sphere_max/sphere_min) from the
// measured positivity ratio in st, stored into st.K_bar. When the matrix
// dimension stays within dim_cap, also searches K = 0..k_search_cap for the
// smallest K with ||x||^(2K) F certified as a sum of squares by the solver,
// recorded in st.diagnostics["sos_K_found"] (-1 if none found).
long long reznick_order(ConstructState& st, int k_search_cap = 6,
                        int dim_cap = 120);

// Exact rational, used for the symbolic epsilon-exponent bookkeeping.
struct Rational {
  long long num = 0;
  long long den = 1;
  static Rational of(long long n, long long d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  bool operator<(const Rational& o) const;
  std::string str() const;
};

// Epsilon-exponent chain of the pipeline constants for the certified
// ice-cream case: each named quantity Q satisfies Q = Theta(eps^e) as
// eps -> 0, with e derived symbolically from the defining formulas
// (products add exponents, powers scale them, sums and maxima keep the
// most singular term, minima the least singular). The final entry K_bar
// has exponent -c with c = 65.
struct RateExponent {
  std::vector<std::pair<std::string, Rational>> chain;
  long long c = 0;
};

RateExponent rate_exponent_icecream();

}  // namespace pvh
