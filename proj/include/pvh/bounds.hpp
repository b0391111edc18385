// Closed-form degree bounds for positivity certificates, plus a sampling
// estimator for the sphere condition number Θ(h) = sup h / inf h on the unit
// sphere that drives the first of them.
//
// Each calculator returns the smallest admissible integer order k >= 0 for
// its certificate family; the last one returns a real because its value
// overflows any integer type for modest inputs (that overflow is a finding,
// not an error).

#pragma once

#include <cstdint>

#include "pvh/polynomial.hpp"

namespace pvh {

// Smallest k with k >= 2·n·d·(2d−1)/(4·log 2) · θ − (n+2d)/2, clamped at 0,
// for a positive definite form of degree 2d in n variables with sphere ratio
// θ >= 1.  Saturates at the int64 maximum for astronomically large inputs.
long long reznick_bound(int n, int d, double theta);

// The same quantity before rounding/clamping (used where the astronomically
// large formula value itself is the point of the exercise).
double reznick_bound_value(int n, int d, double theta);

// Smallest k with k >= d(d−1)/2 · ‖p‖/min_Δ p − d for a degree-d form
// positive on the standard simplex with minimum min_simplex > 0 and weighted
// coefficient norm `norm`.
long long polya_bound(int d, double norm, double min_simplex);

// Smallest k with k >= c · d_f² · (1 + (d_f² nᵈᶠ ‖f‖ / f⋆)ᶜ) for f positive
// on [−1,1]ⁿ with minimum fstar > 0; c is the non-constructive constant,
// supplied by the caller rather than guessed.
long long schmudgen_bound(double c, int n, int d_f, double norm, double fstar);

// c · exp((d² nᵈ ‖f‖ / f⋆)ᶜ); returned as a real, +inf on overflow.
double nie_schweighofer_bound(double c, int n, int d, double norm,
                              double fstar);

struct ThetaEstimate {
  double sup_val = 0.0;
  double inf_val = 0.0;
  double ratio = 0.0;  // sup/inf when inf > 0, +inf otherwise
  int samples = 0;
};

// Monte-Carlo sphere scan with local refinement for sup/inf of a homogeneous
// polynomial on the unit sphere.  Deterministic for a fixed seed.
ThetaEstimate estimate_theta(const Polynomial& h, int samples,
                             std::uint64_t seed);

}  // namespace pvh
