#include "pvh/bounds.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace pvh {

namespace {

constexpr long long kBoundSaturation = std::numeric_limits<long long>::max();

// ceil of a positive-or-negative real bound, clamped to k >= 0, saturating.
long long ceil_clamp(double value) {
  if (!std::isfinite(value)) return kBoundSaturation;
  if (value <= 0.0) return 0;
  const double c = std::ceil(value);
  if (c >= 9.2e18) return kBoundSaturation;
  return static_cast<long long>(c);
}

}  // namespace

double reznick_bound_value(int n, int d, double theta) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("reznick_bound: need n >= 1, d >= 1");
  if (!(theta >= 1.0))
    throw std::invalid_argument("reznick_bound: need theta >= 1");
  const double nd = static_cast<double>(n) * d;
  return 2.0 * nd * (2.0 * d - 1.0) / (4.0 * std::log(2.0)) * theta -
         (n + 2.0 * d) / 2.0;
}

long long reznick_bound(int n, int d, double theta) {
  return ceil_clamp(reznick_bound_value(n, d, theta));
}

long long polya_bound(int d, double norm, double min_simplex) {
  if (d < 1) throw std::invalid_argument("polya_bound: need d >= 1");
  if (!(norm > 0.0)) throw std::invalid_argument("polya_bound: need norm > 0");
  if (!(min_simplex > 0.0))
    throw std::invalid_argument("polya_bound: need min_simplex > 0");
  const double value =
      static_cast<double>(d) * (d - 1.0) / 2.0 * norm / min_simplex - d;
  return ceil_clamp(value);
}

long long schmudgen_bound(double c, int n, int d_f, double norm,
                          double fstar) {
  if (!(c > 0.0)) throw std::invalid_argument("schmudgen_bound: need c > 0");
  if (n < 1 || d_f < 1)
    throw std::invalid_argument("schmudgen_bound: need n >= 1, d_f >= 1");
  if (!(norm > 0.0))
    throw std::invalid_argument("schmudgen_bound: need norm > 0");
  if (!(fstar > 0.0))
    throw std::invalid_argument("schmudgen_bound: need fstar > 0");
  const double df = static_cast<double>(d_f);
  const double inner =
      df * df * std::pow(static_cast<double>(n), df) * norm / fstar;
  const double value = c * df * df * (1.0 + std::pow(inner, c));
  return ceil_clamp(value);
}

double nie_schweighofer_bound(double c, int n, int d, double norm,
                              double fstar) {
  if (!(c > 0.0))
    throw std::invalid_argument("nie_schweighofer_bound: need c > 0");
  if (n < 1 || d < 1)
    throw std::invalid_argument("nie_schweighofer_bound: need n >= 1, d >= 1");
  if (!(norm > 0.0))
    throw std::invalid_argument("nie_schweighofer_bound: need norm > 0");
  if (!(fstar > 0.0))
    throw std::invalid_argument("nie_schweighofer_bound: need fstar > 0");
  const double dd = static_cast<double>(d);
  const double inner =
      dd * dd * std::pow(static_cast<double>(n), dd) * norm / fstar;
  // exp overflows to +inf on its own; that sentinel is the documented result.
  return c * std::exp(std::pow(inner, c));
}

namespace {

std::vector<double> normalized(std::vector<double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
  return x;
}

// Projected-gradient ascent (sign=+1) or descent (sign=-1) of h on the unit
// sphere from x0; returns the refined extremum value.
double refine_on_sphere(const Polynomial& h,
                        const std::vector<Polynomial>& grad,
                        std::vector<double> x, double sign) {
  const int n = h.nvars();
  double best = evaluate(h, x);
  double step = 0.1;
  for (int it = 0; it < 200 && step > 1e-12; ++it) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      g[static_cast<std::size_t>(i)] =
          evaluate(grad[static_cast<std::size_t>(i)], x);
    std::vector<double> y = x;
    for (int i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] += sign * step * g[static_cast<std::size_t>(i)];
    y = normalized(std::move(y));
    const double v = evaluate(h, y);
    if (sign * (v - best) > 0.0) {
      best = v;
      x = std::move(y);
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace

ThetaEstimate estimate_theta(const Polynomial& h, int samples,
                             std::uint64_t seed) {
  if (h.is_zero())
    throw std::invalid_argument("estimate_theta: zero polynomial");
  if (!is_homogeneous(h))
    throw std::invalid_argument("estimate_theta: polynomial not homogeneous");
  if (samples < 1)
    throw std::invalid_argument("estimate_theta: need samples >= 1");
  const int n = h.nvars();
  std::vector<Polynomial> grad;
  grad.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grad.push_back(derivative(h, i));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ThetaEstimate est;
  est.samples = samples;
  est.sup_val = -std::numeric_limits<double>::infinity();
  est.inf_val = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = gauss(rng);
    x = normalized(std::move(x));
    const double v = evaluate(h, x);
    est.sup_val = std::max(est.sup_val, v);
    est.inf_val = std::min(est.inf_val, v);
    // Refine a thin subset of starting points in both directions; refining
    // every sample would be wasted work.
    if (s % 8 == 0) {
      est.sup_val = std::max(est.sup_val, refine_on_sphere(h, grad, x, +1.0));
      est.inf_val = std::min(est.inf_val, refine_on_sphere(h, grad, x, -1.0));
    }
  }
  est.ratio = est.inf_val > 0.0
                  ? est.sup_val / est.inf_val
                  : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace pvh
