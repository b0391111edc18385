#include "pvh/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pvh/monomial.hpp"
#include "pvh/sdp.hpp"
#include "pvh/util.hpp"

namespace pvh {

namespace {

constexpr double kMonotonicityTol = 1e-6;
constexpr double kFeasTol = 1e-9;
constexpr double kEigFloor = 1e-10;

// Flip the sign so the grlex-leading coefficient is positive; makes the
// factor list deterministic across eigensolver sign conventions.
void canonicalize_sign(Polynomial& p) {
  if (p.is_zero()) return;
  const auto& last = *p.terms().rbegin();
  if (last.second < 0.0) p *= -1.0;
}

bool feasible(const PopProblem& prob, const std::vector<double>& x) {
  for (const Polynomial& g : prob.constraints)
    if (evaluate(g, x) < -kFeasTol) return false;
  return true;
}

}  // namespace

std::vector<Polynomial> extract_sos(const SymMatrix& gram, int basis_degree,
                                    int n) {
  std::vector<Polynomial> factors;
  if (gram.empty()) return factors;
  const std::vector<Monomial> basis = monomials_up_to(n, basis_degree);
  if (static_cast<int>(basis.size()) != gram.dim())
    throw std::invalid_argument(
        "extract_sos: Gram dimension " + std::to_string(gram.dim()) +
        " does not match basis size " + std::to_string(basis.size()));
  const EigResult eig = sym_eig(gram.to_dense(), true);
  const double min_eig = eig.values.front();
  if (min_eig < -1e-6)
    throw std::invalid_argument(
        "extract_sos: Gram matrix is indefinite (min eigenvalue " +
        std::to_string(min_eig) + " < -1e-6)");
  for (std::size_t idx = eig.values.size(); idx-- > 0;) {
    const double lambda = std::max(0.0, eig.values[idx]);
    if (lambda <= kEigFloor) continue;
    const double scale = std::sqrt(lambda);
    Polynomial p(n);
    for (std::size_t a = 0; a < basis.size(); ++a)
      p.add_term(basis[a], scale * eig.vectors(a, idx));
    canonicalize_sign(p);
    if (!p.is_zero()) factors.push_back(std::move(p));
  }
  return factors;
}

double verify_certificate(const PopProblem& prob, const Certificate& cert) {
  const int n = prob.nvars;
  const std::size_t m = prob.constraints.size();
  if (cert.grams.size() != m + 1)
    throw std::invalid_argument(
        "verify_certificate: expected " + std::to_string(m + 1) +
        " Gram matrices, got " + std::to_string(cert.grams.size()));
  if (cert.k < 0) throw std::invalid_argument("verify_certificate: k < 0");

  Polynomial lhs =
      theta_pow_mul(prob.objective - Polynomial::constant(n, cert.lambda),
                    cert.k);
  lhs += cert.eps * theta_pow(n, cert.k + prob.d_f());

  Polynomial rhs(n);
  for (std::size_t j = 0; j <= m; ++j) {
    const SymMatrix& g = cert.grams[j];
    if (g.empty()) continue;
    const int t = j == 0 ? cert.k + prob.d_f()
                         : cert.k + prob.d_f() - prob.d_g(j - 1);
    if (t < 0)
      throw std::invalid_argument(
          "verify_certificate: Gram present for a constraint with no degree "
          "budget at this order");
    const std::vector<Monomial> basis = monomials_up_to(n, t);
    if (static_cast<int>(basis.size()) != g.dim())
      throw std::invalid_argument(
          "verify_certificate: Gram " + std::to_string(j) + " has dim " +
          std::to_string(g.dim()) + ", basis needs " +
          std::to_string(basis.size()));
    Polynomial sigma(n);
    for (int a = 0; a < g.dim(); ++a)
      for (int b = a; b < g.dim(); ++b) {
        const double v = g.at(a, b);
        if (v == 0.0) continue;
        sigma.add_term(basis[a] * basis[b], a == b ? v : 2.0 * v);
      }
    if (j == 0)
      rhs += sigma;
    else
      rhs += sigma * prob.constraints[j - 1];
  }
  const double scale = 1.0 + max_abs_coeff(lhs);
  return max_abs_coeff(lhs - rhs) / scale;
}

HierarchyResult run_hierarchy(const PopProblem& prob, int k_max, double eps,
                              const HierarchyOptions& options) {
  prob.validate();
  if (k_max < 0) throw std::invalid_argument("run_hierarchy: k_max < 0");
  if (eps < 0.0) throw std::invalid_argument("run_hierarchy: eps < 0");
  if (eps == 0.0 && !prob.ball_radius)
    throw std::invalid_argument(
        "run_hierarchy: eps = 0 requires a ball constraint; pass eps > 0 or "
        "add the ball");

  HierarchyResult result;
  const std::size_t m = prob.constraints.size();
  for (int k = 0; k <= k_max; ++k) {
    TraceEntry entry;
    entry.k = k;
    Stopwatch watch;
    try {
      const SdpProblem sdp = options.moment_form
                                 ? assemble_moment_form(prob, k, eps)
                                 : assemble_sos_form(prob, k, eps);
      const SdpSolution sol = solve(sdp, options.solver);
      entry.solve_time_ms = watch.ms();
      entry.status = to_string(sol.status);
      const bool usable = sol.status == SdpStatus::optimal ||
                          sol.status == SdpStatus::max_iter;
      if (sol.status == SdpStatus::max_iter) entry.status += "(degraded)";
      if (usable) {
        if (options.moment_form) {
          entry.bound = sol.primal_obj;
        } else {
          entry.bound = sol.scalars.at(0);
          if (options.extract) {
            Certificate cert;
            cert.k = k;
            cert.eps = eps;
            cert.lambda = sol.scalars.at(0);
            cert.grams.assign(m + 1, SymMatrix(0));
            cert.sos_factors.assign(m + 1, {});
            for (std::size_t j = 0; j <= m; ++j) {
              const int blk = sdp.gram_block.at(j);
              if (blk < 0) continue;
              cert.grams[j] = sol.block_values.at(blk);
              const int t = j == 0 ? k + prob.d_f()
                                   : k + prob.d_f() - prob.d_g(j - 1);
              cert.sos_factors[j] =
                  extract_sos(cert.grams[j], t, prob.nvars);
            }
            cert.residual = verify_certificate(prob, cert);
            entry.residual = cert.residual;
            result.certificates.push_back(std::move(cert));
          }
        }
      } else {
        entry.status += ": " + sol.diagnostics;
      }
    } catch (const std::exception& e) {
      entry.solve_time_ms = watch.ms();
      entry.status = std::string("error: ") + e.what();
    }
    result.trace.entries.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i + 1 < result.trace.entries.size(); ++i) {
    const double a = result.trace.entries[i].bound;
    const double b = result.trace.entries[i + 1].bound;
    if (std::isfinite(a) && std::isfinite(b) && a > b + kMonotonicityTol)
      result.trace.monotonicity_violations.push_back(
          result.trace.entries[i].k);
  }
  return result;
}

double grid_oracle(const PopProblem& prob, int resolution) {
  prob.validate();
  if (!prob.ball_radius)
    throw std::invalid_argument(
        "grid_oracle: a ball constraint is required to bound the search box");
  if (resolution < 2)
    throw std::invalid_argument("grid_oracle: resolution must be >= 2");
  if (prob.nvars > 3)
    throw std::invalid_argument("grid_oracle: supported for n <= 3 only");

  const int n = prob.nvars;
  const double radius = std::sqrt(*prob.ball_radius);
  const double spacing = 2.0 * radius / (resolution - 1);
  std::vector<double> x(n), best_x;
  double best = std::numeric_limits<double>::infinity();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(resolution);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int i = 0; i < n; ++i) {
      x[i] = -radius + spacing * static_cast<double>(rem % resolution);
      rem /= resolution;
    }
    if (!feasible(prob, x)) continue;
    const double v = evaluate(prob.objective, x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  if (best_x.empty())
    throw std::runtime_error(
        "grid_oracle: no feasible grid point found; increase the resolution");

  // Pattern search from the best grid point, staying feasible.
  double h = spacing;
  int budget = 20000;
  while (h > 1e-10 && budget > 0) {
    bool improved = false;
    for (int i = 0; i < n && budget > 0; ++i) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> cand = best_x;
        cand[i] += sgn * h;
        --budget;
        if (!feasible(prob, cand)) continue;
        const double v = evaluate(prob.objective, cand);
        if (v < best - 1e-15) {
          best = v;
          best_x = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

double convergence_slope(const HierarchyTrace& trace, double f_star) {
  std::vector<double> lx, ly;
  for (const TraceEntry& e : trace.entries) {
    if (e.k < 1 || !std::isfinite(e.bound)) continue;
    const double gap = f_star - e.bound;
    if (gap <= 1e-14) continue;
    lx.push_back(std::log(static_cast<double>(e.k)));
    ly.push_back(std::log(gap));
  }
  const std::size_t m = lx.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = m * sxx - sx * sx;
  if (std::fabs(denom) < 1e-14)
    return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / denom;
}

}  // namespace pvh
