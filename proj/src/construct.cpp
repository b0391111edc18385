#include "pvh/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pvh/bernstein.hpp"
#include "pvh/bounds.hpp"
#include "pvh/monomial.hpp"
#include "pvh/sdp.hpp"

namespace pvh {

namespace {

using EvalFn = std::function<double(const std::vector<double>&)>;

std::string point_str(const std::vector<double>& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void project_ball(std::vector<double>& x, double R) {
  const double r = norm2(x);
  if (r > R && r > 0.0) {
    const double f = R / r;
    for (double& v : x) v *= f;
  }
}

// Visits every point of the per-axis grid of [-R,R]^n, projecting points
// outside the radius-R ball onto its boundary (so boundary extrema are seen).
void for_ball_grid(int n, double R, int res,
                   const std::function<void(const std::vector<double>&)>& fn) {
  if (res < 2) throw std::invalid_argument("ball grid: resolution must be >= 2");
  const double h = 2.0 * R / (res - 1);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  while (true) {
    for (int j = 0; j < n; ++j) x[j] = -R + h * idx[j];
    std::vector<double> p = x;
    project_ball(p, R);
    fn(p);
    int j = 0;
    while (j < n && ++idx[j] == res) idx[j++] = 0;
    if (j == n) break;
  }
}

// Pattern-search descent of `fn` inside the radius-R ball from `x`.
double refine_min_ball(const EvalFn& fn, std::vector<double> x, double R,
                       double h0, std::vector<double>* argmin = nullptr) {
  const int n = static_cast<int>(x.size());
  double best = fn(x);
  int budget = 6000;
  for (double h = h0; h > 1e-12 && budget > 0; h *= 0.5) {
    bool improved = true;
    while (improved && budget > 0) {
      improved = false;
      for (int j = 0; j < n && budget > 0; ++j) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          std::vector<double> cand = x;
          cand[j] += sgn * h;
          project_ball(cand, R);
          const double v = fn(cand);
          --budget;
          if (v < best - 1e-15 * (1.0 + std::fabs(best))) {
            best = v;
            x = cand;
            improved = true;
          }
        }
      }
    }
  }
  if (argmin) *argmin = x;
  return best;
}

// Maximum of `fn` over the radius-R ball: grid scan plus local refinement.
double ball_max(const EvalFn& fn, int n, double R, int res) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> arg(n, 0.0);
  for_ball_grid(n, R, res, [&](const std::vector<double>& p) {
    const double v = fn(p);
    if (v > best) {
      best = v;
      arg = p;
    }
  });
  const double h0 = 2.0 * R / (res - 1);
  const EvalFn neg = [&fn](const std::vector<double>& p) { return -fn(p); };
  return -refine_min_ball(neg, arg, R, h0);
}

// Deterministic unit-sphere sample set.
std::vector<std::vector<double>> sphere_points(int n, int count) {
  std::vector<std::vector<double>> pts;
  if (n == 1) {
    pts.push_back({1.0});
    pts.push_back({-1.0});
    return pts;
  }
  if (n == 2) {
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * i / count;
      pts.push_back({std::cos(a), std::sin(a)});
    }
    return pts;
  }
  if (n == 3) {
    pts.reserve(count);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));  // golden angle
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = ga * i;
      pts.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    return pts;
  }
  std::mt19937_64 rng(0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(n);
    double r = 0.0;
    while (r < 1e-12) {
      for (double& v : p) v = gauss(rng);
      r = norm2(p);
    }
    for (double& v : p) v /= r;
    pts.push_back(std::move(p));
  }
  return pts;
}

// Pattern search constrained to the unit sphere (perturb one coordinate,
// renormalize).
double refine_min_sphere(const EvalFn& fn, std::vector<double> x,
                         std::vector<double>* argmin = nullptr) {
  const int n = static_cast<int>(x.size());
  double best = fn(x);
  int budget = 6000;
  for (double h = 0.25; h > 1e-12 && budget > 0; h *= 0.5) {
    bool improved = true;
    while (improved && budget > 0) {
      improved = false;
      for (int j = 0; j < n && budget > 0; ++j) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          std::vector<double> cand = x;
          cand[j] += sgn * h;
          const double r = norm2(cand);
          if (r < 1e-12) continue;
          for (double& v : cand) v /= r;
          const double v = fn(cand);
          --budget;
          if (v < best - 1e-15 * (1.0 + std::fabs(best))) {
            best = v;
            x = cand;
            improved = true;
          }
        }
      }
    }
  }
  if (argmin) *argmin = x;
  return best;
}

long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

}  // namespace

LojasiewiczData icecream_lojasiewicz() { return {2.0, 0.5, true}; }

Polynomial icecream_constraint(int n) {
  if (n < 2)
    throw std::invalid_argument("icecream_constraint: need at least 2 variables");
  Polynomial g(n);
  Monomial last = Monomial::unit(n);
  last.e[n - 1] = 2;
  g.set_coeff(last, 1.0);
  for (int j = 0; j + 1 < n; ++j) {
    Monomial m = Monomial::unit(n);
    m.e[j] = 2;
    g.set_coeff(m, -1.0);
  }
  return g;
}

double icecream_dist(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("icecream_dist: need dimension >= 2");
  double rp = 0.0;
  for (int j = 0; j + 1 < n; ++j) rp += x[j] * x[j];
  rp = std::sqrt(rp);
  const double xn = x[n - 1];
  // Squared distance to the 45-degree cone surface {|y_n| = ||y'||}:
  // (1/2) min{(x_n - ||x'||)^2, (x_n + ||x'||)^2}.  Outside the solid cone
  // this is also the distance to {g >= 0}; it satisfies dist^2 <= |g|/2
  // everywhere.
  const double a = xn - rp;
  const double b = xn + rp;
  return std::sqrt(0.5 * std::min(a * a, b * b));
}

double compute_M(const Polynomial& f, const Polynomial& g, double eps,
                 int grid_res) {
  if (f.nvars() != g.nvars())
    throw std::invalid_argument("compute_M: variable count mismatch");
  if (!(eps > 0.0)) throw std::invalid_argument("compute_M: eps must be > 0");
  const int n = f.nvars();
  const double R = std::sqrt(static_cast<double>(n)) + 1.0;

  double gmax = 0.0;
  for_ball_grid(n, R, grid_res, [&](const std::vector<double>& p) {
    gmax = std::max(gmax, evaluate(g, p));
  });
  if (!(gmax > 0.0))
    throw std::runtime_error(
        "compute_M: no sample with g > 0 in the search ball; increase the "
        "resolution or check the constraint");
  const double gtol = 1e-9 * std::max(1.0, gmax);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> arg(n, 0.0);
  for_ball_grid(n, R, grid_res, [&](const std::vector<double>& p) {
    const double gv = evaluate(g, p);
    if (gv <= gtol) return;
    const double v = (evaluate(f, p) + 0.5 * eps) / gv;
    if (v < best) {
      best = v;
      arg = p;
    }
  });

  const EvalFn ratio = [&](const std::vector<double>& p) {
    const double gv = evaluate(g, p);
    if (gv <= gtol) return std::numeric_limits<double>::infinity();
    return (evaluate(f, p) + 0.5 * eps) / gv;
  };
  const double h0 = 2.0 * R / (grid_res - 1);
  return refine_min_ball(ratio, arg, R, h0);
}

double psi(const std::vector<double>& x, const ConstructState& st,
           const Polynomial& f, const Polynomial& g) {
  const double gv = evaluate(g, x);
  if (gv >= 0.0) return st.M;
  const double ratio = (evaluate(f, x) + 0.5 * st.eps) / gv;
  return std::max(st.M, ratio);
}

AnchorSet build_anchors(const Polynomial& f, const Polynomial& g,
                        const ConstructState& st, int resolution) {
  const int n = f.nvars();
  const double R = std::sqrt(static_cast<double>(n));
  AnchorSet anchors;
  for_ball_grid(n, R, resolution, [&](const std::vector<double>& p) {
    anchors.points.push_back(p);
    anchors.values.push_back(std::sqrt(psi(p, st, f, g)));
  });
  return anchors;
}

double phi_bar(const std::vector<double>& x, const ConstructState& st,
               const AnchorSet& anchors) {
  if (anchors.points.empty())
    throw std::invalid_argument("phi_bar: empty anchor set");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < anchors.points.size(); ++i) {
    const std::vector<double>& y = anchors.points[i];
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t = x[j] - y[j];
      d2 += t * t;
    }
    best = std::min(best, anchors.values[i] + st.L_phi * std::sqrt(d2));
  }
  return best;
}

ConstructState build_F(const Polynomial& f, const Polynomial& g, double eps,
                       const ConstructParams& params) {
  if (f.nvars() != g.nvars())
    throw std::invalid_argument("build_F: variable count mismatch");
  const int n = f.nvars();
  if (n < 1) throw std::invalid_argument("build_F: need at least one variable");
  if (!(eps > 0.0)) throw std::invalid_argument("build_F: eps must be > 0");
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("build_F: zero polynomial");
  if (!is_homogeneous(f) || !is_homogeneous(g))
    throw std::invalid_argument("build_F: f and g must be homogeneous");
  if (f.degree() % 2 != 0 || g.degree() % 2 != 0)
    throw std::invalid_argument("build_F: degrees must be even");
  const LojasiewiczData& loja = params.lojasiewicz;
  if (!(loja.alpha >= 1.0) || !(loja.C > 0.0))
    throw std::invalid_argument("build_F: invalid Lojasiewicz data");

  ConstructState st;
  st.eps = eps;
  const double R1 = std::sqrt(static_cast<double>(n)) + 1.0;
  const int res = params.grid_res;

  std::vector<Polynomial> df, dg;
  for (int j = 0; j < n; ++j) {
    df.push_back(derivative(f, j));
    dg.push_back(derivative(g, j));
  }
  const EvalFn abs_f = [&](const std::vector<double>& p) {
    return std::fabs(evaluate(f, p));
  };
  const EvalFn abs_g = [&](const std::vector<double>& p) {
    return std::fabs(evaluate(g, p));
  };
  const EvalFn grad_f = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (const Polynomial& d : df) {
      const double v = evaluate(d, p);
      s += v * v;
    }
    return std::sqrt(s);
  };
  const EvalFn grad_g = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (const Polynomial& d : dg) {
      const double v = evaluate(d, p);
      s += v * v;
    }
    return std::sqrt(s);
  };
  const double C_f = ball_max(abs_f, n, R1, res);
  const double C_g = ball_max(abs_g, n, R1, res);
  const double L_f = ball_max(grad_f, n, R1, res);
  const double L_g = ball_max(grad_g, n, R1, res);
  st.sup_f = C_f;
  st.sup_g = C_g;
  st.lipschitz_f = L_f;
  st.diagnostics["L_g"] = L_g;
  if (!(L_f > 0.0) || !(C_g > 0.0) || !(L_g > 0.0))
    throw std::runtime_error("build_F: degenerate constants (zero slope)");

  st.M = compute_M(f, g, eps, res);
  if (!(st.M > eps / (2.0 * C_g))) {
    std::ostringstream os;
    os << "build_F: ratio infimum M = " << st.M
       << " violates the lower bracket eps/(2 sup|g|) = "
       << eps / (2.0 * C_g);
    throw std::runtime_error(os.str());
  }

  st.delta = (1.0 / loja.C) * std::pow(eps / (2.0 * L_f), loja.alpha);
  const double C_psi = std::max(st.M, C_f / st.delta);
  const double C_phi_inner = std::sqrt(C_psi);
  const double den = L_f * C_g + (C_f + 0.5 * eps) * L_g;
  st.w = std::min({1.0, st.delta / (2.0 * L_g),
                   eps * st.delta * st.delta / (8.0 * C_g * den)});
  const double L_sqrt_xi =
      2.0 * den / (st.delta * st.delta * std::sqrt(eps / (4.0 * C_g)));
  const double L_phibar_formula = std::max(4.0 * C_phi_inner / st.w, L_sqrt_xi);
  const double C_phibar_formula =
      C_phi_inner + (2.0 * R1 - 1.0) * L_phibar_formula;
  st.C_phi = C_phibar_formula;
  st.diagnostics["C_psi"] = C_psi;
  st.diagnostics["C_phi_inner"] = C_phi_inner;
  st.diagnostics["L_sqrt_xi"] = L_sqrt_xi;
  st.diagnostics["L_phi_bar_formula"] = L_phibar_formula;

  AnchorSet anchors = build_anchors(f, g, st, params.anchor_res);
  const std::size_t A = anchors.points.size();
  double L_ext = 0.0;
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t j = i + 1; j < A; ++j) {
      double d2 = 0.0;
      for (int t = 0; t < n; ++t) {
        const double dd = anchors.points[i][t] - anchors.points[j][t];
        d2 += dd * dd;
      }
      if (d2 < 1e-24) continue;
      const double slope =
          std::fabs(anchors.values[i] - anchors.values[j]) / std::sqrt(d2);
      L_ext = std::max(L_ext, slope);
    }
  }
  st.L_phi = L_ext;
  st.diagnostics["anchor_count"] = static_cast<double>(A);
  st.diagnostics["anchor_spacing"] =
      2.0 * std::sqrt(static_cast<double>(n)) / (params.anchor_res - 1);
  st.diagnostics["L_extension"] = L_ext;

  // Target Bernstein order from the a-priori constants (m = 1, so the
  // (m+1)^2 4^m factor is 16); usually astronomically large, in which case
  // the order is clamped and the run is flagged as a demonstration.
  const double u_formula = std::ceil(
      2.0 * C_g * C_g * C_phibar_formula * C_phibar_formula * n *
      L_phibar_formula * L_phibar_formula * 16.0 / (eps * eps));
  st.diagnostics["u_formula"] = u_formula;
  long long u =
      bernstein_degree_for(eps, C_g, C_phibar_formula, L_phibar_formula, n, 1);
  const long long u_budget = static_cast<long long>(
      (std::pow(1e7, 1.0 / n) - 1.0) / 2.0);
  const long long cap = std::min(params.u_cap, std::max(1LL, u_budget));
  if (cap < 1) throw std::invalid_argument("build_F: u_cap must be >= 1");
  if (u > cap) {
    u = cap;
    st.demonstration = true;
  }
  if (u < 1) u = 1;
  st.u = u;
  st.diagnostics["u_capped"] = st.demonstration ? 1.0 : 0.0;

  SampledFunction sf;
  sf.n = n;
  sf.eval = [&](const std::vector<double>& x) {
    return phi_bar(x, st, anchors);
  };
  sf.lipschitz = std::max(L_ext, 1e-12);
  BernsteinForm B = BernsteinForm::shifted(sf, static_cast<int>(2 * u));
  st.diagnostics["bernstein_error_bound"] =
      sf.lipschitz * std::sqrt(static_cast<double>(n) / (2.0 * u));

  const Polynomial p_even = even_part(B.expand());
  st.q = homogeneous_lift(p_even, static_cast<int>(u));

  const long long d_f = f.degree() / 2;
  const long long d_g = g.degree() / 2;
  const long long nu2 = 2LL * n * u;
  st.D = std::max(nu2 + d_g, d_f);
  const Polynomial fe =
      f + eps * norm_sq_pow(n, static_cast<int>(d_f));
  st.F = norm_sq_pow(n, static_cast<int>(st.D - d_f)) * fe -
         g * st.q * st.q * norm_sq_pow(n, static_cast<int>(st.D - nu2 - d_g));

  // Sphere positivity check with local refinement of both extrema.
  const EvalFn Feval = [&](const std::vector<double>& p) {
    return evaluate(st.F, p);
  };
  const EvalFn Fneg = [&](const std::vector<double>& p) {
    return -evaluate(st.F, p);
  };
  std::vector<Polynomial> dF;
  for (int j = 0; j < n; ++j) dF.push_back(derivative(st.F, j));
  const auto pts = sphere_points(n, params.sphere_samples);
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -fmin;
  double grad_max = 0.0;
  std::vector<double> argmin = pts.front(), argmax = pts.front();
  for (const auto& p : pts) {
    const double v = Feval(p);
    if (v < fmin) {
      fmin = v;
      argmin = p;
    }
    if (v > fmax) {
      fmax = v;
      argmax = p;
    }
    double gs = 0.0;
    for (const Polynomial& d : dF) {
      const double dv = evaluate(d, p);
      gs += dv * dv;
    }
    grad_max = std::max(grad_max, std::sqrt(gs));
  }
  fmin = refine_min_sphere(Feval, argmin, &argmin);
  fmax = -refine_min_sphere(Fneg, argmax, &argmax);
  double spacing = 0.0;
  if (n == 2) {
    spacing = M_PI / params.sphere_samples;
  } else if (n >= 3) {
    spacing = 3.5 / std::sqrt(static_cast<double>(params.sphere_samples));
    if (n > 3) spacing = 2.0 * std::pow(params.sphere_samples,
                                        -1.0 / (n - 1));
  }
  const double slack = grad_max * spacing;
  const double threshold = eps / 4.0;  // eps / ((m+1) 2^m) with m = 1
  st.diagnostics["sphere_min"] = fmin;
  st.diagnostics["sphere_max"] = fmax;
  st.diagnostics["sphere_slack"] = slack;
  st.diagnostics["sphere_threshold"] = threshold;
  const bool sphere_ok = fmin >= threshold - slack;
  st.diagnostics["sphere_check"] = sphere_ok ? 1.0 : 0.0;
  for (int j = 0; j < n; ++j)
    st.diagnostics["sphere_argmin_" + std::to_string(j)] = argmin[j];
  if (params.strict && !sphere_ok) {
    std::ostringstream os;
    os << "build_F: sphere margin check failed: F" << point_str(argmin)
       << " = " << fmin << " < " << threshold << " - " << slack;
    throw std::runtime_error(os.str());
  }

  st.diagnostics["C_F_formula"] =
      C_f + eps + C_phibar_formula * C_phibar_formula * C_g;
  const double theta = fmin > 0.0
                           ? fmax / fmin
                           : std::numeric_limits<double>::infinity();
  st.diagnostics["theta_ratio"] = theta;
  st.K_bar = fmin > 0.0
                 ? reznick_bound(n, static_cast<int>(st.D), theta)
                 : -1;
  if (st.demonstration) {
    st.diagnostics["eps_backcomputed"] =
        2.0 * C_g * C_phibar_formula * 4.0 * L_phibar_formula *
        std::sqrt(static_cast<double>(n) / (2.0 * u));
    st.diagnostics["eps_certified_by_sphere"] = std::max(0.0, fmin) * 4.0;
  }
  return st;
}

double homogeneous_sos_margin(const Polynomial& p, const SolverOptions& opts) {
  if (p.is_zero())
    throw std::invalid_argument("homogeneous_sos_margin: zero polynomial");
  if (!is_homogeneous(p) || p.degree() % 2 != 0)
    throw std::invalid_argument(
        "homogeneous_sos_margin: need homogeneous even degree");
  const int n = p.nvars();
  const int t = p.degree() / 2;
  const std::vector<Monomial> basis = monomials_exact(n, t);
  const int N = static_cast<int>(basis.size());
  const std::vector<Monomial> rows_mono = monomials_exact(n, 2 * t);

  SdpProblem sdp;
  sdp.block_dims = {N};
  sdp.num_scalars = 1;
  sdp.maximize = true;
  sdp.scalar_cost = {1.0};
  sdp.block_cost.emplace_back(N);
  sdp.scalar_names = {"lambda"};
  sdp.gram_block = {0};
  sdp.notes.push_back("sum-of-squares margin over the exact-degree basis");

  std::map<Monomial, int, GrlexLess> row_of;
  for (std::size_t r = 0; r < rows_mono.size(); ++r) {
    row_of[rows_mono[r]] = static_cast<int>(r);
    sdp.monomial_index[rows_mono[r]] = static_cast<int>(r);
  }
  std::vector<SdpRow> rows(rows_mono.size());
  const Polynomial norm_t = norm_sq_pow(n, t);
  for (std::size_t r = 0; r < rows_mono.size(); ++r) {
    rows[r].rhs = p.coeff(rows_mono[r]);
    const double cn = norm_t.coeff(rows_mono[r]);
    if (cn != 0.0) rows[r].scalars.push_back({0, -cn});
  }
  for (int a = 0; a < N; ++a) {
    for (int b = a; b < N; ++b) {
      const Monomial prod = basis[a] * basis[b];
      const int r = row_of.at(prod);
      if (rows[r].blocks.empty()) {
        rows[r].blocks.push_back({0, {}});
      }
      rows[r].blocks[0].entries.push_back({a, b, 1.0});
    }
  }
  for (auto& row : rows) sdp.rows.push_back(std::move(row));
  sdp.validate();

  const SdpSolution sol = solve(sdp, opts);
  if (sol.status != SdpStatus::optimal && sol.status != SdpStatus::max_iter)
    throw std::runtime_error(std::string("homogeneous_sos_margin: solver failed: ") +
                             to_string(sol.status));
  return sol.scalars.at(0);
}

long long reznick_order(ConstructState& st, int k_search_cap, int dim_cap) {
  if (st.F.is_zero())
    throw std::invalid_argument("reznick_order: state has no F");
  const int n = st.F.nvars();
  const auto it = st.diagnostics.find("theta_ratio");
  if (it == st.diagnostics.end())
    throw std::invalid_argument("reznick_order: state has no measured ratio");
  const double theta = it->second;
  st.K_bar = std::isfinite(theta)
                 ? reznick_bound(n, static_cast<int>(st.D), theta)
                 : -1;
  st.diagnostics["sos_K_found"] = -1.0;
  for (int K = 0; K <= k_search_cap; ++K) {
    const std::uint64_t dim =
        monomial_count(n, static_cast<int>(st.D) + K) -
        monomial_count(n, static_cast<int>(st.D) + K - 1);
    if (dim > static_cast<std::uint64_t>(dim_cap)) break;
    const Polynomial pk = norm_sq_pow(n, K) * st.F;
    double margin;
    try {
      margin = homogeneous_sos_margin(pk);
    } catch (const std::exception&) {
      continue;
    }
    st.diagnostics["sos_margin_K" + std::to_string(K)] = margin;
    if (margin >= -1e-6) {
      st.diagnostics["sos_K_found"] = static_cast<double>(K);
      break;
    }
  }
  return st.K_bar;
}

Rational Rational::of(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = gcd_ll(n, d);
  return Rational{n / g, d / g};
}

Rational Rational::operator+(const Rational& o) const {
  return of(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return of(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return of(num * o.num, den * o.den);
}

bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

RateExponent rate_exponent_icecream() {
  // Symbolic propagation of eps-exponents through the pipeline formulas.
  // Each quantity Q = Theta(eps^e): products add exponents, quotients
  // subtract, powers scale, square roots halve; in a sum or a max the most
  // singular term (smallest exponent) dominates as eps -> 0, in a min the
  // least singular (largest exponent) does.
  using Q = Rational;
  const auto mul = [](Q a, Q b) { return a + b; };
  const auto div_ = [](Q a, Q b) { return a - b; };
  const auto pw = [](Q a, Q k) { return a * k; };
  const auto sqrt_ = [](Q a) { return a * Q::of(1, 2); };
  const auto dominant = [](std::vector<Q> v) {  // sum / max of quantities
    return *std::min_element(v.begin(), v.end());
  };
  const auto least = [](std::vector<Q> v) {  // min of quantities
    return *std::max_element(v.begin(), v.end());
  };

  const Q cst = Q::of(0);   // eps-independent constants (M, C_f, L_f, ...)
  const Q e = Q::of(1);     // eps itself

  RateExponent out;
  const auto push = [&](const std::string& name, Q v) {
    out.chain.push_back({name, v});
    return v;
  };

  // delta = (1/C) (eps / (2 L_f))^alpha, alpha = 2 for the ice-cream cone.
  const Q delta = push("delta", pw(div_(e, cst), Q::of(2)));
  // C_psi = max(M, C_f / delta)
  const Q C_psi = push("C_psi", dominant({cst, div_(cst, delta)}));
  // C_phi = sqrt(C_psi)
  const Q C_phi = push("C_phi", sqrt_(C_psi));
  // w = min(1, delta / (2 L_g), eps delta^2 / (8 C_g [L_f C_g + (C_f+eps/2) L_g]))
  const Q ratio_den = dominant({mul(cst, cst), mul(dominant({cst, e}), cst)});
  const Q w = push(
      "w", least({cst, delta,
                  div_(mul(e, pw(delta, Q::of(2))), mul(cst, ratio_den))}));
  // L_sqrt_xi = 2 [L_f C_g + (C_f+eps/2) L_g] / (delta^2 sqrt(eps / (4 C_g)))
  const Q L_sqrt_xi = push(
      "L_sqrt_xi",
      div_(ratio_den, mul(pw(delta, Q::of(2)), sqrt_(div_(e, cst)))));
  // L_phi_bar = max(4 C_phi / w, L_sqrt_xi)
  const Q L_phi_bar =
      push("L_phi_bar", dominant({div_(C_phi, w), L_sqrt_xi}));
  // C_phi_bar = C_phi + (2 sqrt(n) + 1) L_phi_bar
  const Q C_phi_bar = push("C_phi_bar", dominant({C_phi, L_phi_bar}));
  // u = ceil(2 C_g^2 C_phi_bar^2 n L_phi_bar^2 (m+1)^2 4^m / eps^2)
  const Q u = push(
      "u", div_(mul(mul(pw(C_phi_bar, Q::of(2)), pw(L_phi_bar, Q::of(2))),
                    cst),
                pw(e, Q::of(2))));
  // d = 2u
  const Q d = push("d", u);
  (void)d;
  // C_F = C_f + eps + C_phi_bar^2 C_g
  const Q C_F = push(
      "C_F", dominant({cst, e, mul(pw(C_phi_bar, Q::of(2)), cst)}));
  // D = max(2 n u + d_g, d_f)
  const Q D = push("D", dominant({u, cst}));
  // theta = C_F / (eps / ((m+1) 2^m))
  const Q theta = div_(C_F, e);
  // K_bar = 2 n D (2D - 1) theta / (4 log 2) - (n + 2D)/2
  const Q K_bar = push(
      "K_bar", dominant({mul(mul(D, D), theta), D}));
  out.c = -K_bar.num;
  if (K_bar.den != 1)
    throw std::logic_error("rate_exponent_icecream: non-integer final exponent");
  return out;
}

}  // namespace pvh
