#include "pvh/contopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pvh/monomial.hpp"
#include "pvh/sdp.hpp"

namespace pvh {

namespace {

constexpr double kFeasibilityTol = 1e-9;

double eval_monomial(const Monomial& m, const std::vector<double>& x) {
  double v = 1.0;
  for (std::size_t j = 0; j < m.e.size(); ++j)
    for (int t = 0; t < m.e[j]; ++t) v *= x[j];
  return v;
}

void check_inputs(const ContinuousProblem& prob,
                  const std::vector<std::vector<double>>& omega, int k,
                  double eps) {
  if (prob.nvars < 1)
    throw std::invalid_argument("relaxation: need at least one variable");
  if (!prob.objective)
    throw std::invalid_argument("relaxation: missing objective function");
  for (const auto& g : prob.constraints)
    if (!g) throw std::invalid_argument("relaxation: null constraint function");
  if (omega.empty())
    throw std::invalid_argument("relaxation: empty sample set");
  for (const auto& x : omega)
    if (static_cast<int>(x.size()) != prob.nvars)
      throw std::invalid_argument("relaxation: sample dimension mismatch");
  if (k < 0) throw std::invalid_argument("relaxation: negative basis degree");
  if (!(eps > 0.0)) throw std::invalid_argument("relaxation: eps must be > 0");
}

double extract_bound(const SdpProblem& sdp, const SolverOptions& opts,
                     const char* what) {
  const SdpSolution sol = solve(sdp, opts);
  if (sol.status != SdpStatus::optimal && sol.status != SdpStatus::max_iter) {
    std::ostringstream os;
    os << what << ": solver failed with status " << to_string(sol.status);
    throw std::runtime_error(os.str());
  }
  return sol.scalars.at(0);
}

}  // namespace

std::vector<std::vector<double>> sample_box(int n, int resolution) {
  if (n < 1) throw std::invalid_argument("sample_box: need n >= 1");
  if (resolution < 2)
    throw std::invalid_argument("sample_box: resolution must be >= 2");
  std::uint64_t count = 1;
  for (int j = 0; j < n; ++j) {
    count *= static_cast<std::uint64_t>(resolution);
    if (count > 1000000ULL)
      throw std::invalid_argument("sample_box: more than 10^6 points");
  }
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  const double h = 2.0 / (resolution - 1);
  while (true) {
    for (int j = 0; j < n; ++j) x[j] = -1.0 + h * idx[j];
    pts.push_back(x);
    int j = 0;
    while (j < n && ++idx[j] == resolution) idx[j++] = 0;
    if (j == n) break;
  }
  return pts;
}

double sdp_relaxation(const ContinuousProblem& prob,
                      const std::vector<std::vector<double>>& omega, int k,
                      double eps, const SolverOptions& opts) {
  check_inputs(prob, omega, k, eps);
  const int n = prob.nvars;
  const int m = static_cast<int>(prob.constraints.size());
  const std::vector<Monomial> basis = monomials_up_to(n, k);
  const int N = static_cast<int>(basis.size());
  const int S = static_cast<int>(omega.size());

  SdpProblem sdp;
  for (int j = 0; j <= m; ++j) sdp.block_dims.push_back(N);
  for (int i = 0; i < S; ++i) sdp.block_dims.push_back(1);
  sdp.num_scalars = 1;
  sdp.maximize = true;
  sdp.scalar_cost = {1.0};
  sdp.scalar_names = {"lambda"};
  sdp.notes.push_back("sampled Gram relaxation");

  bool any_feasible = false;
  // At a feasible sample every multiplier term is nonnegative, so the row
  // inequality caps lambda at f(x) + eps there; the optimum respects
  //   lambda <= min over feasible samples of f + eps
  // exactly, and clamping the solver output to this cap removes upward noise
  // from nearly-feasible iterates on degenerate instances.
  double cap = std::numeric_limits<double>::infinity();
  std::vector<double> V(N);
  for (int i = 0; i < S; ++i) {
    const std::vector<double>& x = omega[i];
    for (int a = 0; a < N; ++a) V[a] = eval_monomial(basis[a], x);
    SdpRow row;
    row.rhs = prob.objective(x) + eps;
    row.scalars.push_back({0, -1.0});
    bool feasible = true;
    for (int j = 0; j <= m; ++j) {
      double scale = 1.0;
      if (j >= 1) {
        scale = prob.constraints[j - 1](x);
        if (scale < -kFeasibilityTol) feasible = false;
        if (scale == 0.0) continue;
      }
      SdpBlockTerm term;
      term.block = j;
      for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b)
          term.entries.push_back({a, b, scale * V[a] * V[b]});
      row.blocks.push_back(std::move(term));
    }
    SdpBlockTerm slack;
    slack.block = m + 1 + i;
    slack.entries.push_back({0, 0, 1.0});
    row.blocks.push_back(std::move(slack));
    if (feasible) cap = std::min(cap, row.rhs);
    sdp.rows.push_back(std::move(row));
    any_feasible = any_feasible || feasible;
  }
  if (!any_feasible)
    throw std::runtime_error(
        "sdp_relaxation: no sample satisfies all constraints; refine the "
        "sample set");
  sdp.validate();
  return std::min(extract_bound(sdp, opts, "sdp_relaxation"), cap);
}

double qc_relaxation(const ContinuousProblem& prob,
                     const std::vector<std::vector<double>>& omega, int k,
                     double eps, const SolverOptions& opts) {
  check_inputs(prob, omega, k, eps);
  const int n = prob.nvars;
  const int m = static_cast<int>(prob.constraints.size());
  const std::vector<Monomial> basis = monomials_up_to(n, k);
  const int N = static_cast<int>(basis.size());
  const int S = static_cast<int>(omega.size());

  // Feasibility gate: the lifted problem is convex only where g_j >= 0.
  std::vector<std::vector<double>> gvals(S, std::vector<double>(m));
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < m; ++j) {
      gvals[i][j] = prob.constraints[j](omega[i]);
      if (gvals[i][j] < -kFeasibilityTol) {
        std::ostringstream os;
        os << "qc_relaxation: sample " << i << " violates constraint "
           << (j + 1) << " (g = " << gvals[i][j]
           << "); restrict the sample set to the feasible region";
        throw std::invalid_argument(os.str());
      }
      if (gvals[i][j] < 0.0) gvals[i][j] = 0.0;
    }
  }

  SdpProblem sdp;
  // Per sample: m+1 lifting blocks [[1, w],[w, t]] (j = 0 for the free
  // square, then one per constraint), followed by all slack blocks.
  for (int i = 0; i < S; ++i)
    for (int j = 0; j <= m; ++j) sdp.block_dims.push_back(2);
  for (int i = 0; i < S; ++i) sdp.block_dims.push_back(1);
  sdp.num_scalars = 1 + (m + 1) * N;
  sdp.maximize = true;
  sdp.scalar_cost.assign(sdp.num_scalars, 0.0);
  sdp.scalar_cost[0] = 1.0;
  sdp.scalar_names.push_back("lambda");
  for (int j = 0; j <= m; ++j)
    for (int a = 0; a < N; ++a)
      sdp.scalar_names.push_back("u" + std::to_string(j) + "_" +
                                 std::to_string(a));
  sdp.notes.push_back("sampled rank-one relaxation");

  const auto lift_block = [&](int i, int j) { return i * (m + 1) + j; };
  const int slack_base = S * (m + 1);
  // Same cap as in sdp_relaxation; here every sample passed the feasibility
  // gate, so all of them bound lambda from above.
  double cap = std::numeric_limits<double>::infinity();
  std::vector<double> V(N);
  for (int i = 0; i < S; ++i) {
    const std::vector<double>& x = omega[i];
    for (int a = 0; a < N; ++a) V[a] = eval_monomial(basis[a], x);
    for (int j = 0; j <= m; ++j) {
      SdpRow corner;  // top-left entry pinned to 1
      SdpBlockTerm tc;
      tc.block = lift_block(i, j);
      tc.entries.push_back({0, 0, 1.0});
      corner.blocks.push_back(std::move(tc));
      corner.rhs = 1.0;
      sdp.rows.push_back(std::move(corner));

      SdpRow tie;  // off-diagonal w equals u_j . v(x)
      SdpBlockTerm tt;
      tt.block = lift_block(i, j);
      tt.entries.push_back({0, 1, 0.5});
      tie.blocks.push_back(std::move(tt));
      for (int a = 0; a < N; ++a)
        if (V[a] != 0.0) tie.scalars.push_back({1 + j * N + a, V[a]});
      tie.rhs = 0.0;
      sdp.rows.push_back(std::move(tie));
    }
    SdpRow ineq;
    ineq.rhs = prob.objective(x) + eps;
    cap = std::min(cap, ineq.rhs);
    ineq.scalars.push_back({0, -1.0});
    for (int j = 0; j <= m; ++j) {
      const double scale = j == 0 ? 1.0 : gvals[i][j - 1];
      if (scale == 0.0) continue;
      SdpBlockTerm bt;
      bt.block = lift_block(i, j);
      bt.entries.push_back({1, 1, scale});
      ineq.blocks.push_back(std::move(bt));
    }
    SdpBlockTerm slack;
    slack.block = slack_base + i;
    slack.entries.push_back({0, 0, 1.0});
    ineq.blocks.push_back(std::move(slack));
    sdp.rows.push_back(std::move(ineq));
  }
  sdp.validate();
  return std::min(extract_bound(sdp, opts, "qc_relaxation"), cap);
}

ContinuousProblem builtin_problem(const std::string& name) {
  ContinuousProblem p;
  if (name == "square") {
    p.nvars = 1;
    p.objective = [](const std::vector<double>& x) { return x[0] * x[0]; };
    return p;
  }
  if (name == "abs") {
    p.nvars = 1;
    p.objective = [](const std::vector<double>& x) { return std::fabs(x[0]); };
    return p;
  }
  if (name == "expm1") {
    p.nvars = 1;
    p.objective = [](const std::vector<double>& x) { return std::expm1(x[0]); };
    return p;
  }
  if (name == "plane-disk") {
    p.nvars = 2;
    p.objective = [](const std::vector<double>& x) { return x[0] + x[1]; };
    p.constraints.push_back([](const std::vector<double>& x) {
      return 1.0 - x[0] * x[0] - x[1] * x[1];
    });
    return p;
  }
  throw std::invalid_argument("builtin_problem: unknown name '" + name +
                              "' (try square, abs, expm1, plane-disk)");
}

std::vector<std::string> builtin_problem_names() {
  return {"square", "abs", "expm1", "plane-disk"};
}

}  // namespace pvh
