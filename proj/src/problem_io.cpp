#include "pvh/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pvh/bernstein.hpp"
#include "pvh/bounds.hpp"
#include "pvh/construct.hpp"
#include "pvh/contopt.hpp"
#include "pvh/linalg.hpp"
#include "pvh/util.hpp"

namespace pvh {

namespace {

using nlohmann::json;

std::invalid_argument inv(const std::string& msg) {
  return std::invalid_argument(msg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw inv("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

std::string num(double v, int prec = 12) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

Polynomial parse_termlist(const json& arr, int n, const std::string& path) {
  if (!arr.is_array()) throw inv(path + ": expected an array of terms");
  Polynomial p(n);
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const json& term = arr[t];
    const std::string tp = path + "[" + std::to_string(t) + "]";
    if (!term.is_array())
      throw inv(tp + ": expected a term [e_1, ..., e_n, coefficient]");
    if (static_cast<int>(term.size()) != n + 1)
      throw inv(tp + ": term length " + std::to_string(term.size()) +
                ", expected n+1 = " + std::to_string(n + 1));
    Monomial m = Monomial::unit(n);
    for (int j = 0; j < n; ++j) {
      const std::string ep = tp + "[" + std::to_string(j) + "]";
      if (!term[j].is_number_integer() && !term[j].is_number_unsigned())
        throw inv(ep + ": exponent must be an integer");
      const long long e = term[j].get<long long>();
      if (e < 0) throw inv(ep + ": negative exponent");
      if (e > 1000) throw inv(ep + ": exponent too large");
      m.e[j] = static_cast<int>(e);
    }
    if (!term[n].is_number())
      throw inv(tp + "[" + std::to_string(n) + "]: coefficient must be a number");
    p.add_term(m, term[n].get<double>());
  }
  return p;
}

json termlist_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) {
    json term = json::array();
    for (int e : m.e) term.push_back(e);
    term.push_back(c);
    arr.push_back(std::move(term));
  }
  return arr;
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw inv(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw inv("top level: expected an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "schema_version" && key != "n" && key != "objective" &&
        key != "constraints" && key != "ball_radius" && key != "options")
      throw inv("unknown field '" + key + "'");
  }

  ProblemFile pf;
  if (j.contains("schema_version")) {
    if (!j["schema_version"].is_number_integer())
      throw inv("schema_version: expected an integer");
    pf.schema_version = j["schema_version"].get<int>();
    if (pf.schema_version != 1)
      throw inv("schema_version: unsupported version " +
                std::to_string(pf.schema_version));
  }
  if (!j.contains("n")) throw inv("missing required field 'n'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw inv("n: expected a positive integer");
  const int n = j["n"].get<int>();
  pf.problem.nvars = n;

  if (!j.contains("objective")) throw inv("missing required field 'objective'");
  pf.problem.objective = parse_termlist(j["objective"], n, "objective");

  if (j.contains("constraints")) {
    if (!j["constraints"].is_array())
      throw inv("constraints: expected an array of term lists");
    for (std::size_t i = 0; i < j["constraints"].size(); ++i)
      pf.problem.constraints.push_back(
          parse_termlist(j["constraints"][i], n,
                         "constraints[" + std::to_string(i) + "]"));
  }

  std::optional<double> file_radius;
  if (j.contains("ball_radius")) {
    if (!j["ball_radius"].is_number() || !(j["ball_radius"].get<double>() > 0))
      throw inv("ball_radius: expected a positive number");
    file_radius = j["ball_radius"].get<double>();
  }

  if (j.contains("options")) {
    if (!j["options"].is_object())
      throw inv("options: expected an object of numbers");
    for (const auto& item : j["options"].items()) {
      if (!item.value().is_number())
        throw inv("options." + item.key() + ": expected a number");
      pf.options[item.key()] = item.value().get<double>();
    }
  }

  const bool detected = detect_ball(pf.problem);
  if (file_radius) {
    if (!detected)
      throw inv("ball_radius: first constraint does not match L - |x|^2");
    if (std::fabs(*pf.problem.ball_radius - *file_radius) > 1e-9)
      throw inv("ball_radius: declared " + num(*file_radius) +
                " but the first constraint encodes " +
                num(*pf.problem.ball_radius));
  }

  bool homog = !pf.problem.objective.is_zero() &&
               is_homogeneous(pf.problem.objective);
  for (const Polynomial& g : pf.problem.constraints)
    homog = homog && !g.is_zero() && is_homogeneous(g);
  pf.problem.homogeneous = homog;

  pf.problem.validate();
  return pf;
}

PopProblem parse_problem(const std::string& text) {
  return parse_problem_file(text).problem;
}

std::string emit_problem(const PopProblem& prob) {
  json j;
  j["schema_version"] = 1;
  j["n"] = prob.nvars;
  j["objective"] = termlist_json(prob.objective);
  if (!prob.constraints.empty()) {
    json cs = json::array();
    for (const Polynomial& g : prob.constraints) cs.push_back(termlist_json(g));
    j["constraints"] = std::move(cs);
  }
  if (prob.ball_radius) j["ball_radius"] = *prob.ball_radius;
  return j.dump(2) + "\n";
}

std::string emit_certificate(const Certificate& cert) {
  json j;
  j["schema_version"] = 1;
  j["k"] = cert.k;
  j["eps"] = cert.eps;
  j["lambda"] = cert.lambda;
  json grams = json::array();
  for (const SymMatrix& g : cert.grams) {
    if (g.empty()) {
      grams.push_back(json::array());
      continue;
    }
    const Mat d = g.to_dense();
    json rows = json::array();
    for (std::size_t i = 0; i < d.rows; ++i) {
      json row = json::array();
      for (std::size_t c = 0; c < d.cols; ++c) row.push_back(d(i, c));
      rows.push_back(std::move(row));
    }
    grams.push_back(std::move(rows));
  }
  j["grams"] = std::move(grams);
  return j.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw inv(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw inv("certificate: top level: expected an object");
  if (j.contains("schema_version") &&
      (!j["schema_version"].is_number_integer() ||
       j["schema_version"].get<int>() != 1))
    throw inv("certificate: schema_version: unsupported");
  Certificate cert;
  if (!j.contains("k") || !j["k"].is_number_integer() || j["k"].get<int>() < 0)
    throw inv("certificate: k: expected a nonnegative integer");
  cert.k = j["k"].get<int>();
  if (!j.contains("eps") || !j["eps"].is_number() ||
      j["eps"].get<double>() < 0)
    throw inv("certificate: eps: expected a nonnegative number");
  cert.eps = j["eps"].get<double>();
  if (!j.contains("lambda") || !j["lambda"].is_number())
    throw inv("certificate: lambda: expected a number");
  cert.lambda = j["lambda"].get<double>();
  if (!j.contains("grams") || !j["grams"].is_array())
    throw inv("certificate: grams: expected an array of matrices");
  for (std::size_t b = 0; b < j["grams"].size(); ++b) {
    const json& gm = j["grams"][b];
    const std::string gp = "certificate: grams[" + std::to_string(b) + "]";
    if (!gm.is_array()) throw inv(gp + ": expected a matrix");
    const int dim = static_cast<int>(gm.size());
    if (dim == 0) {
      cert.grams.emplace_back(0);
      continue;
    }
    Mat d(dim, dim);
    for (int r = 0; r < dim; ++r) {
      if (!gm[r].is_array() || static_cast<int>(gm[r].size()) != dim)
        throw inv(gp + "[" + std::to_string(r) + "]: expected a row of " +
                  std::to_string(dim) + " numbers");
      for (int c = 0; c < dim; ++c) {
        if (!gm[r][c].is_number())
          throw inv(gp + "[" + std::to_string(r) + "][" + std::to_string(c) +
                    "]: expected a number");
        d(r, c) = gm[r][c].get<double>();
      }
    }
    cert.grams.push_back(SymMatrix::from_dense(d));
  }
  return cert;
}

namespace {

// ---------------------------------------------------------------------------
// CLI handlers.  All print "seed" in their reports: the toolkit is fully
// deterministic and every randomized scan uses this fixed seed.

constexpr std::uint64_t kSeed = 0;

struct SolveArgs {
  std::string problem_path;
  int kmax = 2;
  double eps = 0.0;
  bool moment = false;
  bool no_extract = false;
  double tol = 1e-8;
  int max_iter = 100;
  std::string cert_out;
  bool as_json = false;
};

int cmd_solve(const SolveArgs& a) {
  const PopProblem prob = parse_problem(read_file(a.problem_path));
  HierarchyOptions opts;
  opts.moment_form = a.moment;
  opts.extract = !a.no_extract && !a.moment;
  opts.solver.tolerance = a.tol;
  opts.solver.max_iter = a.max_iter;
  const HierarchyResult res = run_hierarchy(prob, a.kmax, a.eps, opts);

  bool any_bound = false;
  for (const TraceEntry& e : res.trace.entries)
    any_bound = any_bound || std::isfinite(e.bound);

  if (!a.cert_out.empty()) {
    if (res.certificates.empty())
      throw std::runtime_error("no certificate extracted; nothing to write");
    write_file(a.cert_out, emit_certificate(res.certificates.back()));
  }

  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    out["eps"] = a.eps;
    out["form"] = a.moment ? "moment" : "sos";
    json trace = json::array();
    for (const TraceEntry& e : res.trace.entries) {
      json t;
      t["k"] = e.k;
      t["bound"] = std::isfinite(e.bound) ? json(e.bound) : json(nullptr);
      t["status"] = e.status;
      t["residual"] =
          std::isfinite(e.residual) ? json(e.residual) : json(nullptr);
      t["time_ms"] = e.solve_time_ms;
      trace.push_back(std::move(t));
    }
    out["trace"] = std::move(trace);
    out["monotonicity_violations"] = res.trace.monotonicity_violations;
    out["certificates"] = res.certificates.size();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# seed=" << kSeed << "\n";
    std::cout << "k,bound,residual,time_ms\n";
    for (const TraceEntry& e : res.trace.entries)
      std::cout << e.k << "," << num(e.bound) << "," << num(e.residual, 6)
                << "," << num(e.solve_time_ms, 6) << "\n";
  }
  return any_bound ? 0 : 2;
}

struct BoundsArgs {
  bool reznick = false, polya = false, schmudgen = false, nie = false;
  int n = 1, d = 1;
  double theta = 1.0, norm = 1.0, min_val = 1.0, fstar = 1.0, c = 1.0;
  bool as_json = false;
};

int cmd_bounds(const BoundsArgs& a) {
  const int picked = static_cast<int>(a.reznick) + static_cast<int>(a.polya) +
                     static_cast<int>(a.schmudgen) + static_cast<int>(a.nie);
  if (picked != 1)
    throw inv("choose exactly one of --reznick, --polya, --schmudgen, --nie");
  double value = 0.0;
  long long ivalue = 0;
  bool integral = true;
  if (a.reznick) {
    ivalue = reznick_bound(a.n, a.d, a.theta);
  } else if (a.polya) {
    ivalue = polya_bound(a.d, a.norm, a.min_val);
  } else if (a.schmudgen) {
    ivalue = schmudgen_bound(a.c, a.n, a.d, a.norm, a.fstar);
  } else {
    integral = false;
    value = nie_schweighofer_bound(a.c, a.n, a.d, a.norm, a.fstar);
  }
  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    if (integral)
      out["bound"] = ivalue;
    else
      out["bound"] = value;
    std::cout << out.dump(2) << "\n";
  } else if (integral) {
    std::cout << ivalue << "\n";
  } else {
    std::cout << num(value, 17) << "\n";
  }
  return 0;
}

struct ConstructArgs {
  bool rate = false;
  std::string problem_path;
  bool icecream = false;
  double eps = 0.5;
  long long u_cap = 12;
  int grid_res = 51;
  int anchor_res = 15;
  int sphere_samples = 8192;
  bool strict = false;
  bool as_json = false;
};

int cmd_construct(const ConstructArgs& a) {
  if (a.rate) {
    const RateExponent re = rate_exponent_icecream();
    if (a.as_json) {
      json out;
      out["seed"] = kSeed;
      json chain = json::array();
      for (const auto& [name, r] : re.chain) {
        json e;
        e["name"] = name;
        e["num"] = r.num;
        e["den"] = r.den;
        chain.push_back(std::move(e));
      }
      out["chain"] = std::move(chain);
      out["c"] = re.c;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "# seed=" << kSeed << "\n";
      std::cout << "quantity,exponent\n";
      for (const auto& [name, r] : re.chain)
        std::cout << name << "," << r.str() << "\n";
      std::cout << "c," << re.c << "\n";
    }
    return 0;
  }
  if (a.problem_path.empty())
    throw inv("construct: --problem is required (or use --rate)");
  const PopProblem prob = parse_problem(read_file(a.problem_path));
  const Polynomial& f = prob.objective;
  Polynomial g;
  if (a.icecream) {
    g = icecream_constraint(prob.nvars);
  } else {
    if (prob.constraints.empty())
      throw inv("construct: the problem has no constraint; pass --icecream "
                "to use the cone constraint");
    g = prob.constraints.front();
  }
  ConstructParams params;
  params.grid_res = a.grid_res;
  params.anchor_res = a.anchor_res;
  params.sphere_samples = a.sphere_samples;
  params.u_cap = a.u_cap;
  params.strict = a.strict;
  ConstructState st = build_F(f, g, a.eps, params);
  reznick_order(st);

  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    out["eps"] = st.eps;
    out["M"] = st.M;
    out["delta"] = st.delta;
    out["sup_f"] = st.sup_f;
    out["sup_g"] = st.sup_g;
    out["lipschitz_f"] = st.lipschitz_f;
    out["C_phi"] = st.C_phi;
    out["L_phi"] = st.L_phi;
    out["w"] = st.w;
    out["u"] = st.u;
    out["demonstration_mode"] = st.demonstration;
    out["D"] = st.D;
    out["K_bar"] = st.K_bar;
    out["q_terms"] = st.q.term_count();
    out["F_terms"] = st.F.term_count();
    json diag;
    for (const auto& [k, v] : st.diagnostics) diag[k] = v;
    out["diagnostics"] = std::move(diag);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# seed=" << kSeed << "\n";
    std::cout << "demonstration_mode = " << (st.demonstration ? "yes" : "no")
              << "\n";
    std::cout << "M = " << num(st.M) << "\n";
    std::cout << "delta = " << num(st.delta) << "\n";
    std::cout << "w = " << num(st.w) << "\n";
    std::cout << "C_phi = " << num(st.C_phi) << "\n";
    std::cout << "L_phi = " << num(st.L_phi) << "\n";
    std::cout << "u = " << st.u << "\n";
    std::cout << "D = " << st.D << "\n";
    std::cout << "K_bar = " << st.K_bar << "\n";
    for (const auto& [k, v] : st.diagnostics)
      std::cout << k << " = " << num(v) << "\n";
  }
  return 0;
}

struct BernsteinArgs {
  std::string func = "abs";
  std::vector<int> orders = {4, 16, 64, 256};
  int grid = 1001;
  bool as_json = false;
};

int cmd_bernstein(const BernsteinArgs& a) {
  SampledFunction f;
  f.n = 1;
  if (a.func == "abs") {
    f.eval = [](const std::vector<double>& x) { return std::fabs(x[0]); };
    f.lipschitz = 1.0;
    f.sup_bound = 1.0;
  } else if (a.func == "square") {
    f.eval = [](const std::vector<double>& x) { return x[0] * x[0]; };
    f.lipschitz = 2.0;
    f.sup_bound = 1.0;
  } else if (a.func == "expm1") {
    f.eval = [](const std::vector<double>& x) { return std::expm1(x[0]); };
    f.lipschitz = std::exp(1.0);
    f.sup_bound = std::exp(1.0) - 1.0;
  } else {
    throw inv("bernstein: unknown function '" + a.func +
              "' (try abs, square, expm1)");
  }
  if (a.grid < 2) throw inv("bernstein: grid must be >= 2");

  struct Row {
    int k;
    double bound, measured;
  };
  std::vector<Row> rows;
  for (int k : a.orders) {
    if (k < 1) throw inv("bernstein: orders must be >= 1");
    const BernsteinForm B = BernsteinForm::shifted(f, k);
    double worst = 0.0;
    std::vector<double> x(1);
    for (int i = 0; i < a.grid; ++i) {
      x[0] = -1.0 + 2.0 * i / (a.grid - 1);
      worst = std::max(worst, std::fabs(B.value(x) - f.eval(x)));
    }
    rows.push_back({k, f.lipschitz * std::sqrt(1.0 / k), worst});
  }
  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    out["func"] = a.func;
    out["grid"] = a.grid;
    json arr = json::array();
    for (const Row& r : rows) {
      json e;
      e["k"] = r.k;
      e["bound"] = r.bound;
      e["measured_error"] = r.measured;
      arr.push_back(std::move(e));
    }
    out["rows"] = std::move(arr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# seed=" << kSeed << "\n";
    std::cout << "k,bound,measured_error\n";
    for (const Row& r : rows)
      std::cout << r.k << "," << num(r.bound) << "," << num(r.measured)
                << "\n";
  }
  return 0;
}

struct ContinuousArgs {
  std::string kind;
  std::string func;
  int resolution = 21;
  int kmax = 2;
  double eps = 0.01;
  double tol = 1e-8;
  bool as_json = false;
};

int cmd_continuous(const ContinuousArgs& a) {
  if (a.kind != "sdp" && a.kind != "qc")
    throw inv("continuous: --kind must be sdp or qc");
  const ContinuousProblem prob = builtin_problem(a.func);
  std::vector<std::vector<double>> omega =
      sample_box(prob.nvars, a.resolution);
  if (a.kind == "qc") {
    std::vector<std::vector<double>> feasible;
    for (const auto& x : omega) {
      bool ok = true;
      for (const auto& g : prob.constraints) ok = ok && g(x) >= -1e-9;
      if (ok) feasible.push_back(x);
    }
    if (feasible.empty())
      throw inv("continuous: no feasible samples at this resolution");
    omega = std::move(feasible);
  }
  SolverOptions sopts;
  sopts.tolerance = a.tol;

  struct Row {
    int k;
    double bound, time_ms;
  };
  std::vector<Row> rows;
  for (int k = 0; k <= a.kmax; ++k) {
    Stopwatch sw;
    const double bound =
        a.kind == "sdp" ? sdp_relaxation(prob, omega, k, a.eps, sopts)
                        : qc_relaxation(prob, omega, k, a.eps, sopts);
    rows.push_back({k, bound, sw.ms()});
  }
  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    out["kind"] = a.kind;
    out["func"] = a.func;
    out["resolution"] = a.resolution;
    out["samples"] = omega.size();
    out["eps"] = a.eps;
    json arr = json::array();
    for (const Row& r : rows) {
      json e;
      e["k"] = r.k;
      e["bound"] = r.bound;
      e["time_ms"] = r.time_ms;
      arr.push_back(std::move(e));
    }
    out["rows"] = std::move(arr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# seed=" << kSeed << " resolution=" << a.resolution
              << " samples=" << omega.size() << "\n";
    std::cout << "k,bound,residual,time_ms\n";
    for (const Row& r : rows)
      std::cout << r.k << "," << num(r.bound) << ",nan," << num(r.time_ms, 6)
                << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string problem_path;
  std::string cert_path;
  double tol = 1e-6;
  bool as_json = false;
};

int cmd_verify(const VerifyArgs& a) {
  const PopProblem prob = parse_problem(read_file(a.problem_path));
  const Certificate cert = parse_certificate(read_file(a.cert_path));
  const double residual = verify_certificate(prob, cert);
  const bool ok = std::isfinite(residual) && residual <= a.tol;
  if (a.as_json) {
    json out;
    out["seed"] = kSeed;
    out["k"] = cert.k;
    out["lambda"] = cert.lambda;
    out["residual"] = residual;
    out["tolerance"] = a.tol;
    out["ok"] = ok;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# seed=" << kSeed << "\n";
    std::cout << "residual = " << num(residual, 6) << "\n";
  }
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"relaxation ladders, degree bounds, and constructive "
               "positivity certificates for polynomial optimization"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand(
      "solve", "run the relaxation ladder on a problem file (CSV trace)");
  solve->add_option("--problem", sa.problem_path, "problem JSON file")
      ->required();
  solve->add_option("--kmax", sa.kmax, "highest relaxation order");
  solve->add_option("--eps", sa.eps, "perturbation weight (0 needs a ball)");
  solve->add_flag("--moment", sa.moment, "solve the moment form instead");
  solve->add_flag("--no-extract", sa.no_extract,
                  "skip certificate extraction");
  solve->add_option("--tol", sa.tol, "solver tolerance");
  solve->add_option("--max-iter", sa.max_iter, "solver iteration cap");
  solve->add_option("--cert-out", sa.cert_out,
                    "write the last certificate to this file");
  solve->add_flag("--json", sa.as_json, "JSON output");

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "closed-form certificate degree bound calculators");
  bounds->add_flag("--reznick", ba.reznick, "sphere-ratio bound");
  bounds->add_flag("--polya", ba.polya, "simplex bound");
  bounds->add_flag("--schmudgen", ba.schmudgen, "box bound");
  bounds->add_flag("--nie", ba.nie, "exponential box bound");
  bounds->add_option("--n", ba.n, "variable count");
  bounds->add_option("--d", ba.d, "degree parameter");
  bounds->add_option("--theta", ba.theta, "sphere max/min ratio");
  bounds->add_option("--norm", ba.norm, "coefficient norm");
  bounds->add_option("--min", ba.min_val, "simplex minimum");
  bounds->add_option("--fstar", ba.fstar, "positivity margin");
  bounds->add_option("--c", ba.c, "outer constant");
  bounds->add_flag("--json", ba.as_json, "JSON output");

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand(
      "construct", "constructive certificate pipeline for homogeneous data");
  construct->add_flag("--rate", ca.rate,
                      "print the symbolic epsilon-exponent chain and exit");
  construct->add_option("--problem", ca.problem_path, "problem JSON file");
  construct->add_flag("--icecream", ca.icecream,
                      "use the cone constraint x_n^2 - |x'|^2");
  construct->add_option("--eps", ca.eps, "positivity margin (> 0)");
  construct->add_option("--u-cap", ca.u_cap,
                        "clamp on the Bernstein order (demonstration mode)");
  construct->add_option("--grid-res", ca.grid_res, "constant-estimation grid");
  construct->add_option("--anchor-res", ca.anchor_res, "anchor grid");
  construct->add_option("--sphere-samples", ca.sphere_samples,
                        "sphere check sample count");
  construct->add_flag("--strict", ca.strict,
                      "fail hard when the sphere margin check fails");
  construct->add_flag("--json", ca.as_json, "JSON output");

  BernsteinArgs bna;
  CLI::App* bern = app.add_subcommand(
      "bernstein", "approximation error sweep for built-in 1-D functions");
  bern->add_option("--func", bna.func, "abs | square | expm1");
  bern->add_option("--orders", bna.orders, "approximation orders");
  bern->add_option("--grid", bna.grid, "measurement grid size");
  bern->add_flag("--json", bna.as_json, "JSON output");

  ContinuousArgs cta;
  CLI::App* cont = app.add_subcommand(
      "continuous", "sampled relaxations for black-box objectives");
  cont->add_option("--kind", cta.kind, "sdp | qc")->required();
  cont->add_option("--func", cta.func,
                   "square | abs | expm1 | plane-disk")
      ->required();
  cont->add_option("--resolution", cta.resolution, "box grid resolution");
  cont->add_option("--kmax", cta.kmax, "highest basis degree");
  cont->add_option("--eps", cta.eps, "inequality slack (> 0)");
  cont->add_option("--tol", cta.tol, "solver tolerance");
  cont->add_flag("--json", cta.as_json, "JSON output");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "recompute a certificate residual symbolically");
  verify->add_option("--problem", va.problem_path, "problem JSON file")
      ->required();
  verify->add_option("--cert,--certificate", va.cert_path, "certificate JSON file")
      ->required();
  verify->add_option("--tol", va.tol, "acceptance threshold");
  verify->add_flag("--json", va.as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(sa);
    if (app.got_subcommand(bounds)) return cmd_bounds(ba);
    if (app.got_subcommand(construct)) return cmd_construct(ca);
    if (app.got_subcommand(bern)) return cmd_bernstein(bna);
    if (app.got_subcommand(cont)) return cmd_continuous(cta);
    if (app.got_subcommand(verify)) return cmd_verify(va);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}

}  // namespace pvh
