#include "pvh/ipm.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pvh/kernels.hpp"
#include "pvh/linalg.hpp"

namespace pvh {

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible_primal: return "infeasible_primal";
    case SdpStatus::infeasible_dual: return "infeasible_dual";
    case SdpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

constexpr double kFractionToBoundary = 0.98;
constexpr double kSchurRegularization = 1e-10;
constexpr double kDivergenceLimit = 1e12;

// tr(A·B) for sparse symmetric A (each stored entry i <= j means
// A_ij = A_ji = v) against a dense square B, not necessarily symmetric.
double inner_entries(const std::vector<SdpEntry>& entries, const Mat& b) {
  double acc = 0.0;
  for (const SdpEntry& e : entries) {
    const std::size_t i = static_cast<std::size_t>(e.i);
    const std::size_t j = static_cast<std::size_t>(e.j);
    acc += e.i == e.j ? e.v * b(i, i) : e.v * (b(i, j) + b(j, i));
  }
  return acc;
}

// a += w·A for sparse symmetric A.
void add_entries(Mat& a, const std::vector<SdpEntry>& entries, double w) {
  for (const SdpEntry& e : entries) {
    const std::size_t i = static_cast<std::size_t>(e.i);
    const std::size_t j = static_cast<std::size_t>(e.j);
    a(i, j) += w * e.v;
    if (i != j) a(j, i) += w * e.v;
  }
}

void symmetrize(Mat& a) {
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = v;
    }
}

double frob_inner(const Mat& a, const Mat& b) {
  return kernels::dot(a.a.data(), b.a.data(), a.a.size());
}

// Largest t such that S + alpha·Delta stays PSD for alpha in [0, t], given
// the Cholesky factor L of S.
double step_to_boundary(const Mat& l, const Mat& delta) {
  Mat w = delta;
  trsm_left_lower(l, w);
  w = transpose(w);
  trsm_left_lower(l, w);
  symmetrize(w);
  const double lmin = sym_eig_min(w);
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

class Solver {
 public:
  Solver(const SdpProblem& sdp, const SolverOptions& opts)
      : opts_(opts), maximize_(sdp.maximize) {
    const double sense = maximize_ ? -1.0 : 1.0;
    nb_ = sdp.block_dims.size();
    p_ = sdp.rows.size();
    q_ = static_cast<std::size_t>(sdp.num_scalars);
    dims_.assign(sdp.block_dims.begin(), sdp.block_dims.end());

    C_.resize(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
      const std::size_t dim = static_cast<std::size_t>(dims_[b]);
      C_[b] = Mat(dim, dim);
      if (!sdp.block_cost.empty()) {
        C_[b] = sdp.block_cost[b].to_dense();
        kernels::scal(sense, C_[b].a.data(), C_[b].a.size());
      }
    }
    c_.assign(q_, 0.0);
    for (std::size_t i = 0; i < sdp.scalar_cost.size(); ++i)
      c_[i] = sense * sdp.scalar_cost[i];

    rows_.resize(p_);
    row_scale_.assign(p_, 1.0);
    for (std::size_t r = 0; r < p_; ++r) {
      const SdpRow& src = sdp.rows[r];
      double scale = 0.0;
      for (const SdpBlockTerm& bt : src.blocks)
        for (const SdpEntry& e : bt.entries)
          scale = std::max(scale, std::fabs(e.v));
      for (const auto& [idx, v] : src.scalars) {
        (void)idx;
        scale = std::max(scale, std::fabs(v));
      }
      if (scale == 0.0)
        throw std::invalid_argument("solve: row without coefficients");
      row_scale_[r] = scale;
      const double inv = 1.0 / scale;
      Row& dst = rows_[r];
      for (const SdpBlockTerm& bt : src.blocks) {
        std::vector<SdpEntry> entries = bt.entries;
        for (SdpEntry& e : entries) e.v *= inv;
        dst.bterms.emplace_back(bt.block, std::move(entries));
      }
      // Declared rows read <A,X> = rhs + coef·s, i.e. A(X) - coef·s = rhs,
      // so the internal D matrix is the negated coefficient table.
      for (const auto& [idx, v] : src.scalars)
        dst.scoefs.emplace_back(idx, -v * inv);
      dst.b = src.rhs * inv;
    }
    dcols_.resize(q_);
    for (std::size_t r = 0; r < p_; ++r)
      for (const auto& [idx, v] : rows_[r].scoefs)
        dcols_[static_cast<std::size_t>(idx)].emplace_back(static_cast<int>(r),
                                                           v);
    for (std::size_t i = 0; i < q_; ++i)
      if (dcols_[i].empty())
        throw std::invalid_argument(
            "solve: scalar variable absent from all rows");
    rows_in_block_.resize(nb_);
    for (std::size_t r = 0; r < p_; ++r)
      for (const auto& [blk, entries] : rows_[r].bterms) {
        (void)entries;
        rows_in_block_[static_cast<std::size_t>(blk)].push_back(
            static_cast<int>(r));
      }

    b_inf_ = 0.0;
    for (const Row& row : rows_) b_inf_ = std::max(b_inf_, std::fabs(row.b));
    double c_inf = 0.0;
    for (double v : c_) c_inf = std::max(c_inf, std::fabs(v));
    for (const Mat& cb : C_) c_inf = std::max(c_inf, max_abs(cb));
    primal_ref_ = 1.0 + b_inf_;
    dual_ref_ = 1.0 + c_inf;

    total_dim_ = 0.0;
    const double xi_p = std::max(10.0, b_inf_);
    const double xi_d = std::max(10.0, c_inf);
    for (std::size_t b = 0; b < nb_; ++b) {
      const std::size_t dim = static_cast<std::size_t>(dims_[b]);
      X_.push_back(Mat::identity(dim));
      kernels::scal(xi_p, X_.back().a.data(), X_.back().a.size());
      Z_.push_back(Mat::identity(dim));
      kernels::scal(xi_d, Z_.back().a.data(), Z_.back().a.size());
      total_dim_ += static_cast<double>(dim);
    }
    s_.assign(q_, 0.0);
    y_.assign(p_, 0.0);

    Zinv_.resize(nb_);
    LZ_.resize(nb_);
    LX_.resize(nb_);
    Rd_.resize(nb_);
    E_.resize(nb_);
    P_.resize(nb_);
    T_.resize(nb_);
    dX_.resize(nb_);
    dZ_.resize(nb_);
    dXa_.resize(nb_);
    dZa_.resize(nb_);
    r_p_.assign(p_, 0.0);
    r_f_.assign(q_, 0.0);
    h_.assign(p_, 0.0);
  }

  SdpSolution run() {
    SdpSolution sol;
    double best_score = std::numeric_limits<double>::infinity();
    std::vector<Mat> bestX = X_, bestZ = Z_;
    std::vector<double> bests = s_, besty = y_;
    SdpResiduals best_res;
    double best_pobj = 0.0, best_dobj = 0.0;
    int iter = 0;
    int last_progress_iter = 0;
    SdpStatus status = SdpStatus::max_iter;
    std::string diagnostics;

    // On degenerate instances (no strictly complementary solution) the
    // residuals can level off slightly above the target while mu keeps
    // collapsing, after which the scaled system becomes unfactorable.  Both
    // situations end the loop with the best iterate reported: a stall (no
    // meaningful residual progress for kStallWindow iterations) or a
    // factorization breakdown after real progress map to max_iter, whose
    // contract is "stopped short of tolerance, see sol.residuals".
    constexpr int kStallWindow = 10;
    constexpr double kUsableResidual = 1e-2;
    const auto breakdown_status = [&]() {
      diagnostics += " at iteration " + std::to_string(iter);
      if (best_score <= kUsableResidual) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", best_score);
        diagnostics += std::string("; best iterate (residual ") + buf +
                       ") reported";
        return SdpStatus::max_iter;
      }
      return SdpStatus::numerical_failure;
    };

    for (iter = 0; iter < opts_.max_iter; ++iter) {
      SdpResiduals res;
      double pobj, dobj;
      compute_residuals(res, pobj, dobj);
      const double mu = mu_value();
      if (opts_.verbose)
        std::fprintf(stderr,
                     "iter %3d  mu %9.3e  pres %9.3e  dres %9.3e  gap %9.3e\n",
                     iter, mu, res.primal_res, res.dual_res, res.gap);
      if (!std::isfinite(res.primal_res) || !std::isfinite(res.dual_res) ||
          !std::isfinite(res.gap) || !std::isfinite(mu)) {
        status = SdpStatus::numerical_failure;
        diagnostics = "non-finite residuals at iteration " +
                      std::to_string(iter);
        break;
      }
      const double score = std::max({res.primal_res, res.dual_res, res.gap});
      if (score < best_score) {
        if (score < best_score * (1.0 - 1e-3)) last_progress_iter = iter;
        best_score = score;
        bestX = X_;
        bestZ = Z_;
        bests = s_;
        besty = y_;
        best_res = res;
        best_pobj = pobj;
        best_dobj = dobj;
      }
      if (score <= opts_.tolerance) {
        status = SdpStatus::optimal;
        break;
      }
      if (iter - last_progress_iter >= kStallWindow) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", best_score);
        diagnostics = std::string("stalled: residuals plateaued at ") + buf +
                      " for " + std::to_string(kStallWindow) + " iterations";
        break;  // status stays max_iter; best iterate is reported below.
      }
      if (diverged(res, status, diagnostics)) break;

      if (!factor_state(diagnostics)) {
        status = breakdown_status();
        break;
      }
      if (!build_schur(diagnostics)) {
        status = breakdown_status();
        break;
      }

      // Predictor: affine-scaling direction (target 0 on the central path).
      for (std::size_t b = 0; b < nb_; ++b) {
        P_[b] = Mat(X_[b].rows, X_[b].cols);
        matmul_acc(P_[b], Rd_[b], X_[b]);  // P = Rd·X
        E_[b] = X_[b];
        kernels::scal(-1.0, E_[b].a.data(), E_[b].a.size());
        Mat zp(X_[b].rows, X_[b].cols);
        matmul_acc(zp, Zinv_[b], P_[b]);
        kernels::axpy(-1.0, zp.a.data(), E_[b].a.data(), E_[b].a.size());
      }
      solve_direction(dXa_, dZa_, dya_, dsa_);

      double ap_aff, ad_aff;
      if (!step_lengths(dXa_, dZa_, ap_aff, ad_aff, diagnostics)) {
        status = breakdown_status();
        break;
      }
      const double mu_aff = mu_after(ap_aff, ad_aff);
      double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3.0) : 0.0;
      sigma = std::min(1.0, std::max(1e-10, sigma));

      // Corrector: recenter to sigma·mu and absorb the second-order term.
      const double tau = sigma * mu;
      for (std::size_t b = 0; b < nb_; ++b) {
        Mat cross(X_[b].rows, X_[b].cols);
        matmul_acc(cross, dZa_[b], dXa_[b]);
        kernels::axpy(1.0, P_[b].a.data(), cross.a.data(), cross.a.size());
        E_[b] = X_[b];
        kernels::scal(-1.0, E_[b].a.data(), E_[b].a.size());
        kernels::axpy(tau, Zinv_[b].a.data(), E_[b].a.data(), E_[b].a.size());
        Mat zc(X_[b].rows, X_[b].cols);
        matmul_acc(zc, Zinv_[b], cross);
        kernels::axpy(-1.0, zc.a.data(), E_[b].a.data(), E_[b].a.size());
      }
      solve_direction(dX_, dZ_, dy_, ds_);

      double ap, ad;
      if (!step_lengths(dX_, dZ_, ap, ad, diagnostics)) {
        status = breakdown_status();
        break;
      }
      for (std::size_t b = 0; b < nb_; ++b) {
        kernels::axpy(ap, dX_[b].a.data(), X_[b].a.data(), X_[b].a.size());
        kernels::axpy(ad, dZ_[b].a.data(), Z_[b].a.data(), Z_[b].a.size());
      }
      kernels::axpy(ap, ds_.data(), s_.data(), q_);
      kernels::axpy(ad, dy_.data(), y_.data(), p_);
    }
    if (status == SdpStatus::max_iter && iter >= opts_.max_iter)
      diagnostics = "iteration limit reached";

    // Report the best iterate seen (declared sense).
    const double sense = maximize_ ? -1.0 : 1.0;
    sol.status = status;
    sol.iterations = iter;
    sol.residuals = best_res;
    sol.primal_obj = sense * best_pobj;
    sol.dual_obj = sense * best_dobj;
    sol.scalars = bests;
    sol.y.assign(p_, 0.0);
    for (std::size_t r = 0; r < p_; ++r)
      sol.y[r] = sense * besty[r] / row_scale_[r];
    for (std::size_t b = 0; b < nb_; ++b) {
      sol.block_values.push_back(SymMatrix::from_dense(bestX[b]));
      sol.dual_blocks.push_back(SymMatrix::from_dense(bestZ[b]));
    }
    sol.diagnostics = diagnostics;
    return sol;
  }

 private:
  struct Row {
    std::vector<std::pair<int, std::vector<SdpEntry>>> bterms;
    std::vector<std::pair<int, double>> scoefs;  // internal D row
    double b = 0.0;
  };

  double mu_value() const {
    double acc = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) acc += frob_inner(X_[b], Z_[b]);
    return acc / total_dim_;
  }

  double mu_after(double ap, double ad) const {
    double acc = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) {
      acc += frob_inner(X_[b], Z_[b]);
      acc += ap * frob_inner(dXa_[b], Z_[b]);
      acc += ad * frob_inner(X_[b], dZa_[b]);
      acc += ap * ad * frob_inner(dXa_[b], dZa_[b]);
    }
    return acc / total_dim_;
  }

  void compute_residuals(SdpResiduals& res, double& pobj, double& dobj) {
    double pinf = 0.0;
    for (std::size_t r = 0; r < p_; ++r) {
      double ax = 0.0;
      for (const auto& [blk, entries] : rows_[r].bterms)
        ax += inner_entries(entries, X_[static_cast<std::size_t>(blk)]);
      for (const auto& [idx, v] : rows_[r].scoefs)
        ax += v * s_[static_cast<std::size_t>(idx)];
      r_p_[r] = rows_[r].b - ax;
      pinf = std::max(pinf, std::fabs(r_p_[r]));
    }
    double dinf = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) {
      Rd_[b] = C_[b];
      kernels::axpy(-1.0, Z_[b].a.data(), Rd_[b].a.data(), Rd_[b].a.size());
      for (int r : rows_in_block_[b])
        for (const auto& [blk, entries] :
             rows_[static_cast<std::size_t>(r)].bterms)
          if (blk == static_cast<int>(b))
            add_entries(Rd_[b], entries, -y_[static_cast<std::size_t>(r)]);
      dinf = std::max(dinf, max_abs(Rd_[b]));
    }
    for (std::size_t i = 0; i < q_; ++i) {
      double dy = 0.0;
      for (const auto& [r, v] : dcols_[i])
        dy += v * y_[static_cast<std::size_t>(r)];
      r_f_[i] = c_[i] - dy;
      dinf = std::max(dinf, std::fabs(r_f_[i]));
    }
    pobj = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) pobj += frob_inner(C_[b], X_[b]);
    pobj += kernels::dot(c_.data(), s_.data(), q_);
    dobj = 0.0;
    for (std::size_t r = 0; r < p_; ++r) dobj += rows_[r].b * y_[r];
    res.primal_res = pinf / primal_ref_;
    res.dual_res = dinf / dual_ref_;
    res.gap =
        std::fabs(pobj - dobj) / (1.0 + std::fabs(pobj) + std::fabs(dobj));
  }

  bool diverged(const SdpResiduals& res, SdpStatus& status,
                std::string& diagnostics) const {
    (void)res;
    double xnorm = 0.0, ynorm = 0.0;
    for (std::size_t b = 0; b < nb_; ++b) xnorm = std::max(xnorm, max_abs(X_[b]));
    for (double v : s_) xnorm = std::max(xnorm, std::fabs(v));
    for (double v : y_) ynorm = std::max(ynorm, std::fabs(v));
    if (xnorm > kDivergenceLimit) {
      status = SdpStatus::infeasible_dual;
      diagnostics = "primal iterates diverging (dual side likely infeasible)";
      return true;
    }
    if (ynorm > kDivergenceLimit) {
      status = SdpStatus::infeasible_primal;
      diagnostics = "dual iterates diverging (primal side likely infeasible)";
      return true;
    }
    return false;
  }

  bool factor_state(std::string& diagnostics) {
    for (std::size_t b = 0; b < nb_; ++b) {
      LZ_[b] = Z_[b];
      if (!cholesky(LZ_[b])) {
        diagnostics = "dual block lost positive definiteness";
        return false;
      }
      Zinv_[b] = chol_inverse(LZ_[b]);
      LX_[b] = X_[b];
      if (!cholesky(LX_[b])) {
        diagnostics = "primal block lost positive definiteness";
        return false;
      }
    }
    return true;
  }

  // Schur complement M_rr' = sum_b tr(A_rb Z^-1 A_r'b X), its factor, the
  // bordered columns W = M^-1 D and the scalar system S = D^T M^-1 D.
  bool build_schur(std::string& diagnostics) {
    M_ = Mat(p_, p_);
    for (std::size_t b = 0; b < nb_; ++b) {
      const auto& rb = rows_in_block_[b];
      const std::size_t dim = static_cast<std::size_t>(dims_[b]);
      Mat V(dim, dim);
      for (std::size_t ri = 0; ri < rb.size(); ++ri) {
        const std::size_t r = static_cast<std::size_t>(rb[ri]);
        const std::vector<SdpEntry>* entries = nullptr;
        for (const auto& [blk, ent] : rows_[r].bterms)
          if (blk == static_cast<int>(b)) entries = &ent;
        V.a.assign(V.a.size(), 0.0);
        // V = X·A_r·Z^-1 accumulated entry by entry as rank-one updates.
        for (const SdpEntry& e : *entries) {
          const std::size_t i = static_cast<std::size_t>(e.i);
          const std::size_t j = static_cast<std::size_t>(e.j);
          if (e.i == e.j) {
            kernels::ger(V.a.data(), e.v, X_[b].row(i), Zinv_[b].row(i), dim,
                         dim);
          } else {
            kernels::ger(V.a.data(), e.v, X_[b].row(i), Zinv_[b].row(j), dim,
                         dim);
            kernels::ger(V.a.data(), e.v, X_[b].row(j), Zinv_[b].row(i), dim,
                         dim);
          }
        }
        for (std::size_t rj = ri; rj < rb.size(); ++rj) {
          const std::size_t r2 = static_cast<std::size_t>(rb[rj]);
          const std::vector<SdpEntry>* entries2 = nullptr;
          for (const auto& [blk, ent] : rows_[r2].bterms)
            if (blk == static_cast<int>(b)) entries2 = &ent;
          M_(r2, r) += inner_entries(*entries2, V);
        }
      }
    }
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t j = i + 1; j < p_; ++j) M_(i, j) = M_(j, i);

    double trace = 0.0;
    for (std::size_t i = 0; i < p_; ++i) trace += M_(i, i);
    double reg = kSchurRegularization * (1.0 + trace / static_cast<double>(p_));
    for (int attempt = 0; attempt < 4; ++attempt) {
      LM_ = M_;
      for (std::size_t i = 0; i < p_; ++i) LM_(i, i) += reg;
      if (cholesky(LM_)) {
        if (attempt > 0)
          diagnostics = "Schur factorization needed boosted regularization";
        reg_used_ = reg;
        break;
      }
      reg *= 1000.0;
      if (attempt == 3) {
        diagnostics = "Schur complement factorization failed after regularization";
        return false;
      }
    }

    if (q_ > 0) {
      W_ = Mat(p_, q_);
      std::vector<double> col(p_);
      for (std::size_t i = 0; i < q_; ++i) {
        std::fill(col.begin(), col.end(), 0.0);
        for (const auto& [r, v] : dcols_[i]) col[static_cast<std::size_t>(r)] = v;
        chol_solve(LM_, col);
        for (std::size_t r = 0; r < p_; ++r) W_(r, i) = col[r];
      }
      S_ = Mat(q_, q_);
      for (std::size_t i = 0; i < q_; ++i)
        for (std::size_t j = 0; j < q_; ++j) {
          double acc = 0.0;
          for (const auto& [r, v] : dcols_[i])
            acc += v * W_(static_cast<std::size_t>(r), j);
          S_(i, j) = acc;
        }
      symmetrize(S_);
      double strace = 0.0;
      for (std::size_t i = 0; i < q_; ++i) strace += S_(i, i);
      double sreg = 1e-12 * (1.0 + strace / static_cast<double>(q_));
      for (int attempt = 0; attempt < 4; ++attempt) {
        LS_ = S_;
        for (std::size_t i = 0; i < q_; ++i) LS_(i, i) += sreg;
        if (cholesky(LS_)) break;
        sreg *= 1000.0;
        if (attempt == 3) {
          diagnostics = "bordered scalar system factorization failed";
          return false;
        }
      }
    }
    return true;
  }

  // One backsolve of [M D; D^T 0] (dy, ds) = (h, rf) with the factors from
  // build_schur, via the S = D^T M^-1 D complement.
  void solve_factored(std::vector<double>& dy, std::vector<double>& ds,
                      const std::vector<double>& h,
                      const std::vector<double>& rf) {
    dy = h;
    chol_solve(LM_, dy);
    ds.assign(q_, 0.0);
    if (q_ == 0) return;
    for (std::size_t i = 0; i < q_; ++i) {
      double acc = -rf[i];
      for (const auto& [r, v] : dcols_[i])
        acc += v * dy[static_cast<std::size_t>(r)];
      ds[i] = acc;
    }
    chol_solve(LS_, ds);
    for (std::size_t r = 0; r < p_; ++r)
      dy[r] -= kernels::dot(W_.row(r), ds.data(), q_);
  }

  void solve_kkt(std::vector<double>& dy, std::vector<double>& ds,
                 const std::vector<double>& h, const std::vector<double>& rf) {
    solve_factored(dy, ds, h, rf);
    // Iterative refinement against the unregularized M corrects both the
    // diagonal shift and factorization roundoff.  Without it, ill-conditioned
    // Schur complements (redundant Gram parametrizations, nearly active
    // samples) yield directions that drive the iterates off the linearized
    // constraint manifold and the residuals climb back up.
    double hn = 0.0;
    for (std::size_t r = 0; r < p_; ++r) hn = std::max(hn, std::fabs(h[r]));
    for (std::size_t i = 0; i < q_; ++i) hn = std::max(hn, std::fabs(rf[i]));
    std::vector<double> ry(p_), rs(q_), ey, es;
    for (int round = 0; round < 2; ++round) {
      double rn = 0.0;
      for (std::size_t r = 0; r < p_; ++r) {
        ry[r] = h[r] - kernels::dot(M_.row(r), dy.data(), p_);
      }
      for (std::size_t i = 0; i < q_; ++i) {
        double acc = rf[i];
        for (const auto& [r, v] : dcols_[i]) {
          ry[static_cast<std::size_t>(r)] -= v * ds[i];
          acc -= v * dy[static_cast<std::size_t>(r)];
        }
        rs[i] = acc;
        rn = std::max(rn, std::fabs(acc));
      }
      for (std::size_t r = 0; r < p_; ++r) rn = std::max(rn, std::fabs(ry[r]));
      if (rn <= 1e-14 * (1.0 + hn)) break;
      solve_factored(ey, es, ry, rs);
      kernels::axpy(1.0, ey.data(), dy.data(), p_);
      kernels::axpy(1.0, es.data(), ds.data(), q_);
    }
  }

  // T_b = sum_r dy_r A_rb for every block.
  void build_T(const std::vector<double>& dy) {
    for (std::size_t b = 0; b < nb_; ++b) {
      const std::size_t dim = static_cast<std::size_t>(dims_[b]);
      T_[b] = Mat(dim, dim);
      for (int r : rows_in_block_[b])
        for (const auto& [blk, entries] :
             rows_[static_cast<std::size_t>(r)].bterms)
          if (blk == static_cast<int>(b))
            add_entries(T_[b], entries, dy[static_cast<std::size_t>(r)]);
    }
  }

  // With E_b = Z^-1·(R_c - Rd·X) prepared per block, solves for the full
  // direction (dX, dZ, dy, ds).
  void solve_direction(std::vector<Mat>& dX, std::vector<Mat>& dZ,
                       std::vector<double>& dy, std::vector<double>& ds) {
    for (std::size_t r = 0; r < p_; ++r) {
      double acc = r_p_[r];
      for (const auto& [blk, entries] : rows_[r].bterms)
        acc -= inner_entries(entries, E_[static_cast<std::size_t>(blk)]);
      h_[r] = acc;
    }
    solve_kkt(dy, ds, h_, r_f_);
    build_T(dy);
    for (std::size_t b = 0; b < nb_; ++b) {
      const std::size_t dim = static_cast<std::size_t>(dims_[b]);
      dZ[b] = Rd_[b];
      kernels::axpy(-1.0, T_[b].a.data(), dZ[b].a.data(), dZ[b].a.size());
      // dX = E + Z^-1·T·X, then symmetrized.
      Mat zt(dim, dim);
      matmul_acc(zt, Zinv_[b], T_[b]);
      dX[b] = E_[b];
      matmul_acc(dX[b], zt, X_[b]);
      symmetrize(dX[b]);
    }
    // The reconstruction of dX through Z^-1 amplifies roundoff by cond(Z);
    // once Z degenerates (mu small, rank-deficient optimal face) the block
    // equality A(dX) + D·ds = r_p can be off by far more than the Schur
    // solve's accuracy, and the iterates drift off the feasible manifold.
    // Measure that error directly and correct with the Newton direction of
    // the pure equality-residual system (zero dual and centering parts), so
    // the other Newton equations are preserved.
    std::vector<double> err(p_), zero(q_, 0.0), dy2, ds2;
    double rpn = 0.0;
    for (std::size_t r = 0; r < p_; ++r)
      rpn = std::max(rpn, std::fabs(r_p_[r]));
    for (int round = 0; round < 2; ++round) {
      double en = 0.0;
      for (std::size_t r = 0; r < p_; ++r) {
        double acc = r_p_[r];
        for (const auto& [blk, entries] : rows_[r].bterms)
          acc -= inner_entries(entries, dX[static_cast<std::size_t>(blk)]);
        err[r] = acc;
      }
      for (std::size_t i = 0; i < q_; ++i)
        for (const auto& [r, v] : dcols_[i])
          err[static_cast<std::size_t>(r)] -= v * ds[i];
      for (std::size_t r = 0; r < p_; ++r)
        en = std::max(en, std::fabs(err[r]));
      if (en <= 1e-13 * (1.0 + rpn)) break;
      solve_kkt(dy2, ds2, err, zero);
      build_T(dy2);
      for (std::size_t b = 0; b < nb_; ++b) {
        const std::size_t dim = static_cast<std::size_t>(dims_[b]);
        kernels::axpy(-1.0, T_[b].a.data(), dZ[b].a.data(), dZ[b].a.size());
        Mat zt(dim, dim);
        matmul_acc(zt, Zinv_[b], T_[b]);
        Mat dXc(dim, dim);
        matmul_acc(dXc, zt, X_[b]);
        symmetrize(dXc);
        kernels::axpy(1.0, dXc.a.data(), dX[b].a.data(), dX[b].a.size());
      }
      kernels::axpy(1.0, dy2.data(), dy.data(), p_);
      kernels::axpy(1.0, ds2.data(), ds.data(), q_);
    }
  }

  bool step_lengths(const std::vector<Mat>& dX, const std::vector<Mat>& dZ,
                    double& ap, double& ad, std::string& diagnostics) {
    (void)diagnostics;
    double tp = std::numeric_limits<double>::infinity();
    double td = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb_; ++b) {
      tp = std::min(tp, step_to_boundary(LX_[b], dX[b]));
      td = std::min(td, step_to_boundary(LZ_[b], dZ[b]));
    }
    ap = std::min(1.0, kFractionToBoundary * tp);
    ad = std::min(1.0, kFractionToBoundary * td);
    return true;
  }

  SolverOptions opts_;
  bool maximize_ = false;
  std::size_t nb_ = 0, p_ = 0, q_ = 0;
  std::vector<int> dims_;
  std::vector<Mat> C_;
  std::vector<double> c_;
  std::vector<Row> rows_;
  std::vector<double> row_scale_;
  std::vector<std::vector<std::pair<int, double>>> dcols_;
  std::vector<std::vector<int>> rows_in_block_;
  double b_inf_ = 0.0, primal_ref_ = 1.0, dual_ref_ = 1.0, total_dim_ = 0.0;
  double reg_used_ = 0.0;

  std::vector<Mat> X_, Z_;
  std::vector<double> s_, y_;

  std::vector<Mat> Zinv_, LZ_, LX_, Rd_, E_, P_, T_, dX_, dZ_, dXa_, dZa_;
  std::vector<double> r_p_, r_f_, h_, dy_, ds_, dya_, dsa_;
  Mat M_, LM_, W_, S_, LS_;
};

}  // namespace

SdpSolution solve(const SdpProblem& sdp, const SolverOptions& opts) {
  sdp.validate();
  if (sdp.rows.empty())
    throw std::invalid_argument("solve: problem has no rows");
  if (!(opts.tolerance > 0.0) || opts.tolerance > 1e-2)
    throw std::invalid_argument("solve: tolerance must lie in (0, 1e-2]");
  if (opts.max_iter < 1)
    throw std::invalid_argument("solve: max_iter must be at least 1");
  Solver solver(sdp, opts);
  return solver.run();
}

}  // namespace pvh
