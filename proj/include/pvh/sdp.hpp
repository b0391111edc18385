// Block-diagonal standard-form semidefinite programs and the two assemblies
// that produce them (sum-of-squares form and moment form of the same
// relaxation order).
//
// Conventions, frozen here and relied on by the solver and all assemblies:
//
//   variables   PSD blocks X_b (dimensions block_dims) and free scalars s_i
//   rows        sum_b <A_{r,b}, X_b>  =  rhs_r + sum_i coef_{r,i} * s_i
//   objective   optimize  sum_b <C_b, X_b> + sum_i c_i * s_i
//               (maximize flag selects the sense)
//
// Entries of the sparse coefficient matrices A_{r,b} are stored once per
// symmetric pair with i <= j; a stored value v means A[i][j] = A[j][i] = v,
// so <A, X> contributes 2*v*X[i][j] for off-diagonal entries.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvh/monomial.hpp"
#include "pvh/pop.hpp"
#include "pvh/sym_matrix.hpp"

namespace pvh {

struct SdpEntry {
  int i = 0;
  int j = 0;  // i <= j
  double v = 0.0;
};

struct SdpBlockTerm {
  int block = 0;
  std::vector<SdpEntry> entries;
};

struct SdpRow {
  std::vector<SdpBlockTerm> blocks;
  std::vector<std::pair<int, double>> scalars;  // (scalar index, coefficient)
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_dims;
  int num_scalars = 0;
  bool maximize = true;
  std::vector<double> scalar_cost;    // empty means all-zero
  std::vector<SymMatrix> block_cost;  // empty means all-zero
  std::vector<SdpRow> rows;

  // Assembly metadata (not consumed by the solver):
  // - for the SOS form, the row index of each monomial; for the moment form,
  //   the scalar index of each moment monomial.
  std::map<Monomial, int, GrlexLess> monomial_index;
  std::vector<std::string> scalar_names;
  // Per constraint slot j = 0..m, the block holding its Gram/localizing
  // matrix, or -1 when the slot is degree-empty at this order.
  std::vector<int> gram_block;
  std::vector<std::string> notes;  // e.g. dropped all-zero rows

  void validate() const;  // throws std::invalid_argument on malformed data
};

// SOS form of order k with perturbation eps >= 0:
//
//   maximize lambda  s.t.  theta^k (f - lambda + eps*theta^{d_f})
//                          = sigma_0 + sum_j sigma_j g_j,
//
// with Gram blocks for sigma_0 (basis degree k+d_f) and each sigma_j (basis
// degree k+d_f-d_{g_j}).  One row per monomial of degree <= 2(k+d_f).
SdpProblem assemble_sos_form(const PopProblem& prob, int k, double eps);

// Moment form of the same order: scalars y_a for |a| <= 2(k+d_f),
//
//   minimize L_y(theta^k (f + eps*theta^{d_f}))
//   s.t.     M_{k+d_f}(y) >= 0,  M_{k+d_f-d_gj}(g_j y) >= 0,
//            L_y(theta^k) = 1,
//
// with the matrix inequalities realized as slack PSD blocks tied entrywise
// to the scalars by equality rows.
SdpProblem assemble_moment_form(const PopProblem& prob, int k, double eps);

// Human-readable text dump (round-trips through parse_sdp); block sizes
// followed by sparse (row, block, i, j, value) entries, scalar coefficients
// and objective data.
std::string serialize_sdp(const SdpProblem& sdp);
SdpProblem parse_sdp(const std::string& text);

}  // namespace pvh
