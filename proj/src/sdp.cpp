#include "pvh/sdp.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pvh {

void SdpProblem::validate() const {
  for (int d : block_dims)
    if (d < 1) throw std::invalid_argument("SdpProblem: block dimension < 1");
  if (num_scalars < 0)
    throw std::invalid_argument("SdpProblem: negative scalar count");
  if (!scalar_cost.empty() &&
      scalar_cost.size() != static_cast<std::size_t>(num_scalars))
    throw std::invalid_argument("SdpProblem: scalar cost size mismatch");
  if (!block_cost.empty()) {
    if (block_cost.size() != block_dims.size())
      throw std::invalid_argument("SdpProblem: block cost count mismatch");
    for (std::size_t b = 0; b < block_cost.size(); ++b)
      if (block_cost[b].dim() != block_dims[b])
        throw std::invalid_argument("SdpProblem: block cost dim mismatch");
  }
  for (const SdpRow& row : rows) {
    for (const SdpBlockTerm& bt : row.blocks) {
      if (bt.block < 0 ||
          bt.block >= static_cast<int>(block_dims.size()))
        throw std::invalid_argument("SdpProblem: entry block out of range");
      const int dim = block_dims[static_cast<std::size_t>(bt.block)];
      for (const SdpEntry& e : bt.entries)
        if (e.i < 0 || e.j < e.i || e.j >= dim)
          throw std::invalid_argument("SdpProblem: entry index out of range");
    }
    for (const auto& [idx, coef] : row.scalars) {
      (void)coef;
      if (idx < 0 || idx >= num_scalars)
        throw std::invalid_argument("SdpProblem: scalar index out of range");
    }
  }
}

namespace {

// Builder that accumulates symmetric entries per (row, block) with merging of
// duplicate (i, j) positions, then freezes into SdpRow storage.
class RowAccumulator {
 public:
  RowAccumulator(std::size_t num_rows, std::size_t num_blocks)
      : cells_(num_rows * num_blocks), num_blocks_(num_blocks) {}

  void add(std::size_t row, std::size_t block, int i, int j, double v) {
    if (i > j) std::swap(i, j);
    cells_[row * num_blocks_ + block][{i, j}] += v;
  }

  void freeze_into(std::vector<SdpRow>& rows) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t b = 0; b < num_blocks_; ++b) {
        const auto& cell = cells_[r * num_blocks_ + b];
        if (cell.empty()) continue;
        SdpBlockTerm bt;
        bt.block = static_cast<int>(b);
        bt.entries.reserve(cell.size());
        for (const auto& [ij, v] : cell) {
          if (v == 0.0) continue;
          bt.entries.push_back({ij.first, ij.second, v});
        }
        if (!bt.entries.empty()) rows[r].blocks.push_back(std::move(bt));
      }
    }
  }

 private:
  std::vector<std::map<std::pair<int, int>, double>> cells_;
  std::size_t num_blocks_;
};

void check_assembly_inputs(const PopProblem& prob, int k, double eps) {
  prob.validate();
  if (k < 0) throw std::invalid_argument("assemble: need k >= 0");
  if (!(eps >= 0.0)) throw std::invalid_argument("assemble: need eps >= 0");
}

// Drops rows with no coefficient data at all; a nonzero rhs there would make
// the problem trivially infeasible, which is reported instead.
void drop_empty_rows(SdpProblem& sdp) {
  std::vector<SdpRow> kept;
  kept.reserve(sdp.rows.size());
  int dropped = 0;
  for (auto& row : sdp.rows) {
    if (row.blocks.empty() && row.scalars.empty()) {
      if (row.rhs != 0.0)
        throw std::invalid_argument(
            "assemble: row with no coefficients but nonzero right-hand side");
      ++dropped;
      continue;
    }
    kept.push_back(std::move(row));
  }
  sdp.rows = std::move(kept);
  if (dropped > 0)
    sdp.notes.push_back("dropped " + std::to_string(dropped) +
                        " all-zero constraint rows");
}

}  // namespace

SdpProblem assemble_sos_form(const PopProblem& prob, int k, double eps) {
  check_assembly_inputs(prob, k, eps);
  const int n = prob.nvars;
  const int d_f = prob.d_f();
  const int t0 = k + d_f;
  const std::size_t m = prob.constraints.size();

  SdpProblem sdp;
  // Block 0 carries the Gram matrix of sigma_0; one block per constraint with
  // a nonempty basis at this order.
  std::vector<MonomialIndex> bases;
  sdp.gram_block.assign(m + 1, -1);
  bases.push_back(MonomialIndex::up_to(n, t0));
  sdp.gram_block[0] = 0;
  sdp.block_dims.push_back(bases[0].size());
  for (std::size_t j = 0; j < m; ++j) {
    const int tj = t0 - prob.d_g(j);
    if (tj < 0) continue;  // sigma_j forced to zero at this order
    sdp.gram_block[j + 1] = static_cast<int>(sdp.block_dims.size());
    bases.push_back(MonomialIndex::up_to(n, tj));
    sdp.block_dims.push_back(bases.back().size());
  }

  // One scalar: lambda, the bound being maximized.
  sdp.num_scalars = 1;
  sdp.scalar_names = {"lambda"};
  sdp.scalar_cost = {1.0};
  sdp.maximize = true;

  const MonomialIndex row_index = MonomialIndex::up_to(n, 2 * t0);
  sdp.rows.assign(static_cast<std::size_t>(row_index.size()), SdpRow{});
  for (int r = 0; r < row_index.size(); ++r)
    sdp.monomial_index.emplace(row_index.at(r), r);

  RowAccumulator acc(sdp.rows.size(), sdp.block_dims.size());
  // sigma_0 contributions: coefficient of beta in v^T G0 v.
  {
    const MonomialIndex& basis = bases[0];
    for (int i = 0; i < basis.size(); ++i)
      for (int j = i; j < basis.size(); ++j) {
        const int r = row_index.find(basis.at(i) * basis.at(j));
        acc.add(static_cast<std::size_t>(r), 0, i, j, 1.0);
      }
  }
  // sigma_j g_j contributions.
  for (std::size_t j = 0; j < m; ++j) {
    const int block = sdp.gram_block[j + 1];
    if (block < 0) continue;
    const MonomialIndex& basis = bases[static_cast<std::size_t>(block)];
    for (int i = 0; i < basis.size(); ++i)
      for (int l = i; l < basis.size(); ++l) {
        const Monomial pair = basis.at(i) * basis.at(l);
        for (const auto& [mg, cg] : prob.constraints[j].terms()) {
          const int r = row_index.find(pair * mg);
          acc.add(static_cast<std::size_t>(r), static_cast<std::size_t>(block),
                  i, l, cg);
        }
      }
  }
  acc.freeze_into(sdp.rows);

  // Right-hand sides: theta^k*(f + eps*theta^{d_f}); lambda coefficient:
  // -coeff_beta(theta^k), putting the identity
  //   sigma-sum = theta^k f + eps*theta^{k+d_f} - lambda*theta^k
  // into row form  <A, X> = rhs + coef*lambda.
  Polynomial rhs_poly = theta_pow_mul(prob.objective, k);
  if (eps > 0.0) rhs_poly += theta_pow(n, t0) * eps;
  for (const auto& [mon, c] : rhs_poly.terms())
    sdp.rows[static_cast<std::size_t>(row_index.find(mon))].rhs = c;
  const Polynomial thk = theta_pow(n, k);
  for (const auto& [mon, c] : thk.terms())
    sdp.rows[static_cast<std::size_t>(row_index.find(mon))].scalars.push_back(
        {0, -c});

  drop_empty_rows(sdp);
  sdp.validate();
  return sdp;
}

SdpProblem assemble_moment_form(const PopProblem& prob, int k, double eps) {
  check_assembly_inputs(prob, k, eps);
  const int n = prob.nvars;
  const int d_f = prob.d_f();
  const int t0 = k + d_f;
  const std::size_t m = prob.constraints.size();

  SdpProblem sdp;
  sdp.maximize = false;

  // Scalars: one pseudo-moment per monomial of degree <= 2(k+d_f).
  const MonomialIndex y_index = MonomialIndex::up_to(n, 2 * t0);
  sdp.num_scalars = y_index.size();
  sdp.scalar_names.reserve(static_cast<std::size_t>(y_index.size()));
  for (int i = 0; i < y_index.size(); ++i) {
    sdp.monomial_index.emplace(y_index.at(i), i);
    sdp.scalar_names.push_back("y_" + y_index.at(i).str());
  }

  // Objective: minimize L_y(theta^k (f + eps*theta^{d_f})).
  Polynomial obj_poly = theta_pow_mul(prob.objective, k);
  if (eps > 0.0) obj_poly += theta_pow(n, t0) * eps;
  sdp.scalar_cost.assign(static_cast<std::size_t>(sdp.num_scalars), 0.0);
  for (const auto& [mon, c] : obj_poly.terms())
    sdp.scalar_cost[static_cast<std::size_t>(y_index.find(mon))] = c;

  // Blocks: the moment matrix and one localizing matrix per constraint with
  // nonnegative order, each tied entrywise to the scalars.
  std::vector<MonomialIndex> bases;
  std::vector<const Polynomial*> block_poly;  // nullptr for the moment matrix
  sdp.gram_block.assign(m + 1, -1);
  bases.push_back(MonomialIndex::up_to(n, t0));
  block_poly.push_back(nullptr);
  sdp.gram_block[0] = 0;
  sdp.block_dims.push_back(bases[0].size());
  for (std::size_t j = 0; j < m; ++j) {
    const int tj = t0 - prob.d_g(j);
    if (tj < 0) continue;
    sdp.gram_block[j + 1] = static_cast<int>(sdp.block_dims.size());
    bases.push_back(MonomialIndex::up_to(n, tj));
    block_poly.push_back(&prob.constraints[j]);
    sdp.block_dims.push_back(bases.back().size());
  }

  // Tie rows: X_b[i][j] = L_y(g_b * x^{a_i + a_j}); the entry value 1 (or 1/2
  // off-diagonal) makes <A, X> read off exactly X[i][j].
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const MonomialIndex& basis = bases[b];
    for (int i = 0; i < basis.size(); ++i)
      for (int j = i; j < basis.size(); ++j) {
        SdpRow row;
        SdpBlockTerm bt;
        bt.block = static_cast<int>(b);
        bt.entries.push_back({i, j, i == j ? 1.0 : 0.5});
        row.blocks.push_back(std::move(bt));
        const Monomial pair = basis.at(i) * basis.at(j);
        if (block_poly[b] == nullptr) {
          row.scalars.push_back({y_index.find(pair), 1.0});
        } else {
          std::map<int, double> coefs;
          for (const auto& [mg, cg] : block_poly[b]->terms())
            coefs[y_index.find(pair * mg)] += cg;
          for (const auto& [idx, cg] : coefs)
            if (cg != 0.0) row.scalars.push_back({idx, cg});
        }
        sdp.rows.push_back(std::move(row));
      }
  }

  // Normalization L_y(theta^k) = 1, encoded as 0 = rhs + sum coef*y with
  // rhs = 1 and coefficients -coeff_beta(theta^k).
  {
    SdpRow row;
    row.rhs = 1.0;
    const Polynomial thk = theta_pow(n, k);
    for (const auto& [mon, c] : thk.terms())
      row.scalars.push_back({y_index.find(mon), -c});
    sdp.rows.push_back(std::move(row));
  }

  drop_empty_rows(sdp);
  sdp.validate();
  return sdp;
}

// ---------------------------------------------------------------------------
// Text serialization

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string serialize_sdp(const SdpProblem& sdp) {
  std::ostringstream os;
  os << "sdp 1\n";
  os << "blocks " << sdp.block_dims.size();
  for (int d : sdp.block_dims) os << " " << d;
  os << "\n";
  os << "scalars " << sdp.num_scalars << "\n";
  os << "sense " << (sdp.maximize ? "maximize" : "minimize") << "\n";
  for (std::size_t i = 0; i < sdp.scalar_cost.size(); ++i)
    if (sdp.scalar_cost[i] != 0.0)
      os << "cost_scalar " << i << " " << fmt_double(sdp.scalar_cost[i])
         << "\n";
  for (std::size_t b = 0; b < sdp.block_cost.size(); ++b) {
    const SymMatrix& c = sdp.block_cost[b];
    for (int i = 0; i < c.dim(); ++i)
      for (int j = i; j < c.dim(); ++j)
        if (c.at(i, j) != 0.0)
          os << "cost_block " << b << " " << i << " " << j << " "
             << fmt_double(c.at(i, j)) << "\n";
  }
  for (std::size_t r = 0; r < sdp.rows.size(); ++r) {
    const SdpRow& row = sdp.rows[r];
    os << "row " << r << " rhs " << fmt_double(row.rhs) << "\n";
    for (const SdpBlockTerm& bt : row.blocks)
      for (const SdpEntry& e : bt.entries)
        os << "entry " << r << " " << bt.block << " " << e.i << " " << e.j
           << " " << fmt_double(e.v) << "\n";
    for (const auto& [idx, v] : row.scalars)
      os << "scoef " << r << " " << idx << " " << fmt_double(v) << "\n";
  }
  os << "end\n";
  return os.str();
}

SdpProblem parse_sdp(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  SdpProblem sdp;
  if (!(is >> tok) || tok != "sdp")
    throw std::invalid_argument("parse_sdp: missing header");
  int version;
  if (!(is >> version) || version != 1)
    throw std::invalid_argument("parse_sdp: unsupported version");
  auto expect_int = [&](const char* what) {
    long long v;
    if (!(is >> v))
      throw std::invalid_argument(std::string("parse_sdp: expected integer for ") + what);
    return v;
  };
  auto expect_double = [&](const char* what) {
    double v;
    if (!(is >> v))
      throw std::invalid_argument(std::string("parse_sdp: expected number for ") + what);
    return v;
  };
  while (is >> tok) {
    if (tok == "end") break;
    if (tok == "blocks") {
      const long long nb = expect_int("block count");
      for (long long b = 0; b < nb; ++b)
        sdp.block_dims.push_back(static_cast<int>(expect_int("block dim")));
    } else if (tok == "scalars") {
      sdp.num_scalars = static_cast<int>(expect_int("scalar count"));
    } else if (tok == "sense") {
      std::string sense;
      is >> sense;
      if (sense == "maximize")
        sdp.maximize = true;
      else if (sense == "minimize")
        sdp.maximize = false;
      else
        throw std::invalid_argument("parse_sdp: bad sense " + sense);
    } else if (tok == "cost_scalar") {
      const long long i = expect_int("cost index");
      const double v = expect_double("cost value");
      if (sdp.scalar_cost.empty())
        sdp.scalar_cost.assign(static_cast<std::size_t>(sdp.num_scalars), 0.0);
      sdp.scalar_cost.at(static_cast<std::size_t>(i)) = v;
    } else if (tok == "cost_block") {
      const long long b = expect_int("cost block");
      const long long i = expect_int("cost i");
      const long long j = expect_int("cost j");
      const double v = expect_double("cost value");
      if (sdp.block_cost.empty())
        for (int d : sdp.block_dims) sdp.block_cost.emplace_back(d);
      sdp.block_cost.at(static_cast<std::size_t>(b))
          .at(static_cast<int>(i), static_cast<int>(j)) = v;
    } else if (tok == "row") {
      const long long r = expect_int("row index");
      std::string kw;
      is >> kw;
      if (kw != "rhs") throw std::invalid_argument("parse_sdp: expected rhs");
      const double v = expect_double("rhs value");
      if (static_cast<std::size_t>(r) >= sdp.rows.size())
        sdp.rows.resize(static_cast<std::size_t>(r) + 1);
      sdp.rows[static_cast<std::size_t>(r)].rhs = v;
    } else if (tok == "entry") {
      const long long r = expect_int("entry row");
      const long long b = expect_int("entry block");
      const long long i = expect_int("entry i");
      const long long j = expect_int("entry j");
      const double v = expect_double("entry value");
      if (static_cast<std::size_t>(r) >= sdp.rows.size())
        sdp.rows.resize(static_cast<std::size_t>(r) + 1);
      SdpRow& row = sdp.rows[static_cast<std::size_t>(r)];
      SdpBlockTerm* bt = nullptr;
      for (SdpBlockTerm& cand : row.blocks)
        if (cand.block == b) bt = &cand;
      if (!bt) {
        row.blocks.push_back({static_cast<int>(b), {}});
        bt = &row.blocks.back();
      }
      bt->entries.push_back({static_cast<int>(i), static_cast<int>(j), v});
    } else if (tok == "scoef") {
      const long long r = expect_int("scoef row");
      const long long i = expect_int("scoef index");
      const double v = expect_double("scoef value");
      if (static_cast<std::size_t>(r) >= sdp.rows.size())
        sdp.rows.resize(static_cast<std::size_t>(r) + 1);
      sdp.rows[static_cast<std::size_t>(r)].scalars.push_back(
          {static_cast<int>(i), v});
    } else {
      throw std::invalid_argument("parse_sdp: unknown directive " + tok);
    }
  }
  sdp.validate();
  return sdp;
}

}  // namespace pvh
