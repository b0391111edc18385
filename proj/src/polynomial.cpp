#include "pvh/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pvh {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::unit(int nvars) {
  return Monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0));
}

int Monomial::degree() const {
  return std::accumulate(e.begin(), e.end(), 0);
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (e.size() != o.e.size())
    throw std::invalid_argument("Monomial: variable count mismatch");
  Monomial r(*this);
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

std::string Monomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (e[i] > 1) os << "^" << e[i];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Within a degree, x1-heavy monomials come first: a precedes b when a is
  // lexicographically greater.
  return std::lexicographical_compare(b.e.begin(), b.e.end(), a.e.begin(),
                                      a.e.end());
}

namespace {
void emit_exact(int n, int deg, std::vector<int>& cur, int pos,
                std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur[pos] = deg;
    out.emplace_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[pos] = e;
    emit_exact(n, deg - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}
}  // namespace

std::vector<Monomial> monomials_exact(int n, int deg) {
  if (n < 1 || deg < 0)
    throw std::invalid_argument("monomials_exact: need n >= 1, deg >= 0");
  std::vector<Monomial> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  emit_exact(n, deg, cur, 0, out);
  return out;
}

std::vector<Monomial> monomials_up_to(int n, int deg) {
  if (n < 1 || deg < 0)
    throw std::invalid_argument("monomials_up_to: need n >= 1, deg >= 0");
  std::vector<Monomial> out;
  out.reserve(monomial_count(n, deg));
  for (int d = 0; d <= deg; ++d) {
    auto level = monomials_exact(n, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

unsigned long long binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned long long r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const unsigned long long num = n - k + i;
    // r * num / i is integral at every step; guard the multiply.
    const unsigned long long g = std::gcd(r, (unsigned long long)i);
    const unsigned long long ri = r / g;
    const unsigned long long ii = i / g;
    const unsigned long long num2 = num / ii;
    if (num2 != 0 && ri > ~0ULL / num2)
      throw std::overflow_error("binomial: result exceeds 64 bits");
    r = ri * num2;
  }
  return r;
}

double binomial_real(double n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r *= (n - k + i) / i;
  return r;
}

std::uint64_t monomial_count(int n, int deg) {
  return binomial(static_cast<unsigned>(n + deg), static_cast<unsigned>(n));
}

MonomialIndex::MonomialIndex(std::vector<Monomial> list)
    : list_(std::move(list)) {
  for (int i = 0; i < static_cast<int>(list_.size()); ++i)
    pos_.emplace(list_[i], i);
}

MonomialIndex MonomialIndex::up_to(int n, int deg) {
  return MonomialIndex(monomials_up_to(n, deg));
}

int MonomialIndex::find(const Monomial& m) const {
  auto it = pos_.find(m);
  return it == pos_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw std::invalid_argument("Polynomial: negative nvars");
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.set_coeff(Monomial::unit(nvars), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  if (i < 0 || i >= nvars)
    throw std::invalid_argument("Polynomial::variable: index out of range");
  Monomial m = Monomial::unit(nvars);
  m.e[static_cast<std::size_t>(i)] = 1;
  Polynomial p(nvars);
  p.set_coeff(m, 1.0);
  return p;
}

Polynomial Polynomial::term(Monomial m, double c) {
  Polynomial p(m.nvars());
  p.set_coeff(m, c);
  return p;
}

int Polynomial::degree() const {
  // Terms are held in graded order, so the last one carries the degree.
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

double Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::set_coeff(const Monomial& m, double c) {
  if (m.nvars() != nvars_)
    throw std::invalid_argument("Polynomial: monomial variable count mismatch");
  if (c == 0.0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

void Polynomial::add_term(const Monomial& m, double c) {
  if (m.nvars() != nvars_)
    throw std::invalid_argument("Polynomial: monomial variable count mismatch");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  } else if (c == 0.0) {
    terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("Polynomial +: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("Polynomial -: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, double s) { return a *= s; }
Polynomial operator*(double s, Polynomial a) { return a *= s; }

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  return r *= -1.0;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("Polynomial *: variable count mismatch");
  Polynomial r(a.nvars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    os << std::fabs(c);
    if (m.degree() > 0) os << "*" << m.str();
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Free operations

double evaluate(const Polynomial& p, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.nvars())
    throw std::invalid_argument("evaluate: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int k = 0; k < m.e[i]; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

Polynomial derivative(const Polynomial& p, int var) {
  if (var < 0 || var >= p.nvars())
    throw std::invalid_argument("derivative: variable index out of range");
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const int e = m.e[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    Monomial d = m;
    d.e[static_cast<std::size_t>(var)] = e - 1;
    r.add_term(d, c * e);
  }
  return r;
}

bool is_homogeneous(const Polynomial& p) {
  if (p.is_zero()) return true;
  const int d = p.terms().begin()->first.degree();
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    if (m.degree() != d) return false;
  }
  return true;
}

Polynomial homogenize(const Polynomial& p, int target_deg) {
  if (target_deg < std::max(0, p.degree()))
    throw std::invalid_argument(
        "homogenize: target degree below polynomial degree");
  Polynomial r(p.nvars() + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial h(m.e);
    h.e.push_back(target_deg - m.degree());
    r.add_term(h, c);
  }
  return r;
}

Polynomial dehomogenize(const Polynomial& p) {
  if (p.nvars() < 2)
    throw std::invalid_argument("dehomogenize: need at least two variables");
  Polynomial r(p.nvars() - 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial d(std::vector<int>(m.e.begin(), m.e.end() - 1));
    r.add_term(d, c);
  }
  return r;
}

Polynomial norm_sq(int nvars) {
  Polynomial r(nvars);
  for (int i = 0; i < nvars; ++i) {
    Monomial m = Monomial::unit(nvars);
    m.e[static_cast<std::size_t>(i)] = 2;
    r.add_term(m, 1.0);
  }
  return r;
}

Polynomial norm_sq_pow(int nvars, int k) {
  if (k < 0) throw std::invalid_argument("norm_sq_pow: negative power");
  Polynomial r = Polynomial::constant(nvars, 1.0);
  const Polynomial base = norm_sq(nvars);
  for (int i = 0; i < k; ++i) r = r * base;
  return r;
}

Polynomial theta_poly(int nvars) {
  return Polynomial::constant(nvars, 1.0) + norm_sq(nvars);
}

Polynomial theta_pow(int nvars, int k) {
  if (k < 0) throw std::invalid_argument("theta_pow: negative power");
  Polynomial r = Polynomial::constant(nvars, 1.0);
  const Polynomial th = theta_poly(nvars);
  for (int i = 0; i < k; ++i) r = r * th;
  return r;
}

Polynomial theta_pow_mul(const Polynomial& p, int k) {
  return theta_pow(p.nvars(), k) * p;
}

double weighted_norm(const Polynomial& p) {
  // max over terms of |c_a| * a_1! ... a_n! / |a|!, the reciprocal of the
  // multinomial coefficient, computed as a product of binomials.
  double best = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double multinomial = 1.0;
    int partial = 0;
    for (int e : m.e) {
      partial += e;
      multinomial *= binomial_real(partial, static_cast<unsigned>(e));
    }
    best = std::max(best, std::fabs(c) / multinomial);
  }
  return best;
}

double max_abs_coeff(const Polynomial& p) {
  double best = 0.0;
  for (const auto& [m, c] : p.terms()) {
    (void)m;
    best = std::max(best, std::fabs(c));
  }
  return best;
}

bool poly_close(const Polynomial& a, const Polynomial& b, double tol) {
  if (a.nvars() != b.nvars()) return false;
  const Polynomial d = a - b;
  return max_abs_coeff(d) <= tol;
}

}  // namespace pvh
