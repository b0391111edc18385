// Monomials as exponent vectors, with the graded-lexicographic order used as
// the single canonical convention across the codebase: degree ascending, and
// within a degree lexicographically by exponents with x1 heaviest, so the
// basis listing starts [1, x1, x2, x1^2, x1*x2, x2^2, ...].

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pvh {

struct Monomial {
  std::vector<int> e;  // one exponent per variable, all >= 0

  Monomial() = default;
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
  static Monomial unit(int nvars);  // the constant monomial 1

  int nvars() const { return static_cast<int>(e.size()); }
  int degree() const;
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }

  Monomial operator*(const Monomial& o) const;  // exponent-wise sum
  std::string str() const;                      // e.g. "x1^2*x3"
};

// Strict order giving the canonical basis listing described above.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials in n variables of total degree <= deg / == deg, listed in
// canonical order.
std::vector<Monomial> monomials_up_to(int n, int deg);
std::vector<Monomial> monomials_exact(int n, int deg);

// Exact binomial coefficient; throws std::overflow_error past 64 bits.
unsigned long long binomial(unsigned n, unsigned k);

// Binomial coefficient as a double (valid beyond the 64-bit range).
double binomial_real(double n, unsigned k);

// C(n+deg, n): the length of monomials_up_to(n, deg).
std::uint64_t monomial_count(int n, int deg);

// Position lookup for a fixed monomial list in canonical order.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(std::vector<Monomial> list);
  static MonomialIndex up_to(int n, int deg);

  const std::vector<Monomial>& list() const { return list_; }
  int size() const { return static_cast<int>(list_.size()); }
  const Monomial& at(int i) const { return list_[i]; }
  // Index of m, or -1 when absent.
  int find(const Monomial& m) const;

 private:
  std::vector<Monomial> list_;
  std::map<Monomial, int, GrlexLess> pos_;
};

}  // namespace pvh
