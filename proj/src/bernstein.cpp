#include "pvh/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pvh/linalg.hpp"
#include "pvh/monomial.hpp"
#include "pvh/util.hpp"

namespace pvh {

namespace {

constexpr std::size_t kEvalBudget = 10'000'000;
constexpr int kExactDegreeCap = 60;  // binomial products stay exact in 128 bit

void check_function(const SampledFunction& f) {
  if (f.n < 1) throw std::invalid_argument("SampledFunction: n must be >= 1");
  if (!f.eval)
    throw std::invalid_argument("SampledFunction: eval is not callable");
  if (!(f.lipschitz > 0.0))
    throw std::invalid_argument("SampledFunction: lipschitz must be > 0");
  if (f.sup_bound < 0.0)
    throw std::invalid_argument("SampledFunction: sup_bound must be >= 0");
}

// Column k holds the monomial coefficients of binom(d,k) x^k (1-x)^{d-k}.
Mat unit_transform(int d) {
  Mat t(static_cast<std::size_t>(d) + 1, static_cast<std::size_t>(d) + 1);
  if (d <= kExactDegreeCap) {
    for (int k = 0; k <= d; ++k) {
      const __int128 bk = static_cast<__int128>(binomial(d, k));
      for (int row = k; row <= d; ++row) {
        const __int128 v = bk * static_cast<__int128>(binomial(d - k, row - k));
        const double sign = (row - k) % 2 ? -1.0 : 1.0;
        t(row, k) = sign * static_cast<double>(v);
      }
    }
  } else {
    for (int k = 0; k <= d; ++k) {
      const double bk = binomial_real(d, static_cast<unsigned>(k));
      for (int row = k; row <= d; ++row) {
        const double sign = (row - k) % 2 ? -1.0 : 1.0;
        t(row, k) =
            sign * bk * binomial_real(d - k, static_cast<unsigned>(row - k));
      }
    }
  }
  return t;
}

// Column k holds the monomial coefficients of
// binom(d,k) ((1+x)/2)^k ((1-x)/2)^{d-k} on [-1,1].
Mat shifted_transform(int d) {
  Mat t(static_cast<std::size_t>(d) + 1, static_cast<std::size_t>(d) + 1);
  if (d <= kExactDegreeCap) {
    for (int k = 0; k <= d; ++k) {
      const __int128 bk = static_cast<__int128>(binomial(d, k));
      for (int row = 0; row <= d; ++row) {
        // Coefficient of x^row in (1+x)^k (1-x)^{d-k}, exact.
        __int128 w = 0;
        for (int i = std::max(0, row - (d - k)); i <= std::min(k, row); ++i) {
          const __int128 term = static_cast<__int128>(binomial(k, i)) *
                                static_cast<__int128>(binomial(d - k, row - i));
          w += (row - i) % 2 ? -term : term;
        }
        t(row, k) = std::ldexp(static_cast<double>(bk * w), -d);
      }
    }
  } else {
    // Build ((1+x)/2)^k ((1-x)/2)^{d-k} by repeated averaging; every
    // intermediate coefficient stays bounded by 1, and only the final
    // binomial scale is inexact.
    std::vector<double> coef;
    for (int k = 0; k <= d; ++k) {
      coef.assign(static_cast<std::size_t>(d) + 1, 0.0);
      coef[0] = 1.0;
      int len = 1;
      for (int step = 0; step < k; ++step, ++len)
        for (int i = len; i >= 0; --i)
          coef[i] = 0.5 * ((i < len ? coef[i] : 0.0) +
                           (i > 0 ? coef[i - 1] : 0.0));
      for (int step = 0; step < d - k; ++step, ++len)
        for (int i = len; i >= 0; --i)
          coef[i] = 0.5 * ((i < len ? coef[i] : 0.0) -
                           (i > 0 ? coef[i - 1] : 0.0));
      const double bk = binomial_real(d, static_cast<unsigned>(k));
      for (int row = 0; row <= d; ++row) t(row, k) = bk * coef[row];
    }
  }
  return t;
}

// Binomial basis values binom(d,k) p^k (1-p)^{d-k}; computed in log space so
// no underflow or cancellation occurs for any p in [0,1].
std::vector<double> basis_values(int d, double p) {
  std::vector<double> b(static_cast<std::size_t>(d) + 1, 0.0);
  if (p <= 0.0) {
    b[0] = 1.0;
    return b;
  }
  if (p >= 1.0) {
    b[static_cast<std::size_t>(d)] = 1.0;
    return b;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lg = std::lgamma(d + 1.0);
  for (int k = 0; k <= d; ++k)
    b[static_cast<std::size_t>(k)] =
        std::exp(lg - std::lgamma(k + 1.0) - std::lgamma(d - k + 1.0) +
                 k * lp + (d - k) * lq);
  return b;
}

}  // namespace

BernsteinForm::BernsteinForm(const SampledFunction& f01,
                             std::vector<int> degrees) {
  check_function(f01);
  if (static_cast<int>(degrees.size()) != f01.n)
    throw std::invalid_argument(
        "BernsteinForm: degrees size must equal the variable count");
  std::size_t total = 1;
  for (int d : degrees) {
    if (d < 1)
      throw std::invalid_argument("BernsteinForm: every degree must be >= 1");
    total *= static_cast<std::size_t>(d) + 1;
    if (total > kEvalBudget)
      throw std::invalid_argument(
          "BernsteinForm: sample count " + std::to_string(total) +
          "+ exceeds the 10^7 evaluation budget");
  }
  n_ = f01.n;
  degrees_ = std::move(degrees);
  values_.assign(total, 0.0);
  parallel_for(0, total, [&](std::size_t idx) {
    std::vector<double> x(static_cast<std::size_t>(n_));
    std::size_t rem = idx;
    for (int j = 0; j < n_; ++j) {
      const std::size_t e = static_cast<std::size_t>(degrees_[j]) + 1;
      const std::size_t k = rem % e;
      rem /= e;
      x[j] = static_cast<double>(k) / degrees_[j];
    }
    values_[idx] = f01.eval(x);
  });
}

BernsteinForm BernsteinForm::shifted(const SampledFunction& f, int k) {
  check_function(f);
  if (k < 1) throw std::invalid_argument("BernsteinForm: k must be >= 1");
  BernsteinForm form;
  form.n_ = f.n;
  form.shifted_ = true;
  form.degrees_.assign(static_cast<std::size_t>(f.n), k);
  std::size_t total = 1;
  for (int j = 0; j < f.n; ++j) {
    total *= static_cast<std::size_t>(k) + 1;
    if (total > kEvalBudget)
      throw std::invalid_argument(
          "BernsteinForm: sample count " + std::to_string(total) +
          "+ exceeds the 10^7 evaluation budget");
  }
  form.values_.assign(total, 0.0);
  const std::size_t e = static_cast<std::size_t>(k) + 1;
  parallel_for(0, total, [&](std::size_t idx) {
    std::vector<double> x(static_cast<std::size_t>(f.n));
    std::size_t rem = idx;
    for (int j = 0; j < f.n; ++j) {
      x[j] = 2.0 * static_cast<double>(rem % e) / k - 1.0;
      rem /= e;
    }
    form.values_[idx] = f.eval(x);
  });
  return form;
}

double BernsteinForm::value(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("BernsteinForm::value: wrong point dimension");
  std::vector<double> cur = values_;
  std::vector<double> next;
  std::size_t len = cur.size();
  // Contract the slowest axis repeatedly (axis 0 is fastest in the layout).
  for (int j = n_ - 1; j >= 0; --j) {
    const int d = degrees_[j];
    const std::size_t e = static_cast<std::size_t>(d) + 1;
    const std::size_t stride = len / e;
    double p = shifted_ ? 0.5 * (x[j] + 1.0) : x[j];
    p = std::min(1.0, std::max(0.0, p));
    const std::vector<double> b = basis_values(d, p);
    next.assign(stride, 0.0);
    for (std::size_t k = 0; k < e; ++k) {
      const double bk = b[k];
      if (bk == 0.0) continue;
      const double* src = cur.data() + k * stride;
      for (std::size_t r = 0; r < stride; ++r) next[r] += bk * src[r];
    }
    cur.swap(next);
    len = stride;
  }
  return cur[0];
}

Polynomial BernsteinForm::expand() const {
  std::vector<double> cur = values_;
  std::vector<double> gather, scatter;
  std::size_t stride = 1;
  for (int j = 0; j < n_; ++j) {
    const int d = degrees_[j];
    const std::size_t e = static_cast<std::size_t>(d) + 1;
    const Mat t = shifted_ ? shifted_transform(d) : unit_transform(d);
    const std::size_t outer = cur.size() / (e * stride);
    gather.assign(e, 0.0);
    scatter.assign(e, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < stride; ++i) {
        const std::size_t base = o * e * stride + i;
        for (std::size_t k = 0; k < e; ++k)
          gather[k] = cur[base + k * stride];
        for (std::size_t row = 0; row < e; ++row) {
          double acc = 0.0;
          for (std::size_t k = 0; k < e; ++k) acc += t(row, k) * gather[k];
          scatter[row] = acc;
        }
        for (std::size_t k = 0; k < e; ++k)
          cur[base + k * stride] = scatter[k];
      }
    stride *= e;
  }
  Polynomial out(n_);
  Monomial mono;
  mono.e.assign(static_cast<std::size_t>(n_), 0);
  for (std::size_t idx = 0; idx < cur.size(); ++idx) {
    if (cur[idx] == 0.0) continue;
    std::size_t rem = idx;
    for (int j = 0; j < n_; ++j) {
      const std::size_t e = static_cast<std::size_t>(degrees_[j]) + 1;
      mono.e[static_cast<std::size_t>(j)] = static_cast<int>(rem % e);
      rem /= e;
    }
    out.add_term(mono, cur[idx]);
  }
  return out;
}

Polynomial bernstein_poly(const SampledFunction& f01,
                          const std::vector<int>& degrees) {
  return BernsteinForm(f01, degrees).expand();
}

Polynomial bernstein_shifted(const SampledFunction& f, int k) {
  return BernsteinForm::shifted(f, k).expand();
}

Polynomial even_part(const Polynomial& p) {
  Polynomial out(p.nvars());
  for (const auto& [mono, c] : p.terms())
    if (mono.degree() % 2 == 0) out.add_term(mono, c);
  return out;
}

Polynomial homogeneous_lift(const Polynomial& p, int u) {
  const int n = p.nvars();
  if (u < 0) throw std::invalid_argument("homogeneous_lift: u must be >= 0");
  const int target = 2 * n * u;
  for (const auto& [mono, c] : p.terms()) {
    (void)c;
    if (mono.degree() % 2 != 0)
      throw std::invalid_argument(
          "homogeneous_lift: term of odd total degree " + mono.str() +
          " present; apply even_part first");
    if (mono.degree() > target)
      throw std::invalid_argument(
          "homogeneous_lift: degree " + std::to_string(mono.degree()) +
          " exceeds 2nu = " + std::to_string(target));
  }
  Polynomial out(n);
  for (const auto& [mono, c] : p.terms()) {
    const int t = mono.degree() / 2;
    out += Polynomial::term(mono, c) * norm_sq_pow(n, n * u - t);
  }
  return out;
}

long long bernstein_degree_for(double eps, double C_g, double C_phi,
                               double L_phi, int n, int m) {
  if (!(eps > 0.0) || !(C_g > 0.0) || !(C_phi > 0.0) || !(L_phi > 0.0) ||
      n < 1 || m < 0)
    throw std::invalid_argument(
        "bernstein_degree_for: all inputs must be positive (m >= 0)");
  const double mm = static_cast<double>(m) + 1.0;
  const double raw = 2.0 * C_g * C_g * C_phi * C_phi * n * L_phi * L_phi *
                     mm * mm * std::ldexp(1.0, 2 * m) / (eps * eps);
  const double up = std::ceil(raw);
  if (!std::isfinite(up) || up >= 9.2e18)
    return std::numeric_limits<long long>::max();
  return static_cast<long long>(up);
}

namespace {

int default_resolution(int n) { return n == 1 ? 401 : n == 2 ? 101 : 41; }

}  // namespace

double estimate_lipschitz(const SampledFunction& f, int resolution) {
  check_function(f);
  const int res = resolution > 0 ? resolution : default_resolution(f.n);
  if (res < 2)
    throw std::invalid_argument("estimate_lipschitz: resolution must be >= 2");
  const double h = 2.0 / (res - 1);
  std::size_t total = 1;
  for (int j = 0; j < f.n; ++j) total *= static_cast<std::size_t>(res);
  if (total > kEvalBudget)
    throw std::invalid_argument(
        "estimate_lipschitz: grid exceeds the evaluation budget");
  double best = 0.0;
  std::vector<double> x(static_cast<std::size_t>(f.n)),
      y(static_cast<std::size_t>(f.n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int j = 0; j < f.n; ++j) {
      x[j] = -1.0 + h * static_cast<double>(rem % res);
      rem /= res;
    }
    const double fx = f.eval(x);
    for (int j = 0; j < f.n; ++j) {
      if (x[j] + h > 1.0 + 1e-12) continue;
      y = x;
      y[j] += h;
      best = std::max(best, std::fabs(f.eval(y) - fx) / h);
    }
  }
  return best;
}

double estimate_sup(const SampledFunction& f, int resolution) {
  check_function(f);
  const int res = resolution > 0 ? resolution : default_resolution(f.n);
  if (res < 2)
    throw std::invalid_argument("estimate_sup: resolution must be >= 2");
  const double h = 2.0 / (res - 1);
  std::size_t total = 1;
  for (int j = 0; j < f.n; ++j) total *= static_cast<std::size_t>(res);
  if (total > kEvalBudget)
    throw std::invalid_argument(
        "estimate_sup: grid exceeds the evaluation budget");
  double best = 0.0;
  std::vector<double> x(static_cast<std::size_t>(f.n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int j = 0; j < f.n; ++j) {
      x[j] = -1.0 + h * static_cast<double>(rem % res);
      rem /= res;
    }
    best = std::max(best, std::fabs(f.eval(x)));
  }
  return best;
}

}  // namespace pvh
