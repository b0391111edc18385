// Bernstein approximants: exact reproduction cases, error bounds for |x|,
// stable evaluation vs monomial expansion, even-symmetrization, homogeneous
// lifting, and the degree formula.

#include <climits>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pvh/bernstein.hpp"

using pvh::BernsteinForm;
using pvh::Monomial;
using pvh::Polynomial;
using pvh::SampledFunction;

namespace {

SampledFunction abs_fn() {
  SampledFunction f;
  f.n = 1;
  f.eval = [](const std::vector<double>& x) { return std::fabs(x[0]); };
  f.lipschitz = 1.0;
  f.sup_bound = 1.0;
  return f;
}

}  // namespace

TEST_CASE("constructor validation") {
  SampledFunction f = abs_fn();
  CHECK_THROWS_AS(BernsteinForm(f, {0}), std::invalid_argument);
  CHECK_THROWS_AS(BernsteinForm(f, {}), std::invalid_argument);
  SampledFunction f2 = abs_fn();
  f2.n = 2;
  f2.eval = [](const std::vector<double>& x) { return x[0] + x[1]; };
  // 4001^2 > 10^7 samples: over budget.
  CHECK_THROWS_AS(BernsteinForm(f2, {4000, 4000}), std::invalid_argument);
  CHECK_THROWS_AS(BernsteinForm::shifted(f, 0), std::invalid_argument);
}

TEST_CASE("constants and affine functions are reproduced exactly") {
  SampledFunction c;
  c.n = 1;
  c.eval = [](const std::vector<double>&) { return 3.25; };
  c.lipschitz = 1.0;
  const BernsteinForm bc(c, {7});
  CHECK(bc.value({0.3}) == doctest::Approx(3.25).epsilon(1e-12));
  const Polynomial pc = bc.expand();
  CHECK(pc.coeff(Monomial({0})) == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(pc.term_count() == 1);

  SampledFunction a;
  a.n = 1;
  a.eval = [](const std::vector<double>& x) { return 2.0 * x[0] - 1.0; };
  a.lipschitz = 2.0;
  const BernsteinForm ba(a, {5});
  CHECK(ba.value({0.42}) == doctest::Approx(2.0 * 0.42 - 1.0).epsilon(1e-12));
  Polynomial want(1);
  want.add_term(Monomial({1}), 2.0);
  want.add_term(Monomial({0}), -1.0);
  CHECK(pvh::poly_close(ba.expand(), want, 1e-9));
}

TEST_CASE("degree-2 approximant of x^2 on [0,1] is x/2 + x^2/2") {
  SampledFunction sq;
  sq.n = 1;
  sq.eval = [](const std::vector<double>& x) { return x[0] * x[0]; };
  sq.lipschitz = 2.0;
  const BernsteinForm b(sq, {2});
  const Polynomial p = b.expand();
  CHECK(p.coeff(Monomial({0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.coeff(Monomial({1})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.coeff(Monomial({2})) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shifted |x| approximation obeys the Lipschitz error bound") {
  const SampledFunction f = abs_fn();
  for (int k : {4, 16, 64}) {
    const BernsteinForm b = BernsteinForm::shifted(f, k);
    CHECK(b.is_shifted());
    CHECK(b.nvars() == 1);
    double max_err = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = -1.0 + 2.0 * i / 400.0;
      max_err = std::max(max_err, std::fabs(b.value({x}) - std::fabs(x)));
    }
    CHECK(max_err <= std::sqrt(1.0 / k) + 1e-12);
  }
}

TEST_CASE("expansion agrees with stable evaluation at moderate degree") {
  const BernsteinForm b = BernsteinForm::shifted(abs_fn(), 8);
  const Polynomial p = b.expand();
  for (int i = 0; i <= 100; ++i) {
    const double x = -1.0 + 2.0 * i / 100.0;
    CHECK(pvh::evaluate(p, {x}) ==
          doctest::Approx(b.value({x})).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("stable evaluation stays accurate at degree 100") {
  const BernsteinForm b = BernsteinForm::shifted(abs_fn(), 100);
  double max_err = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -1.0 + 2.0 * i / 1000.0;
    max_err = std::max(max_err, std::fabs(b.value({x}) - std::fabs(x)));
  }
  CHECK(max_err <= 0.1);
  // The approximant is a convex combination of sampled values, so it cannot
  // exceed the sup of |f|.
  double max_val = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -1.0 + 2.0 * i / 1000.0;
    max_val = std::max(max_val, std::fabs(b.value({x})));
  }
  CHECK(max_val <= 1.0 + 1e-9);
}

TEST_CASE("two-variable approximant matches a product function") {
  SampledFunction f;
  f.n = 2;
  f.eval = [](const std::vector<double>& x) { return x[0] * x[1]; };
  f.lipschitz = 2.0;
  const BernsteinForm b = BernsteinForm::shifted(f, 6);
  // Bilinear functions are reproduced exactly by tensor Bernstein operators.
  CHECK(b.value({0.5, -0.25}) == doctest::Approx(-0.125).epsilon(1e-10));
  CHECK(pvh::bernstein_shifted(f, 4).coeff(Monomial({1, 1})) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("even_part drops odd-degree terms") {
  // (1+x)^3 = 1 + 3x + 3x^2 + x^3 -> 1 + 3x^2.
  Polynomial one = Polynomial::constant(1, 1.0);
  Polynomial x = Polynomial::variable(1, 0);
  const Polynomial cube = (one + x) * (one + x) * (one + x);
  const Polynomial ev = pvh::even_part(cube);
  CHECK(ev.coeff(Monomial({0})) == 1.0);
  CHECK(ev.coeff(Monomial({2})) == 3.0);
  CHECK(ev.coeff(Monomial({1})) == 0.0);
  CHECK(ev.coeff(Monomial({3})) == 0.0);
  CHECK(ev.term_count() == 2);
}

TEST_CASE("homogeneous_lift embeds even polynomials on the sphere") {
  // Constant 1 in one variable, u = 1 -> x^2.
  const Polynomial lifted = pvh::homogeneous_lift(Polynomial::constant(1, 1.0), 1);
  CHECK(lifted.coeff(Monomial({2})) == 1.0);
  CHECK(lifted.term_count() == 1);

  // x^2 in two variables, u = 1 (target degree 2nu = 4) -> x^2(x^2+y^2).
  Polynomial x2(2);
  x2.add_term(Monomial({2, 0}), 1.0);
  const Polynomial l2 = pvh::homogeneous_lift(x2, 1);
  CHECK(l2.coeff(Monomial({4, 0})) == 1.0);
  CHECK(l2.coeff(Monomial({2, 2})) == 1.0);
  CHECK(pvh::is_homogeneous(l2));
  CHECK(l2.degree() == 4);

  // Odd-degree terms and degree overflow are rejected.
  Polynomial odd(1);
  odd.add_term(Monomial({1}), 1.0);
  CHECK_THROWS_AS(pvh::homogeneous_lift(odd, 1), std::invalid_argument);
  Polynomial quart(1);
  quart.add_term(Monomial({4}), 1.0);
  CHECK_THROWS_AS(pvh::homogeneous_lift(quart, 1), std::invalid_argument);
}

TEST_CASE("degree formula hand value and saturation") {
  // 2 * 1 * 1 * 1 * 1 * (1+1)^2 * 2^2 / 1 = 32.
  CHECK(pvh::bernstein_degree_for(1.0, 1.0, 1.0, 1.0, 1, 1) == 32);
  CHECK(pvh::bernstein_degree_for(1e-300, 1.0, 1.0, 1.0, 3, 1) == LLONG_MAX);
  CHECK_THROWS_AS(pvh::bernstein_degree_for(0.0, 1.0, 1.0, 1.0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("grid estimators") {
  CHECK(pvh::estimate_lipschitz(abs_fn(), 401) == doctest::Approx(1.0).epsilon(1e-6));
  SampledFunction sq;
  sq.n = 1;
  sq.eval = [](const std::vector<double>& x) { return x[0] * x[0]; };
  sq.lipschitz = 2.0;
  CHECK(pvh::estimate_sup(sq, 401) == doctest::Approx(1.0).epsilon(1e-9));
  // x^2 slope near the boundary approaches 2.
  CHECK(pvh::estimate_lipschitz(sq, 401) == doctest::Approx(2.0).epsilon(0.01));
}
