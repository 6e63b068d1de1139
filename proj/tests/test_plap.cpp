#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fucikhom/errors.hpp"
#include "fucikhom/plap.hpp"

using namespace fucikhom;

TEST_CASE("generalized half-period") {
  CHECK(pi_p(2.0) == doctest::Approx(M_PI).epsilon(1e-10));
  for (double p : {1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 7.5})
    CHECK(pi_p(p) == doctest::Approx(pi_p_closed_form(p)).epsilon(1e-9));
  // frozen quadrature values, independent of the closed form; note
  // pi_p == pi_{p'} for conjugate exponents
  CHECK(pi_p(1.5) == doctest::Approx(3.0469919990461722).epsilon(1e-9));
  CHECK(pi_p(3.0) == doctest::Approx(3.0469919990461722).epsilon(1e-9));
  CHECK_THROWS_AS(pi_p(1.0), std::invalid_argument);
  CHECK_THROWS_AS(pi_p(0.5), std::invalid_argument);
}

TEST_CASE("constant-weight eigenvalues") {
  const Interval I(0.0, 1.0);
  CHECK(mu_k(I, 1, 2.0) == doctest::Approx(M_PI * M_PI).epsilon(1e-10));
  CHECK(mu_k(I, 3, 2.0) == doctest::Approx(9.0 * M_PI * M_PI).epsilon(1e-10));
  const Interval J(1.0, 3.0);
  CHECK(mu_k(J, 2, 3.0) ==
        doctest::Approx(std::pow(pi_p(3.0), 3.0) * 8.0 / 8.0).epsilon(1e-10));
  CHECK(lambda_k_constant(4.0, I, 1, 2.0) ==
        doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-10));
}

TEST_CASE("shooting recovers constant-weight eigenvalues") {
  const Interval I(0.0, 1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    const PeriodicWeight w = PeriodicWeight::constant(1.0);
    const EigenEstimate est = lambda1_shoot(w, std::nullopt, I, p, 1e-10);
    CHECK(est.lambda == doctest::Approx(mu_k(I, 1, p)).epsilon(1e-8));
  }
  // weight scaling: lambda_1(c * r) = lambda_1(r) / c
  const PeriodicWeight w2 = PeriodicWeight::constant(2.0);
  const EigenEstimate est2 = lambda1_shoot(w2, std::nullopt, I, 2.0, 1e-10);
  CHECK(est2.lambda == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-8));
}

TEST_CASE("domain monotonicity") {
  const PeriodicWeight w = PeriodicWeight::piecewise({0.5}, {1.0, 3.0});
  const double l1 = lambda1_shoot(w, 0.25, Interval(0.0, 1.0), 2.0).lambda;
  const double l2 = lambda1_shoot(w, 0.25, Interval(0.0, 1.5), 2.0).lambda;
  CHECK(l2 < l1);  // larger domain, smaller eigenvalue
}

TEST_CASE("shooting vs Rayleigh quotient oracle") {
  const Interval I(0.0, 1.0);
  const PeriodicWeight w = PeriodicWeight::piecewise({0.5}, {1.0, 3.0});
  for (double eps : {0.25, 0.125}) {
    const double ls = lambda1_shoot(w, eps, I, 2.0, 1e-10).lambda;
    const double lr = lambda1_rayleigh(w, eps, I, 2.0, 4096).lambda;
    CHECK(lr >= ls - 1e-6);  // P1 minimizer approaches from above
    CHECK(std::abs(lr - ls) / ls < 2e-5);
  }
  const PeriodicWeight t = PeriodicWeight::trigonometric(2.0, 0.5, 1);
  const double ls = lambda1_shoot(t, 0.5, I, 3.0, 1e-10).lambda;
  const double lr = lambda1_rayleigh(t, 0.5, I, 3.0, 2048).lambda;
  CHECK(std::abs(lr - ls) / ls < 1e-4);
}

TEST_CASE("higher eigenvalues by shooting") {
  const Interval I(0.0, 1.0);
  const PeriodicWeight one = PeriodicWeight::constant(1.0);
  for (int k : {1, 2, 3}) {
    const EigenEstimate est = lambda_k_shoot(one, std::nullopt, I, k, 2.0, 1e-10);
    CHECK(est.lambda ==
          doctest::Approx(k * k * M_PI * M_PI).epsilon(1e-7));
  }
  const EigenEstimate e3 = lambda_k_shoot(one, std::nullopt, I, 2, 3.0, 1e-10);
  CHECK(e3.lambda == doctest::Approx(mu_k(I, 2, 3.0)).epsilon(1e-7));
}

TEST_CASE("sandwich bracket holds for scaled weights") {
  const Interval I(0.0, 1.0);
  const PeriodicWeight w = PeriodicWeight::piecewise({0.5}, {1.0, 3.0});
  const double mu1 = mu_k(I, 1, 2.0);
  for (double eps : {1.0 / 3, 1.0 / 7, 1.0 / 16}) {
    const double l = lambda1_shoot(w, eps, I, 2.0).lambda;
    CHECK(l >= mu1 / w.theta_plus() - 1e-8);
    CHECK(l <= mu1 / w.theta_minus() + 1e-8);
  }
  CHECK(sandwich_checks_performed() > 0);
  CHECK(sandwich_checks_failed() == 0);
}

TEST_CASE("homogenized limit as eps shrinks") {
  const Interval I(0.0, 1.0);
  const PeriodicWeight w = PeriodicWeight::piecewise({0.5}, {1.0, 3.0});
  const double target = M_PI * M_PI / w.mean();
  double prev = std::abs(lambda1_shoot(w, 1.0 / 8, I, 2.0).lambda - target);
  for (double eps : {1.0 / 16, 1.0 / 32}) {
    const double gap = std::abs(lambda1_shoot(w, eps, I, 2.0).lambda - target);
    CHECK(gap < prev);
    prev = gap;
  }
}
