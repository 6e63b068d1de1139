#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fucikhom/errors.hpp"
#include "fucikhom/homrates.hpp"
#include "fucikhom/report_io.hpp"

using namespace fucikhom;

namespace {
const Interval I01(0.0, 1.0);
const PeriodicWeight kStep = PeriodicWeight::piecewise({0.5}, {1.0, 3.0});
}  // namespace

TEST_CASE("rate constants in closed form") {
  // p sqrt(N)/2 * sup_dev * theta_+ * theta_-^{-1/p-2}
  CHECK(constant_Cr(kStep, 2.0, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(constant_Cr(kStep, 2.0, 4) == doctest::Approx(6.0).epsilon(1e-12));
  const double c3 = 3.0 * 0.5 * 1.0 * 3.0 * std::pow(1.0, -1.0 / 3.0 - 2.0);
  CHECK(constant_Cr(kStep, 3.0, 1) == doctest::Approx(c3).epsilon(1e-12));

  const double want_1d =
      std::pow(3.0, 1.5) * std::pow(M_PI, 3.0) * 3.0;
  CHECK(constant_C_1d(kStep, kStep, 2.0, I01) ==
        doctest::Approx(want_1d).epsilon(1e-12));

  const double mu2 = 17.0;
  const double want_nd = std::pow(3.0, 1.5) * std::pow(mu2, 1.5) * 3.0;
  CHECK(constant_C_Nd(kStep, kStep, 2.0, 1, mu2) ==
        doctest::Approx(want_nd).epsilon(1e-12));
}

TEST_CASE("fit_order recovers a known slope") {
  std::vector<RateRecord> recs;
  for (double e : {0.5, 0.25, 0.125, 0.0625}) {
    RateRecord r;
    r.eps = e;
    r.measured_gap = 3.0 * e * e;  // slope 2
    recs.push_back(r);
  }
  int usable = 0;
  CHECK(fit_order(recs, 1e-12, &usable) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(usable == 4);
  // below the floor everything is noise
  CHECK(std::isnan(fit_order(recs, 1.0, &usable)));
  CHECK(usable == 0);
}

TEST_CASE("eigenvalue sweep stays within the first-order bound") {
  const std::vector<double> eps{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32};
  const SweepReport rep = sweep_eigen(kStep, I01, 2.0, eps);
  REQUIRE(rep.records.size() == eps.size());
  for (const RateRecord& r : rep.records) {
    CHECK(r.ratio <= 1.0);
    CHECK_FALSE(r.degenerate);
    CHECK(r.bound == doctest::Approx(3.0 * std::pow(M_PI * M_PI, 1.5) * r.eps));
  }
  CHECK(rep.fitted_order > 0.9);
  CHECK(rep.usable_records >= 3);
}

TEST_CASE("degenerate sweep: constant weight has zero gap") {
  const SweepReport rep = sweep_eigen(PeriodicWeight::constant(2.0), I01, 2.0,
                                      {0.5, 0.25, 0.125});
  for (const RateRecord& r : rep.records) {
    CHECK(r.degenerate);
    CHECK(r.measured_gap < 1e-6);
  }
  CHECK(std::isnan(rep.fitted_order));  // nothing above the noise floor
}

TEST_CASE("curve sweep: beta gap is exactly s times the alpha gap") {
  const std::vector<double> eps{1.0 / 4, 1.0 / 8, 1.0 / 16};
  const double s = 2.0;
  const FucikSweepReport rep =
      sweep_fucik(1, Sign::Plus, s, kStep, kStep, I01, 2.0, eps, 1e-9);
  REQUIRE(rep.alpha.records.size() == eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const RateRecord& a = rep.alpha.records[i];
    const RateRecord& b = rep.beta.records[i];
    CHECK(b.measured_gap == doctest::Approx(s * a.measured_gap).epsilon(1e-14));
    CHECK(b.bound == doctest::Approx(s * a.bound).epsilon(1e-14));
    CHECK(a.ratio <= 1.0);
    CHECK(b.ratio <= 1.0);
  }
  CHECK(rep.stated_bound_alpha.size() == eps.size());
  // the conservative bound carries (k+1)^{p+1}, the stated one k^{p+1}
  CHECK(rep.alpha.records[0].bound ==
        doctest::Approx(rep.stated_bound_alpha[0] * std::pow(2.0, 3.0)));
}

TEST_CASE("parallel sweep matches serial bit for bit") {
  const std::vector<double> eps{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32};
  const SweepReport serial = sweep_eigen(kStep, I01, 2.0, eps, 1e-8, 1);
  const SweepReport parallel = sweep_eigen(kStep, I01, 2.0, eps, 1e-8, 4);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].eps == parallel.records[i].eps);
    CHECK(serial.records[i].measured_gap == parallel.records[i].measured_gap);
  }
}

TEST_CASE("sweep csv round-trip") {
  const SweepReport rep =
      sweep_eigen(kStep, I01, 2.0, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32});
  const std::string csv = sweep_report_csv(rep);
  const SweepReport back = parse_sweep_csv(csv);
  REQUIRE(back.records.size() == rep.records.size());
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    CHECK(back.records[i].eps == rep.records[i].eps);
    CHECK(back.records[i].measured_gap == rep.records[i].measured_gap);
    CHECK(back.records[i].bound == rep.records[i].bound);
    CHECK(back.records[i].ratio == rep.records[i].ratio);
  }
  CHECK(back.fitted_order == rep.fitted_order);

  const FucikSweepReport frep = sweep_fucik(1, Sign::Plus, 2.0, kStep, kStep,
                                            I01, 2.0, {1.0 / 4, 1.0 / 8, 1.0 / 16});
  const FucikSweepReport fback = parse_fucik_sweep_csv(fucik_sweep_csv(frep));
  REQUIRE(fback.alpha.records.size() == frep.alpha.records.size());
  for (std::size_t i = 0; i < frep.alpha.records.size(); ++i) {
    CHECK(fback.alpha.records[i].measured_gap ==
          frep.alpha.records[i].measured_gap);
    CHECK(fback.beta.records[i].measured_gap ==
          frep.beta.records[i].measured_gap);
  }
  CHECK(fback.stated_k_bound_held == frep.stated_k_bound_held);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(sweep_eigen(kStep, I01, 2.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_eigen(kStep, I01, 2.0, {0.25, -0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      sweep_fucik(0, Sign::Plus, 1.0, kStep, kStep, I01, 2.0, {0.25}),
      std::invalid_argument);
}
