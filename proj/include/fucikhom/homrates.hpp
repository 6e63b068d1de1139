#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fucikhom/fucik.hpp"
#include "fucikhom/weights.hpp"

namespace fucikhom {

/// Per-weight rate constant C_r = p (sqrt(N)/2) ||r - rbar||_inf
/// theta_+ theta_-^{-1/p-2}, with the weight's declared bounds.
double constant_Cr(const PeriodicWeight& w, double p, int N);

/// Curve constant for the interval case:
/// (theta_+/theta_-)^{1+1/p} (pi_p/(b-a))^{1+p} max{C_m, C_n},
/// with theta taken jointly over both weights.
double constant_C_1d(const PeriodicWeight& m, const PeriodicWeight& n,
                     double p, Interval I);

/// Same constant with mu_2(Omega)^{1+1/p} in place of the interval factor;
/// mu2 is user-supplied (no higher-dimensional eigensolve here).
double constant_C_Nd(const PeriodicWeight& m, const PeriodicWeight& n,
                     double p, int N, double mu2);

struct RateRecord {
  double eps = 0.0;
  double measured_gap = 0.0;
  double bound = 0.0;
  double ratio = 0.0;   // measured_gap / bound, 0 when bound == 0
  bool degenerate = false;  // constant weight: gap and bound both vanish
};

struct SweepReport {
  std::vector<RateRecord> records;  // sorted by descending eps
  double fitted_order = 0.0;        // NaN when fewer than 3 usable records
  int usable_records = 0;           // records above the noise floor

  // metadata
  std::string quantity;  // "lambda1" | "alpha" | "beta"
  std::string weight_m;
  std::string weight_n;
  double p = 2.0;
  int k = 0;
  std::string sign;
  double s = 1.0;
  double a = 0.0;
  double b = 1.0;
  double solver_tol = 0.0;
  double rate_constant = 0.0;
};

/// Eigenvalue sweep: per eps, gap = |lambda_1(r_eps) - mu_1(I)/rbar| against
/// the bound C_r mu_1(I)^{1+1/p} eps.  Throws BoundViolation on ratio > 1.
SweepReport sweep_eigen(const PeriodicWeight& w, Interval I, double p,
                        const std::vector<double>& eps_list, double tol = 1e-8,
                        int jobs = 1);

struct FucikSweepReport {
  SweepReport alpha;
  SweepReport beta;
  // Bounds in alpha/beta use the proof-supported (k+1)^{p+1} factor; the
  // theorem's stated k^{p+1} variant is evaluated alongside.
  std::vector<double> stated_bound_alpha;
  std::vector<double> stated_bound_beta;
  bool stated_k_bound_held = true;
};

/// Curve sweep at fixed (k, sign, s): gaps |alpha_eps - alpha_0| and
/// |beta_eps - beta_0| against the four-case table of bounds, beta-gap
/// being exactly s times the alpha-gap.  Throws BoundViolation only for the
/// conservative (k+1)^{p+1} variant.
FucikSweepReport sweep_fucik(int k, Sign sign, double s,
                             const PeriodicWeight& m, const PeriodicWeight& n,
                             Interval I, double p,
                             const std::vector<double>& eps_list,
                             double tol = 1e-9, int jobs = 1);

/// Least-squares slope of log(gap) against log(eps) over the records with
/// gap above `floor`; NaN when fewer than 3 qualify.
double fit_order(const std::vector<RateRecord>& records, double floor,
                 int* usable = nullptr);

}  // namespace fucikhom
