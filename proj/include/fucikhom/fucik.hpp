#pragma once

#include <optional>
#include <vector>

#include "fucikhom/plap.hpp"
#include "fucikhom/weights.hpp"

namespace fucikhom {

enum class Sign { Plus, Minus };

/// Ordered breakpoints a = t_0 < ... < t_{k+1} = b; interval i (1-based)
/// carries sign sign_start * (-1)^{i-1}.
struct Partition {
  std::vector<double> breakpoints;
  Sign sign_start = Sign::Plus;

  int subintervals() const { return static_cast<int>(breakpoints.size()) - 1; }
  bool interval_is_positive(int i) const {  // i is 1-based
    const bool odd = (i % 2) == 1;
    return (sign_start == Sign::Plus) ? odd : !odd;
  }
};

/// One point on a Fucik eigencurve C_k^{sign}: the minimax value c at slope
/// s, with alpha = c/s, beta = c, and the optimal partition realizing it.
struct CurvePoint {
  int k = 0;
  Sign sign = Sign::Plus;
  double s = 1.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Partition partition;
  // The partition characterization is established for p > 2; smaller p is
  // still computed but flagged.
  bool outside_stated_validity = false;
};

/// gamma(s) = 1 for s >= 1, 1/s for s < 1.
double gamma_factor(double s);

/// Minimal ell > 0 with factor * lambda_1(w_eps, (start, start+ell)) <= target,
/// located as the first zero of the shooting solution at level target/factor.
/// Throws ExceedsDomain when start + ell > domain_end.
double min_length(const PeriodicWeight& w, std::optional<double> eps,
                  double factor, double start, double target,
                  double domain_end, double p);

/// Minimax value c_{k+1}^{sign}(s) over partitions of I into k+1 alternating
/// subintervals: positive subintervals carry weight m with factor s, negative
/// subintervals weight n with factor 1.  Level-set bisection with a greedy
/// earliest-finish feasibility sweep; tol is the relative bisection width.
CurvePoint c_value(int k, Sign sign, double s, const PeriodicWeight& m,
                   const PeriodicWeight& n, std::optional<double> eps,
                   Interval I, double p, double tol = 1e-9);

/// Exact equalization solution for constant weights m0, n0:
/// c = (pi_p/|I|)^p (n_+ (s/m0)^{1/p} + n_- (1/n0)^{1/p})^p.
CurvePoint closed_form_constant(int k, Sign sign, double s, double m0,
                                double n0, Interval I, double p);

/// Maps c_value across an ascending s-grid and enforces the curve
/// monotonicity (alpha decreasing, beta increasing).
std::vector<CurvePoint> trace_curve(int k, Sign sign,
                                    const std::vector<double>& s_list,
                                    const PeriodicWeight& m,
                                    const PeriodicWeight& n,
                                    std::optional<double> eps, Interval I,
                                    double p, double tol = 1e-9);

}  // namespace fucikhom
