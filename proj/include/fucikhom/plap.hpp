#pragma once

#include <cstdint>
#include <optional>

#include "fucikhom/weights.hpp"

namespace fucikhom {

/// Exponent 1 < p < inf with its conjugate and the generalized half-period.
struct PExponent {
  double p;
  double conjugate;  // p' = p/(p-1)
  double pi_p;

  explicit PExponent(double p_);
};

/// Generalized half-period 2(p-1)^{1/p} \int_0^1 (1-s^p)^{-1/p} ds,
/// computed by adaptive quadrature after removing the endpoint singularity.
/// Absolute accuracy 1e-10 or better.  pi_p(2) == pi.
double pi_p(double p);

/// Closed form (p-1)^{1/p} * 2*pi / (p*sin(pi/p)); quadrature cross-check.
double pi_p_closed_form(double p);

/// k-th Dirichlet eigenvalue of the unweighted p-Laplacian on I:
/// pi_p^p * k^p * |I|^{-p}.
double mu_k(Interval I, int k, double p);

/// k-th eigenvalue for the constant weight c: mu_k(I)/c.
double lambda_k_constant(double c, Interval I, int k, double p);

enum class EigenMethod { Shooting, Rayleigh, ClosedForm };

struct EigenEstimate {
  double lambda = 0.0;
  EigenMethod method = EigenMethod::Shooting;
  double residual = 0.0;     // endpoint miss |u(b)| or quotient stationarity
  std::int64_t evaluations = 0;  // ODE steps or iterations
};

/// Effective weight on the line: x -> w(x/eps), or the constant cell mean
/// when eps is empty (the homogenized limit).
struct ScaledWeight {
  const PeriodicWeight* w;
  std::optional<double> eps;

  double operator()(double x) const {
    return eps ? w->eval_scaled(*eps, x) : w->mean();
  }
  double theta_minus() const { return eps ? w->theta_minus() : w->mean(); }
  double theta_plus() const { return eps ? w->theta_plus() : w->mean(); }
  void jumps(double x0, double x1, std::vector<double>* out) const {
    if (eps) w->scaled_jumps(*eps, x0, x1, out);
  }
};

/// Position of the nth sign change of the shooting solution
/// u' = |phi|^{p'-2} phi, phi' = -lambda r(x) |u|^{p-2} u, u(x0)=0, phi(x0)=1,
/// integrated with fixed-step RK4 split at weight jumps.  Returns +inf when
/// the nth crossing does not occur before xmax.  base_h sets the nominal
/// step; steps_out accumulates RK4 step counts when non-null.
double nth_zero(const ScaledWeight& r, double lambda, double p, double x0,
                double xmax, double base_h, int nth,
                std::int64_t* steps_out = nullptr);

/// Value of u at position x (same shooting system), for residual reporting.
double shoot_value_at(const ScaledWeight& r, double lambda, double p,
                      double x0, double x, double base_h);

/// First eigenvalue of -(|u'|^{p-2}u')' = lambda r_eps |u|^{p-2} u on I with
/// Dirichlet conditions, by bisection on lambda over the sandwich bracket
/// [mu_1(I)/theta_+, mu_1(I)/theta_-].  tol is the relative bisection width.
EigenEstimate lambda1_shoot(const PeriodicWeight& w, std::optional<double> eps,
                            Interval I, double p, double tol = 1e-8);

/// k-th eigenvalue by the same shooting, locating the k-th interior pattern:
/// the solution's k-th zero beyond x=a must land at x=b (so the eigenfunction
/// has k-1 interior zeros).  k >= 1; k == 1 reduces to lambda1_shoot.
EigenEstimate lambda_k_shoot(const PeriodicWeight& w, std::optional<double> eps,
                             Interval I, int k, double p, double tol = 1e-8);

/// Discrete Rayleigh-quotient minimizer over P1 functions on a uniform grid
/// of grid_n cells, the independent variational oracle for lambda1_shoot.
/// Converges to lambda_1 from above as grid_n grows.
EigenEstimate lambda1_rayleigh(const PeriodicWeight& w,
                               std::optional<double> eps, Interval I, double p,
                               int grid_n);

/// Diagnostics: how many eigenvalues were computed process-wide and how many
/// failed the declared-theta sandwich check.
std::int64_t sandwich_checks_performed();
std::int64_t sandwich_checks_failed();

}  // namespace fucikhom
