#include "fucikhom/fucik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fucikhom/errors.hpp"

namespace fucikhom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSMin = 1e-3;
constexpr double kSMax = 1e3;

void check_s(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("slope s must be > 0");
  if (s < kSMin || s > kSMax)
    throw std::invalid_argument("slope s outside supported range [1e-3, 1e3]");
}

// First zero of the shooting solution at eigenlevel lambda from `start`,
// i.e. the length of the interval whose first eigenvalue equals lambda.
// Returns +inf when the zero falls beyond `cap`.
double zero_length(const ScaledWeight& w, double lambda, double p,
                   double start, double cap, double pi_p_val, double base_h) {
  // sandwich bracket on the length implied by the theta bounds; the margin
  // leaves room for the RK4 bias in the zero location (~1e-9 relative)
  const double ell_hi =
      pi_p_val * std::pow(lambda * w.theta_minus(), -1.0 / p) * (1.0 + 1e-6);
  const double xmax = std::min(start + ell_hi, cap);
  const double z = nth_zero(w, lambda, p, start, xmax, base_h, 1);
  return std::isfinite(z) ? z - start : kInf;
}

struct GreedyResult {
  double end = kInf;  // t_{k+1}
  std::vector<double> breakpoints;
};

// Earliest-finish sweep: lay down k+1 minimal subintervals meeting level c,
// alternating signs from sign_start.  Positive subintervals carry weight m
// with factor s, negative subintervals weight n with factor 1.
GreedyResult greedy_sweep(int k, Sign sign, double s, const ScaledWeight& m,
                          const ScaledWeight& n, Interval I, double p,
                          double pi_p_val, double c) {
  GreedyResult res;
  res.breakpoints.push_back(I.a);
  const double base_h = I.length() / 4096.0;
  const double cap = I.b + 1e-6 * I.length();
  double t = I.a;
  Partition proto{{}, sign};
  proto.breakpoints.resize(k + 2);
  for (int i = 1; i <= k + 1; ++i) {
    const bool positive = proto.interval_is_positive(i);
    const ScaledWeight& w = positive ? m : n;
    const double lambda = positive ? c / s : c;
    const double ell = zero_length(w, lambda, p, t, cap, pi_p_val, base_h);
    if (!std::isfinite(ell)) {
      res.end = kInf;
      return res;
    }
    t += ell;
    res.breakpoints.push_back(t);
    if (t > cap) {
      res.end = t;
      return res;
    }
  }
  res.end = t;
  return res;
}

}  // namespace

double gamma_factor(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("gamma_factor: requires s > 0");
  return s >= 1.0 ? 1.0 : 1.0 / s;
}

double min_length(const PeriodicWeight& w, std::optional<double> eps,
                  double factor, double start, double target,
                  double domain_end, double p) {
  if (!(target > 0.0)) throw std::invalid_argument("min_length: target must be > 0");
  if (!(factor > 0.0)) throw std::invalid_argument("min_length: factor must be > 0");
  if (eps && !(*eps > 0.0))
    throw std::invalid_argument("min_length: eps must be > 0");
  const ScaledWeight sw{&w, eps};
  const double pipv = pi_p(p);
  const double lambda = target / factor;
  const double base_h = (domain_end - start) / 4096.0;
  const double cap = start + pipv * std::pow(lambda * sw.theta_minus(), -1.0 / p) *
                                 (1.0 + 1e-6);
  const double ell =
      zero_length(sw, lambda, p, start, cap, pipv, base_h);
  if (!std::isfinite(ell) || start + ell > domain_end)
    throw ExceedsDomain("min_length: minimal subinterval runs past the domain");
  return ell;
}

CurvePoint c_value(int k, Sign sign, double s, const PeriodicWeight& m,
                   const PeriodicWeight& n, std::optional<double> eps,
                   Interval I, double p, double tol) {
  if (k < 0) throw std::invalid_argument("c_value: requires k >= 0");
  if (!(p > 1.0)) throw std::invalid_argument("c_value: requires p > 1");
  if (!(tol > 0.0)) throw std::invalid_argument("c_value: tol must be > 0");
  check_s(s);
  if (eps && !(*eps > 0.0))
    throw std::invalid_argument("c_value: eps must be > 0");

  CurvePoint pt;
  pt.k = k;
  pt.sign = sign;
  pt.s = s;
  pt.outside_stated_validity = (p <= 2.0);
  pt.partition.sign_start = sign;

  if (k == 0) {
    // trivial lines: a single sign-definite interval
    const bool positive = (sign == Sign::Plus);
    const PeriodicWeight& w = positive ? m : n;
    const EigenEstimate est = lambda1_shoot(w, eps, I, p, tol);
    pt.c = positive ? s * est.lambda : est.lambda;
    pt.alpha = pt.c / s;
    pt.beta = pt.c;
    pt.partition.breakpoints = {I.a, I.b};
    return pt;
  }

  const ScaledWeight sm{&m, eps};
  const ScaledWeight sn{&n, eps};
  // theta bounds joint over both weights
  const double th_minus = std::min(sm.theta_minus(), sn.theta_minus());
  const double th_plus = std::max(sm.theta_plus(), sn.theta_plus());
  const double mu = mu_k(I, k + 1, p);
  const double pipv = pi_p(p);

  auto feasible = [&](double c) {
    return greedy_sweep(k, sign, s, sm, sn, I, p, pipv, c).end <= I.b;
  };

  double lo = mu / th_plus * std::min(s, 1.0) * (1.0 - 1e-6);
  double hi = mu / th_minus * std::max(s, 1.0) * (1.0 + 1e-6);
  if (!feasible(hi))
    throw InfeasibleBracket(
        "c_value: upper level from the partition bound is infeasible");
  for (int tries = 0; feasible(lo); ++tries) {
    if (tries >= 8)
      throw BracketFailure("c_value: lower level already feasible");
    lo *= 0.75;
  }
  int iters = 0;
  while (hi - lo > tol * lo) {
    if (++iters > 200)
      throw NonConvergence("c_value: level bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }

  pt.c = hi;  // smallest level verified feasible
  pt.alpha = pt.c / s;
  pt.beta = pt.c;
  GreedyResult g = greedy_sweep(k, sign, s, sm, sn, I, p, pipv, hi);
  g.breakpoints.back() = I.b;  // stretch the last subinterval to the endpoint
  pt.partition.breakpoints = std::move(g.breakpoints);
  return pt;
}

CurvePoint closed_form_constant(int k, Sign sign, double s, double m0,
                                double n0, Interval I, double p) {
  if (k < 0) throw std::invalid_argument("closed_form_constant: requires k >= 0");
  if (!(m0 > 0.0 && n0 > 0.0))
    throw std::invalid_argument("closed_form_constant: weights must be > 0");
  check_s(s);

  CurvePoint pt;
  pt.k = k;
  pt.sign = sign;
  pt.s = s;
  pt.outside_stated_validity = (p <= 2.0);
  pt.partition.sign_start = sign;

  const int total = k + 1;
  const int first_count = (total + 1) / 2;   // subintervals with sign_start
  const int second_count = total / 2;
  const int n_plus = (sign == Sign::Plus) ? first_count : second_count;
  const int n_minus = total - n_plus;

  const double pipv = pi_p(p);
  const double wplus = std::pow(s / m0, 1.0 / p);
  const double wminus = std::pow(1.0 / n0, 1.0 / p);
  pt.c = std::pow(pipv / I.length(), p) *
         std::pow(n_plus * wplus + n_minus * wminus, p);
  pt.alpha = pt.c / s;
  pt.beta = pt.c;

  const double ell_plus = pipv * std::pow(s / (m0 * pt.c), 1.0 / p);
  const double ell_minus = pipv * std::pow(1.0 / (n0 * pt.c), 1.0 / p);
  pt.partition.breakpoints.push_back(I.a);
  double t = I.a;
  for (int i = 1; i <= total; ++i) {
    t += pt.partition.interval_is_positive(i) ? ell_plus : ell_minus;
    pt.partition.breakpoints.push_back(t);
  }
  pt.partition.breakpoints.back() = I.b;
  return pt;
}

std::vector<CurvePoint> trace_curve(int k, Sign sign,
                                    const std::vector<double>& s_list,
                                    const PeriodicWeight& m,
                                    const PeriodicWeight& n,
                                    std::optional<double> eps, Interval I,
                                    double p, double tol) {
  if (s_list.empty())
    throw std::invalid_argument("trace_curve: empty s-grid");
  if (!std::is_sorted(s_list.begin(), s_list.end()))
    throw std::invalid_argument("trace_curve: s-grid must be ascending");

  std::vector<CurvePoint> pts;
  pts.reserve(s_list.size());
  for (double s : s_list)
    pts.push_back(c_value(k, sign, s, m, n, eps, I, p, tol));

  if (k == 0) return pts;  // trivial lines: one coordinate is constant in s

  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double slack_a = 2.0 * tol * pts[i - 1].alpha;
    const double slack_b = 2.0 * tol * pts[i].beta;
    if (!(pts[i].alpha < pts[i - 1].alpha + slack_a))
      throw MonotonicityViolation("trace_curve: alpha not decreasing in s");
    if (!(pts[i].beta > pts[i - 1].beta - slack_b))
      throw MonotonicityViolation("trace_curve: beta not increasing in s");
  }
  return pts;
}

}  // namespace fucikhom
