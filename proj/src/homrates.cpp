#include "fucikhom/homrates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fucikhom/errors.hpp"
#include "fucikhom/plap.hpp"

namespace fucikhom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double cr_formula(double sup_dev, double theta_plus, double theta_minus,
                  double p, int N) {
  return p * std::sqrt(static_cast<double>(N)) / 2.0 * sup_dev * theta_plus *
         std::pow(theta_minus, -1.0 / p - 2.0);
}

void check_eps_list(const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw std::invalid_argument("empty eps list");
  for (double e : eps_list)
    if (!(e > 0.0)) throw std::invalid_argument("eps values must be > 0");
}

std::string sign_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

// Evaluates f over the eps values, possibly with several worker threads;
// results come back in input order and the first exception is rethrown.
template <class T, class F>
std::vector<T> map_over_eps(const std::vector<double>& eps, int jobs,
                            const F& f) {
  const int n = static_cast<int>(eps.size());
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) out[i] = f(eps[i]);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        out[i] = f(eps[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

double constant_Cr(const PeriodicWeight& w, double p, int N) {
  if (N < 1) throw std::invalid_argument("constant_Cr: requires N >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("constant_Cr: requires p > 1");
  return cr_formula(w.sup_deviation(), w.theta_plus(), w.theta_minus(), p, N);
}

double constant_C_1d(const PeriodicWeight& m, const PeriodicWeight& n,
                     double p, Interval I) {
  const double th_minus = std::min(m.theta_minus(), n.theta_minus());
  const double th_plus = std::max(m.theta_plus(), n.theta_plus());
  const double cm = cr_formula(m.sup_deviation(), th_plus, th_minus, p, 1);
  const double cn = cr_formula(n.sup_deviation(), th_plus, th_minus, p, 1);
  return std::pow(th_plus / th_minus, 1.0 + 1.0 / p) *
         std::pow(pi_p(p) / I.length(), 1.0 + p) * std::max(cm, cn);
}

double constant_C_Nd(const PeriodicWeight& m, const PeriodicWeight& n,
                     double p, int N, double mu2) {
  if (!(mu2 > 0.0)) throw std::invalid_argument("constant_C_Nd: mu2 must be > 0");
  const double th_minus = std::min(m.theta_minus(), n.theta_minus());
  const double th_plus = std::max(m.theta_plus(), n.theta_plus());
  const double cm = cr_formula(m.sup_deviation(), th_plus, th_minus, p, N);
  const double cn = cr_formula(n.sup_deviation(), th_plus, th_minus, p, N);
  return std::pow(th_plus / th_minus, 1.0 + 1.0 / p) *
         std::pow(mu2, 1.0 + 1.0 / p) * std::max(cm, cn);
}

double fit_order(const std::vector<RateRecord>& records, double floor,
                 int* usable) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const RateRecord& r : records) {
    if (!(r.measured_gap > floor)) continue;
    const double x = std::log(r.eps), y = std::log(r.measured_gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (usable) *usable = n;
  if (n < 3) return kNaN;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepReport sweep_eigen(const PeriodicWeight& w, Interval I, double p,
                        const std::vector<double>& eps_list, double tol,
                        int jobs) {
  check_eps_list(eps_list);

  SweepReport rep;
  rep.quantity = "lambda1";
  rep.weight_m = w.describe();
  rep.p = p;
  rep.a = I.a;
  rep.b = I.b;
  rep.solver_tol = tol;

  const double mu1 = mu_k(I, 1, p);
  const double lambda_bar = mu1 / w.mean();  // homogenized value, exact
  const double Cr = constant_Cr(w, p, 1);
  rep.rate_constant = Cr;
  const double bound_scale = Cr * std::pow(mu1, 1.0 + 1.0 / p);
  const bool degenerate = w.is_constant();

  std::vector<double> eps = eps_list;
  std::sort(eps.rbegin(), eps.rend());
  const std::vector<EigenEstimate> estimates = map_over_eps<EigenEstimate>(
      eps, jobs, [&](double e) { return lambda1_shoot(w, e, I, p, tol); });
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = eps[i];
    RateRecord rec;
    rec.eps = e;
    rec.measured_gap = std::abs(estimates[i].lambda - lambda_bar);
    rec.bound = bound_scale * e;
    rec.degenerate = degenerate;
    rec.ratio = rec.bound > 0.0 ? rec.measured_gap / rec.bound : 0.0;
    if (rec.ratio > 1.0) {
      std::ostringstream os;
      os << "sweep_eigen: gap " << rec.measured_gap << " exceeds bound "
         << rec.bound << " at eps=" << e;
      throw BoundViolation(os.str());
    }
    rep.records.push_back(rec);
  }
  rep.fitted_order = fit_order(rep.records, 10.0 * tol * lambda_bar,
                               &rep.usable_records);
  return rep;
}

FucikSweepReport sweep_fucik(int k, Sign sign, double s,
                             const PeriodicWeight& m, const PeriodicWeight& n,
                             Interval I, double p,
                             const std::vector<double>& eps_list, double tol,
                             int jobs) {
  if (k < 1) throw std::invalid_argument(
      "sweep_fucik: requires k >= 1 (k = 0 is covered by sweep_eigen)");
  check_eps_list(eps_list);

  FucikSweepReport out;
  for (SweepReport* rep : {&out.alpha, &out.beta}) {
    rep->weight_m = m.describe();
    rep->weight_n = n.describe();
    rep->p = p;
    rep->k = k;
    rep->sign = sign_name(sign);
    rep->s = s;
    rep->a = I.a;
    rep->b = I.b;
    rep->solver_tol = tol;
  }
  out.alpha.quantity = "alpha";
  out.beta.quantity = "beta";

  // homogenized limit: both weights collapse to their constant cell means
  const CurvePoint limit =
      closed_form_constant(k, sign, s, m.mean(), n.mean(), I, p);

  const double C = constant_C_1d(m, n, p, I);
  out.alpha.rate_constant = C;
  out.beta.rate_constant = C;
  const double s_case =
      s >= 1.0 ? std::pow(s, 1.0 / p) : std::pow(s, -1.0 - 1.0 / p);
  const double conservative = std::pow(k + 1.0, p + 1.0);
  const double stated = std::pow(static_cast<double>(k), p + 1.0);
  const bool degenerate = m.is_constant() && n.is_constant();

  std::vector<double> eps = eps_list;
  std::sort(eps.rbegin(), eps.rend());
  const std::vector<CurvePoint> points = map_over_eps<CurvePoint>(
      eps, jobs,
      [&](double e) { return c_value(k, sign, s, m, n, e, I, p, tol); });
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = eps[i];
    const CurvePoint& pt = points[i];
    const double gap_alpha = std::abs(pt.c - limit.c) / s;
    const double gap_beta = s * gap_alpha;  // beta-gap is exactly s*alpha-gap

    RateRecord ra;
    ra.eps = e;
    ra.measured_gap = gap_alpha;
    ra.bound = C * e * conservative * s_case;
    ra.degenerate = degenerate;
    ra.ratio = ra.bound > 0.0 ? ra.measured_gap / ra.bound : 0.0;

    RateRecord rb;
    rb.eps = e;
    rb.measured_gap = gap_beta;
    rb.bound = s * ra.bound;
    rb.degenerate = degenerate;
    rb.ratio = rb.bound > 0.0 ? rb.measured_gap / rb.bound : 0.0;

    if (ra.ratio > 1.0 || rb.ratio > 1.0) {
      std::ostringstream os;
      os << "sweep_fucik: gap exceeds the (k+1)^{p+1} bound at eps=" << e
         << " (alpha gap " << ra.measured_gap << " vs " << ra.bound
         << ", beta gap " << rb.measured_gap << " vs " << rb.bound << ")";
      throw BoundViolation(os.str());
    }
    const double stated_a = C * e * stated * s_case;
    out.stated_bound_alpha.push_back(stated_a);
    out.stated_bound_beta.push_back(s * stated_a);
    if (!degenerate &&
        (gap_alpha > stated_a || gap_beta > s * stated_a))
      out.stated_k_bound_held = false;

    out.alpha.records.push_back(ra);
    out.beta.records.push_back(rb);
  }
  const double scale = limit.c / s;
  out.alpha.fitted_order = fit_order(out.alpha.records, 10.0 * tol * scale,
                                     &out.alpha.usable_records);
  out.beta.fitted_order = fit_order(out.beta.records, 10.0 * tol * limit.c,
                                    &out.beta.usable_records);
  return out;
}

}  // namespace fucikhom
