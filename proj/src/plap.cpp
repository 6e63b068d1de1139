#include "fucikhom/plap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace fucikhom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRegFloor = 1e-14;  // regularization of the odd power maps

std::atomic<std::int64_t> g_sandwich_performed{0};
std::atomic<std::int64_t> g_sandwich_failed{0};

// sign(x) * max(|x|, floor)^e, the odd power with the step-floor
// regularization that keeps the vector field finite at the origin.
double odd_pow(double x, double e) {
  double ax = std::abs(x);
  if (ax < kRegFloor) {
    if (e >= 1.0) return 0.0;
    ax = kRegFloor;
  }
  double r = std::pow(ax, e);
  return x < 0.0 ? -r : r;
}

// ---- adaptive Simpson quadrature ---------------------------------------

template <class F>
double simpson(const F& f, double a, double fa, double m, double fm, double b,
               double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(const F& f, double a, double fa, double m, double fm, double b,
             double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, lm, flm, m, fm);
  double right = simpson(f, m, fm, rm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(f, a, fa, m, fm, b, fb);
  return adapt(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

// ---- shooting integrator ------------------------------------------------

struct State {
  double u;
  double phi;
};

// One RK4 step of u' = |phi|^{p'-2}phi, phi' = -lambda r(x)|u|^{p-2}u.
// The weight is evaluated slightly inside the segment so that a segment
// whose left end sits on a jump sees the right-hand value.
template <class W>
State rk4_step(const W& r, double lambda, double p, double pp, double xa,
               double h, State s) {
  const double d = 1e-9 * h;
  const double ra = r(xa + d), rm = r(xa + 0.5 * h), rb = r(xa + h - d);
  auto fu = [&](double phi) { return odd_pow(phi, pp - 1.0); };
  auto fphi = [&](double rw, double u) {
    return -lambda * rw * odd_pow(u, p - 1.0);
  };
  double k1u = fu(s.phi), k1p = fphi(ra, s.u);
  double k2u = fu(s.phi + 0.5 * h * k1p),
         k2p = fphi(rm, s.u + 0.5 * h * k1u);
  double k3u = fu(s.phi + 0.5 * h * k2p),
         k3p = fphi(rm, s.u + 0.5 * h * k2u);
  double k4u = fu(s.phi + h * k3p), k4p = fphi(rb, s.u + h * k3u);
  return {s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
          s.phi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

struct IntegrateResult {
  double crossing = kInf;  // position of the requested crossing
  int crossings = 0;
  State final_state{0.0, 1.0};
  std::int64_t steps = 0;
};

// Integrates the shooting system from (u,phi)=(0,1) at x0, splitting steps
// at weight jumps, counting sign changes of u.  Stops after the nth crossing
// (nth >= 1) or at xmax when stop_at_crossing is false.
IntegrateResult integrate_shoot(const ScaledWeight& r, double lambda, double p,
                                double x0, double xmax, double base_h, int nth,
                                bool stop_at_crossing) {
  IntegrateResult res;
  const double pp = p / (p - 1.0);
  const double span = xmax - x0;
  if (!(span > 0.0)) return res;
  const int nbase = std::max(1, static_cast<int>(std::ceil(span / base_h)));
  const double h = span / nbase;

  State s{0.0, 1.0};
  std::vector<double> jumps;
  for (int i = 0; i < nbase; ++i) {
    const double xc0 = x0 + i * h;
    const double xc1 = (i + 1 == nbase) ? xmax : x0 + (i + 1) * h;
    jumps.clear();
    r.jumps(xc0, xc1, &jumps);
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    double pa = xc0;
    for (std::size_t j = 0; j <= jumps.size(); ++j) {
      const double pb = (j < jumps.size()) ? jumps[j] : xc1;
      const double hs = pb - pa;
      if (!(hs > 0.0)) {
        pa = pb;
        continue;
      }
      const State sprev = s;
      s = rk4_step(r, lambda, p, pp, pa, hs, s);
      ++res.steps;
      const bool flip =
          (sprev.u > 0.0 && s.u <= 0.0) || (sprev.u < 0.0 && s.u >= 0.0);
      if (flip) {
        // refine the crossing inside this smooth sub-step
        double lo = 0.0, hi = hs;
        const double postol = 1e-13 * span;
        while (hi - lo > postol) {
          const double mid = 0.5 * (lo + hi);
          const State sm = rk4_step(r, lambda, p, pp, pa, mid, sprev);
          const bool crossed = (sprev.u > 0.0) ? (sm.u <= 0.0) : (sm.u >= 0.0);
          (crossed ? hi : lo) = mid;
        }
        ++res.crossings;
        if (res.crossings == nth) {
          res.crossing = pa + 0.5 * (lo + hi);
          if (stop_at_crossing) {
            res.final_state = s;
            return res;
          }
        }
      }
      pa = pb;
    }
  }
  res.final_state = s;
  return res;
}

void sandwich_check(double lambda, double mu, double theta_minus,
                    double theta_plus, double tol) {
  ++g_sandwich_performed;
  const double slack = 4.0 * tol * lambda + 1e-12 * lambda;
  if (lambda < mu / theta_plus - slack || lambda > mu / theta_minus + slack)
    ++g_sandwich_failed;
}

}  // namespace

std::int64_t sandwich_checks_performed() { return g_sandwich_performed; }
std::int64_t sandwich_checks_failed() { return g_sandwich_failed; }

// ---- pi_p and explicit eigenvalues -------------------------------------

double pi_p(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("pi_p: requires p > 1");
  const double pp = p / (p - 1.0);
  // substitution s = 1 - tau^{p'} removes the (1-s^p)^{-1/p} endpoint
  // singularity exactly: the transformed integrand is p'*g(tau)^{-1/p}
  // with g(tau) = (1 - (1-tau^{p'})^p) / tau^{p'}, g(0+) = p.
  auto f = [&](double tau) {
    if (tau <= 0.0) return pp * std::pow(p, -1.0 / p);
    const double tq = std::pow(tau, pp);
    double g;
    if (tq >= 1.0)
      g = 1.0 / tq;
    else
      g = -std::expm1(p * std::log1p(-tq)) / tq;
    return pp * std::pow(g, -1.0 / p);
  };
  const double integral = integrate_adaptive(f, 0.0, 1.0, 1e-13);
  return 2.0 * std::pow(p - 1.0, 1.0 / p) * integral;
}

double pi_p_closed_form(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("pi_p_closed_form: requires p > 1");
  return std::pow(p - 1.0, 1.0 / p) * 2.0 * std::numbers::pi /
         (p * std::sin(std::numbers::pi / p));
}

PExponent::PExponent(double p_) : p(p_) {
  if (!(p > 1.0)) throw std::invalid_argument("PExponent: requires p > 1");
  conjugate = p / (p - 1.0);
  pi_p = fucikhom::pi_p(p);
}

double mu_k(Interval I, int k, double p) {
  if (k < 1) throw std::invalid_argument("mu_k: requires k >= 1");
  return std::pow(pi_p(p) * k / I.length(), p);
}

double lambda_k_constant(double c, Interval I, int k, double p) {
  if (!(c > 0.0)) throw std::invalid_argument("lambda_k_constant: c must be > 0");
  return mu_k(I, k, p) / c;
}

// ---- shooting front ends ------------------------------------------------

double nth_zero(const ScaledWeight& r, double lambda, double p, double x0,
                double xmax, double base_h, int nth, std::int64_t* steps_out) {
  IntegrateResult res = integrate_shoot(r, lambda, p, x0, xmax, base_h, nth,
                                        /*stop_at_crossing=*/true);
  if (steps_out) *steps_out += res.steps;
  return res.crossing;
}

double shoot_value_at(const ScaledWeight& r, double lambda, double p,
                      double x0, double x, double base_h) {
  IntegrateResult res = integrate_shoot(r, lambda, p, x0, x, base_h,
                                        /*nth=*/std::numeric_limits<int>::max(),
                                        /*stop_at_crossing=*/false);
  return res.final_state.u;
}

EigenEstimate lambda_k_shoot(const PeriodicWeight& w, std::optional<double> eps,
                             Interval I, int k, double p, double tol) {
  if (k < 1) throw std::invalid_argument("lambda_k_shoot: requires k >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("lambda_k_shoot: requires p > 1");
  if (!(tol > 0.0)) throw std::invalid_argument("lambda_k_shoot: tol must be > 0");
  if (eps && !(*eps > 0.0))
    throw std::invalid_argument("lambda_k_shoot: eps must be > 0");

  const ScaledWeight sw{&w, eps};
  const double mu = mu_k(I, k, p);
  const double base_h = I.length() / 4096.0;
  const double xmax = I.b + 1e-6 * I.length();
  std::int64_t steps = 0;

  auto zero_by_b = [&](double lambda) {
    return nth_zero(sw, lambda, p, I.a, xmax, base_h, k, &steps) <= I.b;
  };

  double lo = mu / sw.theta_plus() * (1.0 - 1e-6);
  double hi = mu / sw.theta_minus() * (1.0 + 1e-6);
  for (int tries = 0; zero_by_b(lo); ++tries) {
    if (tries >= 8)
      throw BracketFailure("lambda_k_shoot: lower bracket already feasible");
    lo *= 0.75;
  }
  for (int tries = 0; !zero_by_b(hi); ++tries) {
    if (tries >= 8)
      throw BracketFailure("lambda_k_shoot: upper bracket infeasible");
    hi *= 1.5;
  }
  int iters = 0;
  while (hi - lo > tol * lo) {
    if (++iters > 200)
      throw NonConvergence("lambda_k_shoot: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    (zero_by_b(mid) ? hi : lo) = mid;
  }

  EigenEstimate est;
  est.lambda = 0.5 * (lo + hi);
  est.method = EigenMethod::Shooting;
  est.residual = std::abs(shoot_value_at(sw, est.lambda, p, I.a, I.b, base_h));
  est.evaluations = steps;
  // slack covers the bisection width plus the RK4 bias of the fixed-step
  // integrator (about 1e-8 relative at p = 4 with 4096 steps)
  sandwich_check(est.lambda, mu, w.theta_minus(), w.theta_plus(),
                 tol + 2.5e-8);
  return est;
}

EigenEstimate lambda1_shoot(const PeriodicWeight& w, std::optional<double> eps,
                            Interval I, double p, double tol) {
  return lambda_k_shoot(w, eps, I, 1, p, tol);
}

// ---- discrete Rayleigh oracle ------------------------------------------

namespace {

// 4-point Gauss-Legendre on [0,1]
constexpr double kGLx[4] = {0.06943184420297371, 0.33000947820757187,
                            0.66999052179242813, 0.93056815579702629};
constexpr double kGLw[4] = {0.17392742256872693, 0.32607257743127307,
                            0.32607257743127307, 0.17392742256872693};

struct QuadNode {
  double t;   // local coordinate in the cell, in (0,1)
  double wr;  // quadrature weight times r(x)
};

struct Tridiag {
  // Thomas factorization of the constant-coefficient 1D Laplacian stiffness
  std::vector<double> diag, upper;
  void factor(int n, double H) {
    diag.assign(n, 0.0);
    upper.assign(n, -1.0 / H);
    double d = 2.0 / H;
    for (int i = 0; i < n; ++i) {
      diag[i] = d - (i > 0 ? upper[i - 1] * upper[i - 1] / diag[i - 1] : 0.0);
    }
  }
  void solve(const std::vector<double>& b, std::vector<double>* x) const {
    const int n = static_cast<int>(diag.size());
    std::vector<double> y(n);
    y[0] = b[0];
    for (int i = 1; i < n; ++i) y[i] = b[i] - upper[i - 1] / diag[i - 1] * y[i - 1];
    x->assign(n, 0.0);
    (*x)[n - 1] = y[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i)
      (*x)[i] = (y[i] - upper[i] * (*x)[i + 1]) / diag[i];
  }
};

}  // namespace

EigenEstimate lambda1_rayleigh(const PeriodicWeight& w,
                               std::optional<double> eps, Interval I, double p,
                               int grid_n) {
  if (grid_n < 16)
    throw std::invalid_argument("lambda1_rayleigh: grid_n must be >= 16");
  if (!(p > 1.0)) throw std::invalid_argument("lambda1_rayleigh: requires p > 1");
  if (eps && !(*eps > 0.0))
    throw std::invalid_argument("lambda1_rayleigh: eps must be > 0");

  const ScaledWeight sw{&w, eps};
  const int n = grid_n;
  const double H = I.length() / n;
  const int m = n - 1;  // interior nodes

  // per-cell quadrature, split at weight jumps so piecewise weights are
  // integrated exactly against the smooth integrand
  std::vector<std::vector<QuadNode>> cells(n);
  std::vector<double> jumps;
  for (int c = 0; c < n; ++c) {
    const double xa = I.a + c * H, xb = I.a + (c + 1) * H;
    jumps.clear();
    sw.jumps(xa, xb, &jumps);
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    double pa = xa;
    for (std::size_t j = 0; j <= jumps.size(); ++j) {
      const double pb = (j < jumps.size()) ? jumps[j] : xb;
      const double hs = pb - pa;
      if (hs > 0.0) {
        for (int g = 0; g < 4; ++g) {
          const double x = pa + kGLx[g] * hs;
          cells[c].push_back({(x - xa) / H, kGLw[g] * hs * sw(x)});
        }
      }
      pa = pb;
    }
  }

  auto numerator = [&](const std::vector<double>& u) {
    double N = 0.0;
    for (int c = 0; c < n; ++c) {
      const double ul = (c == 0) ? 0.0 : u[c - 1];
      const double ur = (c == n - 1) ? 0.0 : u[c];
      N += H * std::pow(std::abs((ur - ul) / H), p);
    }
    return N;
  };
  auto denominator = [&](const std::vector<double>& u) {
    double D = 0.0;
    for (int c = 0; c < n; ++c) {
      const double ul = (c == 0) ? 0.0 : u[c - 1];
      const double ur = (c == n - 1) ? 0.0 : u[c];
      for (const QuadNode& q : cells[c]) {
        const double ux = ul + (ur - ul) * q.t;
        D += q.wr * std::pow(std::abs(ux), p);
      }
    }
    return D;
  };
  // gradient of N - R*D with respect to the interior nodal values
  auto gradient = [&](const std::vector<double>& u, double R,
                      std::vector<double>* g) {
    g->assign(m, 0.0);
    for (int c = 0; c < n; ++c) {
      const double ul = (c == 0) ? 0.0 : u[c - 1];
      const double ur = (c == n - 1) ? 0.0 : u[c];
      const double flux = odd_pow((ur - ul) / H, p - 1.0);
      if (c > 0) (*g)[c - 1] -= p * flux;
      if (c < n - 1) (*g)[c] += p * flux;
      for (const QuadNode& q : cells[c]) {
        const double ux = ul + (ur - ul) * q.t;
        const double dd = p * q.wr * odd_pow(ux, p - 1.0);
        if (c > 0) (*g)[c - 1] -= R * dd * (1.0 - q.t);
        if (c < n - 1) (*g)[c] -= R * dd * q.t;
      }
    }
  };
  auto normalize = [&](std::vector<double>* u) {
    const double D = denominator(*u);
    const double scale = std::pow(D, -1.0 / p);
    for (double& v : *u) v *= scale;
  };

  std::vector<double> u(m);
  for (int i = 0; i < m; ++i)
    u[i] = std::sin(std::numbers::pi * (i + 1) / n);
  normalize(&u);
  double R = numerator(u);

  Tridiag precond;
  precond.factor(m, H);

  std::vector<double> g(m), z(m), trial(m);
  double tau = 1.0;
  double last_rel = 1.0;
  int calm = 0;
  std::int64_t iters = 0;
  const std::int64_t cap = 50000;
  while (true) {
    if (++iters > cap)
      throw NonConvergence("lambda1_rayleigh: iteration cap reached");
    gradient(u, R, &g);
    precond.solve(g, &z);
    double Rnew = R;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < m; ++i) trial[i] = u[i] - tau * z[i];
      normalize(&trial);
      Rnew = numerator(trial);
      if (Rnew <= R) {
        accepted = true;
        break;
      }
      tau *= 0.5;  // damp on quotient increase
    }
    if (!accepted) break;  // no descent direction left: stationary
    last_rel = (R - Rnew) / R;
    u.swap(trial);
    R = Rnew;
    tau = std::min(tau * 1.3, 4.0);
    calm = (last_rel < 1e-10) ? calm + 1 : 0;
    if (calm >= 3) break;
  }

  EigenEstimate est;
  est.lambda = R;
  est.method = EigenMethod::Rayleigh;
  est.residual = std::abs(last_rel);
  est.evaluations = iters;
  sandwich_check(est.lambda, mu_k(I, 1, p), w.theta_minus(), w.theta_plus(),
                 1e-6);
  return est;
}

}  // namespace fucikhom
