#include "fucikhom/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fucikhom {

namespace {
// y reduced to [0,1)
double frac(double y) {
  double f = y - std::floor(y);
  if (f >= 1.0) f = 0.0;  // guard against rounding at integers
  return f;
}
}  // namespace

PeriodicWeight PeriodicWeight::constant(double value) {
  if (!(value > 0.0))
    throw std::invalid_argument("PeriodicWeight::constant: value must be > 0");
  PeriodicWeight w;
  w.kind_ = WeightKind::Constant;
  w.values_ = {value};
  w.theta_minus_ = w.theta_plus_ = w.mean_ = value;
  w.sup_dev_ = 0.0;
  return w;
}

PeriodicWeight PeriodicWeight::piecewise(std::vector<double> breaks,
                                         std::vector<double> values) {
  if (values.size() != breaks.size() + 1)
    throw std::invalid_argument(
        "PeriodicWeight::piecewise: need one more value than breakpoints");
  if (!std::is_sorted(breaks.begin(), breaks.end()))
    throw std::invalid_argument(
        "PeriodicWeight::piecewise: breakpoints must be ascending");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (breaks[i] == breaks[i - 1])
      throw std::invalid_argument(
          "PeriodicWeight::piecewise: duplicate breakpoint");
  for (double t : breaks)
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument(
          "PeriodicWeight::piecewise: breakpoints must lie in (0,1)");
  for (double v : values)
    if (!(v > 0.0))
      throw std::invalid_argument(
          "PeriodicWeight::piecewise: values must be > 0");

  PeriodicWeight w;
  w.kind_ = WeightKind::PiecewiseConstant;
  w.breaks_ = std::move(breaks);
  w.values_ = std::move(values);
  w.theta_minus_ = *std::min_element(w.values_.begin(), w.values_.end());
  w.theta_plus_ = *std::max_element(w.values_.begin(), w.values_.end());

  // exact cell mean: sum of value * piece length
  double mean = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < w.breaks_.size(); ++i) {
    mean += w.values_[i] * (w.breaks_[i] - prev);
    prev = w.breaks_[i];
  }
  mean += w.values_.back() * (1.0 - prev);
  w.mean_ = mean;

  double dev = 0.0;
  for (double v : w.values_) dev = std::max(dev, std::abs(v - mean));
  w.sup_dev_ = dev;

  w.cell_jumps_ = w.breaks_;
  if (w.values_.front() != w.values_.back())
    w.cell_jumps_.insert(w.cell_jumps_.begin(), 0.0);
  return w;
}

PeriodicWeight PeriodicWeight::trigonometric(double offset, double amplitude,
                                             int frequency) {
  if (!(amplitude >= 0.0))
    throw std::invalid_argument(
        "PeriodicWeight::trigonometric: amplitude must be >= 0");
  if (!(offset - amplitude > 0.0))
    throw std::invalid_argument(
        "PeriodicWeight::trigonometric: offset - amplitude must be > 0");
  if (frequency < 1)
    throw std::invalid_argument(
        "PeriodicWeight::trigonometric: frequency must be a positive integer");
  PeriodicWeight w;
  w.kind_ = WeightKind::Trigonometric;
  w.offset_ = offset;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  w.theta_minus_ = offset - amplitude;
  w.theta_plus_ = offset + amplitude;
  w.mean_ = offset;        // the sine integrates to zero over a full period
  w.sup_dev_ = amplitude;  // attained at the quarter periods
  return w;
}

PeriodicWeight PeriodicWeight::with_declared_bounds(double theta_minus,
                                                    double theta_plus) const {
  if (!(theta_minus > 0.0 && theta_minus <= theta_minus_))
    throw std::invalid_argument(
        "with_declared_bounds: theta_minus must be positive and not exceed "
        "the tight lower bound");
  if (!(theta_plus >= theta_plus_))
    throw std::invalid_argument(
        "with_declared_bounds: theta_plus must not undercut the tight upper "
        "bound");
  PeriodicWeight w = *this;
  w.theta_minus_ = theta_minus;
  w.theta_plus_ = theta_plus;
  return w;
}

double PeriodicWeight::eval(double y) const {
  switch (kind_) {
    case WeightKind::Constant:
      return values_[0];
    case WeightKind::PiecewiseConstant: {
      double f = frac(y);
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), f);
      return values_[static_cast<std::size_t>(it - breaks_.begin())];
    }
    case WeightKind::Trigonometric:
      return offset_ +
             amplitude_ * std::sin(2.0 * std::numbers::pi * frequency_ * y);
  }
  return 0.0;  // unreachable
}

double PeriodicWeight::eval_scaled(double eps, double x) const {
  if (!(eps > 0.0))
    throw std::invalid_argument("eval_scaled: eps must be > 0");
  return eval(x / eps);
}

bool PeriodicWeight::is_constant() const {
  if (kind_ == WeightKind::Constant) return true;
  return sup_dev_ == 0.0;
}

void PeriodicWeight::scaled_jumps(double eps, double x0, double x1,
                                  std::vector<double>* out) const {
  if (cell_jumps_.empty()) return;
  if (!(eps > 0.0))
    throw std::invalid_argument("scaled_jumps: eps must be > 0");
  double j0 = std::floor(x0 / eps) - 1.0;
  double j1 = std::ceil(x1 / eps) + 1.0;
  for (double j = j0; j <= j1; j += 1.0) {
    for (double t : cell_jumps_) {
      double x = eps * (j + t);
      if (x > x0 && x < x1) out->push_back(x);
    }
  }
}

std::string PeriodicWeight::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case WeightKind::Constant:
      os << "constant(" << values_[0] << ")";
      break;
    case WeightKind::PiecewiseConstant: {
      os << "piecewise(breaks=[";
      for (std::size_t i = 0; i < breaks_.size(); ++i)
        os << (i ? "," : "") << breaks_[i];
      os << "], values=[";
      for (std::size_t i = 0; i < values_.size(); ++i)
        os << (i ? "," : "") << values_[i];
      os << "])";
      break;
    }
    case WeightKind::Trigonometric:
      os << "trig(offset=" << offset_ << ", amplitude=" << amplitude_
         << ", frequency=" << frequency_ << ")";
      break;
  }
  return os.str();
}

}  // namespace fucikhom
