#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fucikhom/errors.hpp"

namespace fucikhom {

/// Open interval (a, b) with positive length.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
  }
  double length() const { return b - a; }
};

enum class WeightKind { PiecewiseConstant, Trigonometric, Constant };

/// A 1-periodic weight on the unit cell, bounded between theta_minus and
/// theta_plus, with exact cell mean and sup deviation for the supported
/// families.  Values are immutable after construction.
class PeriodicWeight {
 public:
  static PeriodicWeight constant(double value);

  /// breaks are the interior breakpoints in (0,1); values has one more
  /// entry than breaks, piece i living on [break_{i-1}, break_i).
  static PeriodicWeight piecewise(std::vector<double> breaks,
                                  std::vector<double> values);

  /// offset + amplitude * sin(2*pi*frequency*y); requires offset > amplitude.
  static PeriodicWeight trigonometric(double offset, double amplitude,
                                      int frequency);

  /// Same weight with looser declared bounds (the paper's constants use
  /// declared theta, not the tight range).
  PeriodicWeight with_declared_bounds(double theta_minus,
                                      double theta_plus) const;

  double eval(double y) const;
  double eval_scaled(double eps, double x) const;

  double mean() const { return mean_; }
  double sup_deviation() const { return sup_dev_; }
  double theta_minus() const { return theta_minus_; }
  double theta_plus() const { return theta_plus_; }
  WeightKind kind() const { return kind_; }
  bool is_constant() const;

  /// Jump locations inside the unit cell [0,1), including 0 when the cell
  /// wraps discontinuously.  Empty for smooth/constant weights.
  const std::vector<double>& cell_jumps() const { return cell_jumps_; }

  /// Collects every jump of x -> eval_scaled(eps, x) in (x0, x1).
  void scaled_jumps(double eps, double x0, double x1,
                    std::vector<double>* out) const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  double offset() const { return offset_; }
  double amplitude() const { return amplitude_; }
  int frequency() const { return frequency_; }

  std::string describe() const;

 private:
  PeriodicWeight() = default;

  WeightKind kind_ = WeightKind::Constant;
  std::vector<double> breaks_;   // piecewise only
  std::vector<double> values_;   // piecewise only
  double offset_ = 0.0;          // trigonometric only
  double amplitude_ = 0.0;       // trigonometric only
  int frequency_ = 0;            // trigonometric only
  double theta_minus_ = 0.0;
  double theta_plus_ = 0.0;
  double mean_ = 0.0;
  double sup_dev_ = 0.0;
  std::vector<double> cell_jumps_;
};

}  // namespace fucikhom
