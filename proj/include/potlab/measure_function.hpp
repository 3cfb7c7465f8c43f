#pragma once

#include <string>

namespace potlab {

/// Parametric gauge h(r): continuous, strictly increasing, h(0) = 0.
///
/// The log-corrected kinds switch to h(r) = r above r = 1/e so they stay
/// increasing on all of [0, inf). LogPower(1) and LogPower(2) are the
/// critical gauges usually written phi and psi.
class MeasureFunction {
 public:
  enum class Kind { Power, Phi, Psi, LogPower };

  static MeasureFunction power(double s);
  static MeasureFunction phi();
  static MeasureFunction psi();
  static MeasureFunction log_power(double beta);

  double operator()(double r) const;
  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  /// sup of h(2r)/h(r) over a log grid in [r_lo, r_hi]; the Cantor
  /// construction requires this to stay below 4.
  double doubling_sup(double r_lo = 1e-12, double r_hi = 0.25,
                      int samples = 240) const;
  /// First grid radius with h(2r)/h(r) >= 4, or -1 when none.
  double doubling_violation_radius(double r_lo = 1e-12, double r_hi = 0.25,
                                   int samples = 240) const;

 private:
  MeasureFunction(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_ = Kind::Power;
  double param_ = 1.0;
};

}  // namespace potlab
