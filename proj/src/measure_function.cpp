#include "potlab/measure_function.hpp"

#include <cmath>

#include "potlab/error.hpp"
#include "potlab/io.hpp"

namespace potlab {

MeasureFunction MeasureFunction::power(double s) {
  if (!(s > 0)) fail(ErrorCode::InvalidArgument, "power gauge needs s > 0");
  return MeasureFunction(Kind::Power, s);
}

MeasureFunction MeasureFunction::phi() {
  return MeasureFunction(Kind::Phi, 1.0);
}

MeasureFunction MeasureFunction::psi() {
  return MeasureFunction(Kind::Psi, 2.0);
}

MeasureFunction MeasureFunction::log_power(double beta) {
  if (!(beta >= 0))
    fail(ErrorCode::InvalidArgument, "log-power gauge needs beta >= 0");
  return MeasureFunction(Kind::LogPower, beta);
}

double MeasureFunction::operator()(double r) const {
  if (r <= 0) return 0.0;
  if (kind_ == Kind::Power) return std::pow(r, param_);
  // log-corrected gauges: r / log^beta(1/r) below 1/e, r above
  static const double cutoff = std::exp(-1.0);
  if (r >= cutoff) return r;
  const double l = std::log(1.0 / r);
  return r / std::pow(l, param_);
}

std::string MeasureFunction::name() const {
  switch (kind_) {
    case Kind::Power: return "Power(" + format_double(param_) + ")";
    case Kind::Phi: return "Phi";
    case Kind::Psi: return "Psi";
    case Kind::LogPower: return "LogPower(" + format_double(param_) + ")";
  }
  return "?";
}

double MeasureFunction::doubling_sup(double r_lo, double r_hi,
                                     int samples) const {
  double sup = 0.0;
  const double step = std::log(r_hi / r_lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::exp(step * i);
    const double q = (*this)(2 * r) / (*this)(r);
    if (q > sup) sup = q;
  }
  return sup;
}

double MeasureFunction::doubling_violation_radius(double r_lo, double r_hi,
                                                  int samples) const {
  const double step = std::log(r_hi / r_lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::exp(step * i);
    if ((*this)(2 * r) / (*this)(r) >= 4.0) return r;
  }
  return -1.0;
}

}  // namespace potlab
