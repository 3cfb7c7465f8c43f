#pragma once

#include <cstdint>
#include <vector>

#include "potlab/measure.hpp"
#include "potlab/measure_function.hpp"

namespace potlab {

/// Four-corner planar Cantor construction. Beta(beta) uses the dilation
/// sequence lambda_k = (1/4)(1 + beta/k) clamped below lambda_max = 9/20 so
/// the squares stay disjoint for every beta >= 0 (the clamp only touches
/// the first few generations and preserves sigma_n ~ n^beta 4^{-n}).
/// Gauge(h) derives sigma_n from 4^{-n} = h(sigma_n) by bisection.
struct CantorSpec {
  enum class Family { Beta, Gauge };
  Family family = Family::Beta;
  double beta = 0.0;
  MeasureFunction gauge = MeasureFunction::power(1.0);
  int generation = 0;

  static CantorSpec beta_family(double beta, int generation);
  static CantorSpec gauge_family(const MeasureFunction& gauge, int generation);
};

inline constexpr double kCantorLambdaMax = 0.45;
inline constexpr std::size_t kAtomBudget = std::size_t{1} << 24;

/// sigma[k] = side of generation-k squares (sigma[0] = 1), lambda[k] =
/// sigma[k]/sigma[k-1] (lambda[0] unused). Errors with GaugeViolation when
/// the gauge fails the doubling test or yields lambda_k >= 1/2.
struct CantorScales {
  std::vector<double> sigma;
  std::vector<double> lambda;
};

CantorScales cantor_scales(const CantorSpec& spec, int upto);

struct CantorBuild {
  SignedAtomicMeasure measure;  // 4^n atoms of weight 4^{-n} at square centers
  CantorSpec spec;
  CantorScales scales;

  double sigma(int k) const { return scales.sigma[k]; }
};

/// Canonical measure at the requested generation; resolution is the square
/// diagonal sqrt(2) sigma_n. Errors with BudgetExceeded past 2^24 atoms.
CantorBuild cantor_build(const CantorSpec& spec);

/// Points of the Cantor set itself (not atoms): origin corners of
/// generation-n squares selected by seeded digit strings. Each lies at
/// distance sqrt(2) sigma_n / 2 from the nearest atom, exactly half the
/// resolution, so potentials remain evaluable there.
std::vector<Point> cantor_sample_points(const CantorSpec& spec, int count,
                                        uint64_t seed);

/// Origin of the generation-|digits| square reached by the digit string
/// (digits in {0,1,2,3}: x bit 0, y bit 1).
Point cantor_square_origin(const CantorScales& scales,
                           const std::vector<int>& digits);

}  // namespace potlab
