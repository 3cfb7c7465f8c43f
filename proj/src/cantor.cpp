#include "potlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "potlab/error.hpp"
#include "potlab/io.hpp"
#include "potlab/rng.hpp"

namespace potlab {

CantorSpec CantorSpec::beta_family(double beta, int generation) {
  if (!(beta >= 0)) fail(ErrorCode::InvalidArgument, "beta must be >= 0");
  if (generation < 0) fail(ErrorCode::InvalidArgument, "generation must be >= 0");
  CantorSpec s;
  s.family = Family::Beta;
  s.beta = beta;
  s.generation = generation;
  return s;
}

CantorSpec CantorSpec::gauge_family(const MeasureFunction& gauge,
                                    int generation) {
  if (generation < 0) fail(ErrorCode::InvalidArgument, "generation must be >= 0");
  CantorSpec s;
  s.family = Family::Gauge;
  s.gauge = gauge;
  s.generation = generation;
  return s;
}

CantorScales cantor_scales(const CantorSpec& spec, int upto) {
  CantorScales sc;
  sc.sigma.resize(upto + 1);
  sc.lambda.resize(upto + 1);
  sc.sigma[0] = 1.0;
  sc.lambda[0] = 1.0;
  if (spec.family == CantorSpec::Family::Beta) {
    for (int k = 1; k <= upto; ++k) {
      // dilation (1/4)(1 + beta/k), clamped so squares stay disjoint for
      // every beta; only the first ceil(beta/0.8) generations are touched
      const double raw = 0.25 * (1.0 + spec.beta / k);
      sc.lambda[k] = std::min(raw, kCantorLambdaMax);
      sc.sigma[k] = sc.sigma[k - 1] * sc.lambda[k];
    }
    return sc;
  }
  // gauge family: sigma_k solves 4^{-k} = h(sigma_k)
  const MeasureFunction& h = spec.gauge;
  const double bad_r = h.doubling_violation_radius();
  if (bad_r >= 0)
    fail(ErrorCode::GaugeViolation,
         "gauge " + h.name() + " has h(2r)/h(r) >= 4 at r = " + format_double(bad_r));
  for (int k = 1; k <= upto; ++k) {
    const double target = std::pow(0.25, k);
    double lo = 0.0, hi = sc.sigma[k - 1];
    if (h(hi) <= target)
      fail(ErrorCode::GaugeViolation,
           "gauge " + h.name() + " cannot reach 4^-" + std::to_string(k) +
               " below sigma_" + std::to_string(k - 1));
    // bisection; the gauge is only assumed monotone continuous
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (h(mid) < target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 1e-14 * hi) break;
    }
    sc.sigma[k] = 0.5 * (lo + hi);
    sc.lambda[k] = sc.sigma[k] / sc.sigma[k - 1];
    if (!(sc.lambda[k] > 0.0) || sc.lambda[k] >= 0.5)
      fail(ErrorCode::GaugeViolation,
           "gauge " + h.name() + " yields lambda_" + std::to_string(k) + " = " +
               format_double(sc.lambda[k]) + " outside (0, 1/2)");
  }
  return sc;
}

CantorBuild cantor_build(const CantorSpec& spec) {
  const int n = spec.generation;
  if (n > 12 || (std::size_t{1} << (2 * n)) > kAtomBudget)
    fail(ErrorCode::BudgetExceeded,
         "4^" + std::to_string(n) + " atoms exceed the 2^24 budget");
  CantorBuild build;
  build.spec = spec;
  build.scales = cantor_scales(spec, std::max(n, 1));

  const std::size_t count = std::size_t{1} << (2 * n);
  std::vector<double> coords;
  coords.reserve(2 * count);
  const double half = 0.5 * build.scales.sigma[n];

  // depth-first over the four corner children, digit order 0..3
  const auto descend = [&](const auto& self, int level, double x,
                           double y) -> void {
    if (level == n) {
      coords.push_back(x + half);
      coords.push_back(y + half);
      return;
    }
    const double off =
        build.scales.sigma[level] - build.scales.sigma[level + 1];
    for (int d = 0; d < 4; ++d)
      self(self, level + 1, x + ((d & 1) ? off : 0.0),
           y + ((d & 2) ? off : 0.0));
  };
  descend(descend, 0, 0.0, 0.0);

  const double w = std::pow(0.25, n);
  std::vector<double> weights(count, w);
  build.measure =
      SignedAtomicMeasure(2, std::sqrt(2.0) * build.scales.sigma[n],
                          std::move(coords), std::move(weights));
  if (build.measure.size() != count)
    fail(ErrorCode::InvalidArgument, "cantor atoms collided; scales invalid");
  return build;
}

Point cantor_square_origin(const CantorScales& scales,
                           const std::vector<int>& digits) {
  double x = 0.0, y = 0.0;
  for (std::size_t k = 1; k <= digits.size(); ++k) {
    const double off = scales.sigma[k - 1] - scales.sigma[k];
    const int d = digits[k - 1];
    if (d & 1) x += off;
    if (d & 2) y += off;
  }
  return {x, y};
}

std::vector<Point> cantor_sample_points(const CantorSpec& spec, int count,
                                        uint64_t seed) {
  const int n = std::max(spec.generation, 1);
  const CantorScales scales = cantor_scales(spec, n);
  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<Point> points;
  while (static_cast<int>(points.size()) < count) {
    std::vector<int> digits(n);
    for (int& d : digits) d = static_cast<int>(rng.index(4));
    if (!seen.insert(digits).second) continue;
    points.push_back(cantor_square_origin(scales, digits));
  }
  return points;
}

}  // namespace potlab
