#pragma once

#include <vector>

namespace potlab {

/// Strictly decreasing positive scales (radii or truncation levels).
struct Ladder {
  std::vector<double> scales;

  /// Dyadic by default: top, top*ratio, ... for `rungs` entries.
  static Ladder geometric(double top, double ratio = 0.5, int rungs = 20);
  static Ladder from_scales(std::vector<double> scales);

  double bottom() const { return scales.back(); }
  std::size_t size() const { return scales.size(); }
};

enum class Verdict { Convergent, NonConvergent, Inconclusive };
enum class Trend { Vanishing, BoundedPositive, Growing };

const char* to_string(Verdict v);
const char* to_string(Trend t);

/// Values of a quantity over a scale ladder plus oscillation statistics.
/// `values[i]` holds the (possibly vector-valued) quantity at scales[i].
struct LadderReport {
  std::vector<double> scales;
  std::vector<std::vector<double>> values;
  /// max pairwise distance of values over the last `window` rungs
  double oscillation = 0.0;
  double tolerance = 0.0;
  int window = 5;
  Verdict verdict = Verdict::Inconclusive;
  Trend trend = Trend::BoundedPositive;  // meaningful for density reports

  /// Euclidean norm of the last value (used for relative tolerances).
  double last_magnitude() const;
};

/// Convergence rule with a hysteresis band: convergent iff the oscillation
/// over the last `window` rungs is < tol, non-convergent iff > 10 * tol,
/// else inconclusive. tol <= 0 selects 1e-3 * |last value| floored at 1e-6.
void classify_convergence(LadderReport& report, double tol, int window = 5);

/// Least-squares slope of log(value) against log(scale) decides the trend:
/// slope > 0.3 -> Vanishing (values shrink with the scale), slope < -0.3 ->
/// Growing, else BoundedPositive. Non-positive values are skipped; an
/// all-zero tail is Vanishing.
Trend classify_trend(const std::vector<double>& scales,
                     const std::vector<double>& ratios);

}  // namespace potlab
