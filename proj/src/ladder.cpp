#include "potlab/ladder.hpp"

#include <algorithm>
#include <cmath>

#include "potlab/error.hpp"

namespace potlab {

Ladder Ladder::geometric(double top, double ratio, int rungs) {
  if (!(top > 0) || !(ratio > 0) || !(ratio < 1) || rungs < 1)
    fail(ErrorCode::InvalidArgument, "geometric ladder needs top>0, 0<ratio<1");
  Ladder l;
  l.scales.resize(rungs);
  double r = top;
  for (int i = 0; i < rungs; ++i, r *= ratio) l.scales[i] = r;
  return l;
}

Ladder Ladder::from_scales(std::vector<double> scales) {
  if (scales.empty()) fail(ErrorCode::EmptyInput, "empty ladder");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0) || (i > 0 && !(scales[i] < scales[i - 1])))
      fail(ErrorCode::InvalidArgument,
           "ladder scales must be positive and strictly decreasing");
  }
  Ladder l;
  l.scales = std::move(scales);
  return l;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Convergent: return "convergent";
    case Verdict::NonConvergent: return "non-convergent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::Vanishing: return "vanishing";
    case Trend::BoundedPositive: return "bounded-positive";
    case Trend::Growing: return "growing";
  }
  return "?";
}

double LadderReport::last_magnitude() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values.back()) s += v * v;
  return std::sqrt(s);
}

void classify_convergence(LadderReport& report, double tol, int window) {
  const std::size_t n = report.values.size();
  if (n < 2) {
    report.verdict = Verdict::Inconclusive;
    return;
  }
  const std::size_t w = std::min<std::size_t>(window, n);
  double osc = 0.0;
  for (std::size_t i = n - w; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < report.values[i].size(); ++c) {
        const double d = report.values[i][c] - report.values[j][c];
        d2 += d * d;
      }
      osc = std::max(osc, std::sqrt(d2));
    }
  if (tol <= 0) tol = std::max(1e-3 * report.last_magnitude(), 1e-6);
  report.oscillation = osc;
  report.tolerance = tol;
  report.window = static_cast<int>(w);
  if (osc < tol)
    report.verdict = Verdict::Convergent;
  else if (osc > 10.0 * tol)
    report.verdict = Verdict::NonConvergent;
  else
    report.verdict = Verdict::Inconclusive;
}

Trend classify_trend(const std::vector<double>& scales,
                     const std::vector<double>& ratios) {
  // log-log slope; values shrinking as the scale shrinks have positive slope
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0)) continue;
    const double x = std::log(scales[i]);
    const double y = std::log(ratios[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return Trend::Vanishing;  // nothing positive to fit
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return Trend::BoundedPositive;
  const double slope = (n * sxy - sx * sy) / denom;
  if (slope > 0.3) return Trend::Vanishing;
  if (slope < -0.3) return Trend::Growing;
  return Trend::BoundedPositive;
}

}  // namespace potlab
