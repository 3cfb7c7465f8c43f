#include "potlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "potlab/error.hpp"
#include "potlab/io.hpp"

namespace potlab {

namespace {

double gradient_factor(int d) { return d == 2 ? 1.0 : double(d - 2); }

}  // namespace

const char* to_string(DiffMode m) {
  switch (m) {
    case DiffMode::Capacity: return "capacity";
    case DiffMode::WeakCapacity: return "weak-capacity";
    case DiffMode::SecondOrder: return "second-order";
    case DiffMode::WeakSecondOrder: return "weak-second-order";
  }
  return "?";
}

const char* to_string(DiffVerdict v) {
  switch (v) {
    case DiffVerdict::Differentiable: return "differentiable";
    case DiffVerdict::NonDifferentiable: return "non-differentiable";
    case DiffVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

DiffVerdict classify_diff(const std::vector<double>& radii,
                          const std::vector<double>& ratios) {
  if (ratios.size() < 2) return DiffVerdict::Inconclusive;
  const std::size_t w = std::min<std::size_t>(4, ratios.size());
  const std::size_t b = ratios.size() - w;
  bool all_small = true, all_large = true;
  std::vector<double> wr(radii.begin() + b, radii.end());
  std::vector<double> wv(ratios.begin() + b, ratios.end());
  for (std::size_t i = b; i < ratios.size(); ++i) {
    if (!(ratios[i] < 0.1)) all_small = false;
    if (!(ratios[i] > 0.3)) all_large = false;
  }
  // decreasing trend = fitted log-log slope over the window shows decay;
  // the gentle threshold keeps slowly (logarithmically) improving ratios
  // on the decreasing side while flat noisy profiles stay put
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < wv.size(); ++i) {
    if (!(wv[i] > 0)) continue;
    const double x = std::log(wr[i]), y = std::log(wv[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  bool decreasing = true;  // all-zero ratios decay trivially
  if (n >= 2) {
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    decreasing = slope > 0.075;
  }
  if (all_small && decreasing) return DiffVerdict::Differentiable;
  if (all_large && !decreasing) return DiffVerdict::NonDifferentiable;
  return DiffVerdict::Inconclusive;
}

std::vector<double> candidate_gradient(const SignedAtomicMeasure& mu,
                                       const KernelSpec& k,
                                       std::span<const double> a,
                                       double eps_min, Verdict* pv_flag) {
  const int d = mu.dim();
  if (k.dim != d)
    fail(ErrorCode::DimensionMismatch, "kernel/measure dimension mismatch");
  if (eps_min < mu.resolution() && mu.resolution() > 0)
    fail(ErrorCode::LadderBelowResolution,
         "eps_min below the measure resolution");
  std::vector<double> A(d, 0.0);
  if (mu.empty()) {
    if (pv_flag) *pv_flag = Verdict::Convergent;
    return A;
  }
  const double eps = eps_min > 0 ? eps_min : 1e-300;
  const auto R = truncated_transform(mu, a, eps);
  const double f = gradient_factor(d);
  for (int c = 0; c < d; ++c) A[c] = -f * R[c];
  if (pv_flag) {
    double top;
    int rungs;
    if (mu.resolution() > 0) {
      top = 128.0 * mu.resolution();
      rungs = 7;  // down to 2 x resolution, dyadic
    } else {
      const double md = mu.min_distance(a);
      top = std::isfinite(md) && md > 0 ? 0.99 * md : 1.0;
      rungs = 5;
    }
    const auto rep = pv_classify(mu, a, Ladder::geometric(top, 0.5, rungs));
    *pv_flag = rep.verdict;
  }
  return A;
}

std::vector<double> ball_grid(std::span<const double> a, double r, double h,
                              int dim) {
  std::vector<double> pts;
  const long m = static_cast<long>(std::ceil(r / h));
  const double r2 = r * r;
  if (dim == 2) {
    for (long i = -m; i < m; ++i)
      for (long j = -m; j < m; ++j) {
        const double x = (i + 0.5) * h, y = (j + 0.5) * h;
        if (x * x + y * y >= r2) continue;
        pts.push_back(a[0] + x);
        pts.push_back(a[1] + y);
      }
  } else if (dim == 3) {
    for (long i = -m; i < m; ++i)
      for (long j = -m; j < m; ++j)
        for (long l = -m; l < m; ++l) {
          const double x = (i + 0.5) * h, y = (j + 0.5) * h, z = (l + 0.5) * h;
          if (x * x + y * y + z * z >= r2) continue;
          pts.push_back(a[0] + x);
          pts.push_back(a[1] + y);
          pts.push_back(a[2] + z);
        }
  } else {
    fail(ErrorCode::InvalidArgument, "grids support d = 2, 3");
  }
  return pts;
}

namespace {

double mode_denominator(DiffMode mode, const KernelSpec& k, double r) {
  const double cap = ball_capacity(k, r);
  switch (mode) {
    case DiffMode::Capacity:
    case DiffMode::SecondOrder:
      return cap;
    case DiffMode::WeakCapacity:
      return r * cap;
    case DiffMode::WeakSecondOrder:
      return r * r * cap;
  }
  return cap;
}

bool second_order(DiffMode m) {
  return m == DiffMode::SecondOrder || m == DiffMode::WeakSecondOrder;
}

bool divided(DiffMode m) {
  return m == DiffMode::Capacity || m == DiffMode::SecondOrder;
}

}  // namespace

double ratio_from_samples(std::span<const double> points,
                          std::span<const double> values, int dim,
                          std::span<const double> a, double u_a,
                          std::span<const double> A,
                          std::span<const double> B, double r, double h,
                          DiffMode mode, const KernelSpec& k,
                          const WeakCapOptions& wopts) {
  const std::size_t n = values.size();
  std::vector<double> pts;
  std::vector<double> rem;
  pts.reserve(points.size());
  rem.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) continue;  // excluded sample
    double lin = 0.0, quad = 0.0, d2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double dc = points[i * dim + c] - a[c];
      lin += A[c] * dc;
      d2 += dc * dc;
      if (second_order(mode))
        for (int e = 0; e < dim; ++e)
          quad += B[c * dim + e] * dc * (points[i * dim + e] - a[e]);
    }
    if (d2 == 0.0) continue;
    double v = std::abs(values[i] - u_a - lin - quad);
    if (divided(mode)) v /= second_order(mode) ? d2 : std::sqrt(d2);
    rem.push_back(v);
    // covers are taken in a-centered coordinates: capacities of the local
    // super-level sets are translation invariant, and for d = 2 this keeps
    // B(a, r) inside the Wiener domain wherever a sits
    for (int c = 0; c < dim; ++c) pts.push_back(points[i * dim + c] - a[c]);
  }
  if (rem.empty()) fail(ErrorCode::EmptyInput, "all samples excluded");
  const auto w = weak_cap_norm(pts, rem, dim, h, k, wopts);
  return w.value / mode_denominator(mode, k, r);
}

double first_order_ratio(const SignedAtomicMeasure& mu, const KernelSpec& k,
                         std::span<const double> a,
                         std::span<const double> A, double r, double h,
                         DiffMode mode, const RatioOptions& opts) {
  if (second_order(mode))
    fail(ErrorCode::InvalidArgument, "use second_order_test for these modes");
  if (h > r / 32.0 * (1.0 + 1e-12))
    fail(ErrorCode::InvalidArgument, "grid step must satisfy h <= r/32");
  const double u_a = potential(mu, k, a);
  const auto pts = ball_grid(a, r, h, mu.dim());
  const std::size_t n = pts.size() / static_cast<std::size_t>(mu.dim());
  const auto vals =
      potential_many(mu, k, pts, n, opts.exclude_factor * mu.resolution());
  return ratio_from_samples(pts, vals, mu.dim(), a, u_a, A, {}, r, h, mode, k,
                            opts.wcap);
}

DiffReport diff_test(const SignedAtomicMeasure& mu, const KernelSpec& k,
                     std::span<const double> a, const Ladder& ladder,
                     DiffMode mode, const RatioOptions& opts) {
  if (second_order(mode))
    fail(ErrorCode::InvalidArgument, "use second_order_test for these modes");
  DiffReport rep;
  rep.a.assign(a.begin(), a.end());
  rep.mode = mode;
  rep.gradient =
      candidate_gradient(mu, k, a, 2.0 * mu.resolution(), &rep.pv_flag);
  rep.radii = ladder.scales;
  rep.ratios.reserve(ladder.size());
  for (double r : ladder.scales) {
    const double h = r / opts.grid_cells;
    rep.ratios.push_back(
        first_order_ratio(mu, k, a, rep.gradient, r, h, mode, opts));
  }
  rep.verdict = classify_diff(rep.radii, rep.ratios);
  return rep;
}

Thm1Record thm1_characterization(const SignedAtomicMeasure& mu,
                                 std::span<const double> a,
                                 const Ladder& ladder,
                                 const RatioOptions& opts) {
  const int d = mu.dim();
  Thm1Record rec;
  const auto density =
      density_profile(mu, a, MeasureFunction::power(d - 1), ladder);
  rec.density_trend = density.trend;
  rec.density_vanishes = density.trend == Trend::Vanishing;
  const auto pv = pv_classify(mu, a, ladder);
  rec.pv_verdict = pv.verdict;
  rec.pv_exists = pv.verdict == Verdict::Convergent;
  const KernelSpec k = d == 2 ? KernelSpec::log2d() : KernelSpec::riesz(d);
  // the planar analogue of the characterization lives in the weak variant
  const DiffMode mode = d >= 3 ? DiffMode::Capacity : DiffMode::WeakCapacity;
  const auto diff = diff_test(mu, k, a, ladder, mode, opts);
  rec.diff_verdict = diff.verdict;
  const bool expected = rec.density_vanishes && rec.pv_exists;
  rec.consistent_with_diff_test =
      expected ? diff.verdict == DiffVerdict::Differentiable
               : diff.verdict == DiffVerdict::NonDifferentiable;
  return rec;
}

DiffReport second_order_test(const SignedAtomicMeasure& mu, const KernelSpec& k,
                             std::span<const double> a, const Ladder& ladder,
                             const RatioOptions& opts, DiffMode mode) {
  const int d = mu.dim();
  if (d == 2) mode = DiffMode::WeakSecondOrder;
  if (!second_order(mode))
    fail(ErrorCode::InvalidArgument, "second_order_test needs a 2nd-order mode");
  DiffReport rep;
  rep.a.assign(a.begin(), a.end());
  rep.mode = mode;
  const double eps_min =
      mu.resolution() > 0 ? 2.0 * mu.resolution() : 1e-300;
  rep.gradient = candidate_gradient(mu, k, a, eps_min, &rep.pv_flag);

  // mu-tilde: least-squares slope of ball mass against r^d over the last
  // six rungs (robust to one noisy rung)
  const auto density = density_profile(mu, a, MeasureFunction::power(d), ladder);
  rep.density_flagged = density.trend == Trend::Growing;
  {
    const std::size_t m = ladder.size();
    const std::size_t lo = m > 6 ? m - 6 : 0;
    double num = 0.0, den = 0.0;
    const auto masses = ball_mass_ladder(mu, a, ladder.scales);
    for (std::size_t i = lo; i < m; ++i) {
      const double rd = std::pow(ladder.scales[i], d);
      num += masses[i] * rd;
      den += rd * rd;
    }
    rep.density = den > 0 ? num / den : 0.0;
  }

  rep.hessian.assign(static_cast<std::size_t>(d) * d, 0.0);
  // local delta coefficient: a_d / v_d = -(d-2) for d >= 3, -1 in the plane
  const double local = (d == 2 ? -1.0 : -double(d - 2)) * rep.density;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double v = second_derivative_truncated(mu, a, i, j, eps_min);
      if (i == j) v += local;
      rep.hessian[i * d + j] = rep.hessian[j * d + i] = 0.5 * v;
    }

  const double u_a = potential(mu, k, a);
  rep.radii = ladder.scales;
  for (double r : ladder.scales) {
    const double h = r / opts.grid_cells;
    const auto pts = ball_grid(a, r, h, d);
    const std::size_t n = pts.size() / static_cast<std::size_t>(d);
    const auto vals =
        potential_many(mu, k, pts, n, opts.exclude_factor * mu.resolution());
    rep.ratios.push_back(ratio_from_samples(pts, vals, d, a, u_a, rep.gradient,
                                            rep.hessian, r, h, mode, k,
                                            opts.wcap));
  }
  rep.verdict = classify_diff(rep.radii, rep.ratios);
  return rep;
}

std::vector<ProbePoint> thm67_ratio_probe(const CounterexampleBuild& build,
                                          std::span<const double> a,
                                          const std::vector<int>& ks,
                                          const RatioOptions& opts) {
  const long covering = build.covering_block(a);
  if (covering >= 0) {
    const auto& b = build.blocks[covering];
    fail(ErrorCode::InvalidArgument,
         "probe point lies inside exceptional ball " + std::to_string(covering) +
             " (level " + std::to_string(b.level) + ", center (" +
             format_double(b.center[0]) + ", " + format_double(b.center[1]) +
             "), radius " + format_double(b.radius) + ")");
  }
  for (int k : ks)
    if (!build.has_level(k))
      fail(ErrorCode::InvalidArgument,
           "level " + std::to_string(k) + " is outside the built range");

  const KernelSpec kern = KernelSpec::log2d();
  const MeasureFunction base =
      build.variant == 7 ? MeasureFunction::psi() : MeasureFunction::phi();
  std::vector<ProbePoint> out;
  Verdict pv{};
  const auto A = candidate_gradient(build.measure, kern, a,
                                    2.0 * build.measure.resolution(), &pv);
  for (int k : ks) {
    ProbePoint p;
    p.k = k;
    p.radius = build.probe_radius(k);
    const double h = p.radius / opts.grid_cells;
    p.measured = first_order_ratio(build.measure, kern, a, A, p.radius, h,
                                   DiffMode::WeakCapacity, opts);
    const double sigma_nk = build.scales.sigma[build.N.at(k)];
    p.predicted = build.gauge(sigma_nk) / base(sigma_nk) / (double(k) * k);
    out.push_back(p);
  }
  return out;
}

}  // namespace potlab
