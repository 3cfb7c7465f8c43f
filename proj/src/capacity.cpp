#include "potlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "potlab/error.hpp"
#include "potlab/io.hpp"
#include "potlab/parallel.hpp"

namespace potlab {

namespace {

int64_t cell_index(double x, double h) {
  return static_cast<int64_t>(std::floor(x / h));
}

}  // namespace

std::vector<double> CellCover::centers() const {
  std::vector<double> out;
  out.reserve(cells.size() * static_cast<std::size_t>(dim));
  for (const auto& c : cells)
    for (int q = 0; q < dim; ++q)
      out.push_back((static_cast<double>(c[q]) + 0.5) * h);
  return out;
}

CellCover CellCover::from_points(int dim, double h,
                                 std::span<const double> pts) {
  if (!(h > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  if (dim < 2 || dim > 3)
    fail(ErrorCode::InvalidArgument, "cell covers support d = 2, 3");
  CellCover cover;
  cover.dim = dim;
  cover.h = h;
  const std::size_t n = pts.size() / static_cast<std::size_t>(dim);
  cover.cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<int64_t, 3> c{0, 0, 0};
    for (int q = 0; q < dim; ++q) c[q] = cell_index(pts[i * dim + q], h);
    cover.cells.push_back(c);
  }
  std::sort(cover.cells.begin(), cover.cells.end());
  cover.cells.erase(std::unique(cover.cells.begin(), cover.cells.end()),
                    cover.cells.end());
  return cover;
}

CellCover CellCover::ball(int dim, double h, std::span<const double> center,
                          double r) {
  if (!(h > 0) || !(r > 0))
    fail(ErrorCode::InvalidArgument, "cell size and radius must be positive");
  CellCover cover;
  cover.dim = dim;
  cover.h = h;
  const double r2 = r * r;
  std::array<int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int q = 0; q < dim; ++q) {
    lo[q] = cell_index(center[q] - r, h) - 1;
    hi[q] = cell_index(center[q] + r, h) + 1;
  }
  for (int64_t i = lo[0]; i <= hi[0]; ++i)
    for (int64_t j = lo[1]; j <= hi[1]; ++j) {
      if (dim == 2) {
        const double cx = (i + 0.5) * h - center[0];
        const double cy = (j + 0.5) * h - center[1];
        if (cx * cx + cy * cy < r2) cover.cells.push_back({i, j, 0});
      } else {
        for (int64_t l = lo[2]; l <= hi[2]; ++l) {
          const double cx = (i + 0.5) * h - center[0];
          const double cy = (j + 0.5) * h - center[1];
          const double cz = (l + 0.5) * h - center[2];
          if (cx * cx + cy * cy + cz * cz < r2) cover.cells.push_back({i, j, l});
        }
      }
    }
  if (cover.cells.empty())
    fail(ErrorCode::EmptyInput, "ball cover has no cells; shrink h");
  std::sort(cover.cells.begin(), cover.cells.end());
  return cover;
}

CellCover CellCover::box(int dim, double h, std::span<const double> lo,
                         std::span<const double> hi) {
  CellCover cover;
  cover.dim = dim;
  cover.h = h;
  std::array<int64_t, 3> a{0, 0, 0}, b{0, 0, 1};
  for (int q = 0; q < dim; ++q) {
    a[q] = cell_index(lo[q] + 0.5 * h, h);
    b[q] = cell_index(hi[q] - 0.5 * h, h) + 1;
  }
  if (dim == 2) b[2] = 1;
  for (int64_t i = a[0]; i < b[0]; ++i)
    for (int64_t j = a[1]; j < b[1]; ++j)
      for (int64_t l = (dim == 2 ? 0 : a[2]); l < (dim == 2 ? 1 : b[2]); ++l)
        cover.cells.push_back({i, j, l});
  if (cover.cells.empty())
    fail(ErrorCode::EmptyInput, "box cover has no cells");
  std::sort(cover.cells.begin(), cover.cells.end());
  return cover;
}

CellCover CellCover::coarsened(int factor) const {
  if (factor <= 1) return *this;
  CellCover out;
  out.dim = dim;
  out.h = h * factor;
  out.cells.reserve(cells.size());
  const auto down = [factor](int64_t v) {
    // floor division
    return v >= 0 ? v / factor : -((-v + factor - 1) / factor);
  };
  for (const auto& c : cells)
    out.cells.push_back({down(c[0]), down(c[1]), down(c[2])});
  std::sort(out.cells.begin(), out.cells.end());
  out.cells.erase(std::unique(out.cells.begin(), out.cells.end()),
                  out.cells.end());
  return out;
}

double capacity_of_cover(const CellCover& cover, const KernelSpec& k,
                         const EquilibriumOptions& opts) {
  if (cover.cells.empty()) fail(ErrorCode::EmptyInput, "empty cover");
  const auto centers = cover.centers();
  // degenerate single cell: same formula, no iteration needed
  const auto res = equilibrium_solve(centers, cover.dim, k, cover.h, opts);
  return res.capacity;
}

SuperadditivityReport superadditivity_check(
    const std::vector<std::pair<Point, double>>& discs, int cells_per_radius,
    const EquilibriumOptions& opts) {
  if (discs.empty()) fail(ErrorCode::EmptyInput, "no discs");
  const KernelSpec k = KernelSpec::log2d();
  SuperadditivityReport rep;
  rep.delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < discs.size(); ++i) {
    const auto& [ci, ri] = discs[i];
    if (ci.size() != 2) fail(ErrorCode::DimensionMismatch, "discs are planar");
    rep.sigma = std::max(rep.sigma, ri);
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const auto& [cj, rj] = discs[j];
      const double gap = dist(ci, cj) - ri - rj;
      if (gap <= 0)
        fail(ErrorCode::OverlappingDiscs,
             "discs " + std::to_string(i) + " and " + std::to_string(j) +
                 " are not disjoint");
      rep.delta = std::min(rep.delta, gap);
    }
  }
  if (discs.size() == 1) rep.delta = 1.0;
  rep.hypothesis_holds =
      rep.sigma <= std::pow(rep.delta, static_cast<double>(discs.size()));

  double sum = 0.0;
  std::vector<double> union_centers;
  std::vector<double> union_self;
  for (const auto& [c, r] : discs) {
    const double h = r / cells_per_radius;
    const auto cover = CellCover::ball(2, h, c, r);
    sum += capacity_of_cover(cover, k, opts);
    const auto centers = cover.centers();
    union_centers.insert(union_centers.end(), centers.begin(), centers.end());
    union_self.insert(union_self.end(), cover.cells.size(), k.self_value(h));
  }
  EquilibriumOptions uopts = opts;
  uopts.self_values = union_self;
  const auto ures = equilibrium_solve(union_centers, 2, k, 0.0, uopts);
  rep.union_capacity = ures.capacity;
  rep.sum_capacity = sum;
  rep.ratio = sum > 0 ? ures.capacity / sum : 0.0;
  return rep;
}

WeakCapResult weak_cap_norm(std::span<const double> sample_points,
                            std::span<const double> values, int dim, double h,
                            const KernelSpec& k, const WeakCapOptions& opts) {
  const std::size_t n = values.size();
  if (n == 0) fail(ErrorCode::EmptyInput, "empty sample set");
  if (sample_points.size() != n * static_cast<std::size_t>(dim))
    fail(ErrorCode::DimensionMismatch, "points/values size mismatch");

  std::vector<double> positives;
  positives.reserve(n);
  for (double v : values)
    if (v > 0 && std::isfinite(v)) positives.push_back(v);
  WeakCapResult res;
  if (positives.empty()) return res;  // value 0: no super-level sets

  std::sort(positives.begin(), positives.end());
  positives.erase(std::unique(positives.begin(), positives.end()),
                  positives.end());
  const double just_below = 1.0 - 0x1.0p-20;
  std::set<double> rungset;
  if (static_cast<int>(positives.size()) <= opts.max_rungs / 2) {
    // few distinct values: just-below rungs see each level set exactly
    for (double v : positives) rungset.insert(v * just_below);
    for (std::size_t i = 0; i + 1 < positives.size(); ++i)
      rungset.insert(0.5 * (positives[i] + positives[i + 1]));
  } else {
    const double vmin = positives.front(), vmax = positives.back();
    double t = vmin * just_below;
    for (int i = 0; i < opts.max_rungs - 8 && t < vmax; ++i, t *= 2.0)
      rungset.insert(t);
    // top of the range matters most for spiky fields
    const std::size_t top = std::min<std::size_t>(8, positives.size());
    for (std::size_t i = positives.size() - top; i < positives.size(); ++i)
      rungset.insert(positives[i] * just_below);
  }
  std::vector<double> rungs(rungset.begin(), rungset.end());
  res.rungs = static_cast<int>(rungs.size());

  std::vector<double> tcap(rungs.size(), 0.0);
  std::vector<int> factors(rungs.size(), 1);
  parallel_for(rungs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t ri = b; ri < e; ++ri) {
      const double t = rungs[ri];
      std::vector<double> pts;
      for (std::size_t i = 0; i < n; ++i)
        if (values[i] > t && std::isfinite(values[i]))
          for (int q = 0; q < dim; ++q) pts.push_back(sample_points[i * dim + q]);
      if (pts.empty()) continue;
      CellCover cover = CellCover::from_points(dim, h, pts);
      int factor = 1;
      while (cover.size() > opts.max_cells) {
        ++factor;
        cover = CellCover::from_points(dim, h * factor, pts);
      }
      factors[ri] = factor;
      double cap = capacity_of_cover(cover, k, opts.solve);
      // capacity is monotone: clamp by a closed-form circumscribing ball
      const auto centers = cover.centers();
      std::vector<double> mid(dim, 0.0);
      const std::size_t m = cover.size();
      for (std::size_t i = 0; i < m; ++i)
        for (int q = 0; q < dim; ++q) mid[q] += centers[i * dim + q] / m;
      double rad2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double d2 = 0.0;
        for (int q = 0; q < dim; ++q) {
          const double d = centers[i * dim + q] - mid[q];
          d2 += d * d;
        }
        rad2 = std::max(rad2, d2);
      }
      const double rad =
          std::sqrt(rad2) + 0.5 * std::sqrt(static_cast<double>(dim)) * cover.h;
      if (!k.is_log() || rad < 0.5) cap = std::min(cap, ball_capacity(k, rad));
      tcap[ri] = t * cap;
    }
  });

  for (std::size_t ri = 0; ri < rungs.size(); ++ri) {
    if (tcap[ri] > res.value) {
      res.value = tcap[ri];
      res.argmax_t = rungs[ri];
    }
    res.coarsen_factor = std::max(res.coarsen_factor, factors[ri]);
  }
  return res;
}

}  // namespace potlab
