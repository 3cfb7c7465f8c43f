#include "potlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "potlab/error.hpp"
#include "potlab/io.hpp"

namespace potlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SignedAtomicMeasure sphere_measure(const Point& center, double radius,
                                   double mass, int count, int dim) {
  if (count < 8) fail(ErrorCode::InvalidArgument, "count must be >= 8");
  if (!(radius > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  if (static_cast<int>(center.size()) != dim)
    fail(ErrorCode::DimensionMismatch, "center has wrong dimension");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(count) * dim);
  double resolution;
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * i / count;
      coords.push_back(center[0] + radius * std::cos(a));
      coords.push_back(center[1] + radius * std::sin(a));
    }
    resolution = 2.0 * radius * std::sin(kPi / count);
  } else if (dim == 3) {
    // Fibonacci lattice, golden-angle increments
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = ga * i;
      coords.push_back(center[0] + radius * rho * std::cos(a));
      coords.push_back(center[1] + radius * rho * std::sin(a));
      coords.push_back(center[2] + radius * z);
    }
    resolution = radius * std::sqrt(4.0 * kPi / count);
  } else {
    fail(ErrorCode::InvalidArgument, "sphere_measure supports d = 2, 3");
  }
  std::vector<double> weights(count, mass / count);
  return SignedAtomicMeasure(dim, resolution, std::move(coords),
                             std::move(weights));
}

SignedAtomicMeasure ball_measure(const Point& center, double radius,
                                 double mass, double spacing) {
  if (center.size() != 3)
    fail(ErrorCode::DimensionMismatch, "ball_measure is three-dimensional");
  if (!(spacing > 0) || !(radius > 0))
    fail(ErrorCode::InvalidArgument, "radius and spacing must be positive");
  std::vector<double> coords;
  const long m = static_cast<long>(std::floor(radius / spacing)) + 1;
  const double r2 = radius * radius;
  for (long i = -m; i <= m; ++i)
    for (long j = -m; j <= m; ++j)
      for (long l = -m; l <= m; ++l) {
        const double x = (i + 0.5) * spacing, y = (j + 0.5) * spacing,
                     z = (l + 0.5) * spacing;
        if (x * x + y * y + z * z >= r2) continue;
        coords.push_back(center[0] + x);
        coords.push_back(center[1] + y);
        coords.push_back(center[2] + z);
      }
  const std::size_t n = coords.size() / 3;
  if (n == 0) fail(ErrorCode::EmptyInput, "no lattice cells inside the ball");
  if (n > kAtomBudget)
    fail(ErrorCode::BudgetExceeded, "ball lattice exceeds the atom budget");
  std::vector<double> weights(n, mass / static_cast<double>(n));
  return SignedAtomicMeasure(3, spacing * std::sqrt(3.0), std::move(coords),
                             std::move(weights));
}

SignedAtomicMeasure block_measure(const Point& p, double rho, int circle_count,
                                  double unit_weight) {
  if (p.size() != 2) fail(ErrorCode::DimensionMismatch, "blocks are planar");
  if (!(rho > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  if (circle_count < 16)
    fail(ErrorCode::InvalidArgument, "circle discretization needs M >= 16");
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(2 * (circle_count + 1));
  weights.reserve(circle_count + 1);
  const double cw = -unit_weight / circle_count;
  double circle_sum = 0.0;
  for (int j = 0; j < circle_count; ++j) {
    const double a = 2.0 * kPi * j / circle_count;
    coords.push_back(p[0] + rho * std::cos(a));
    coords.push_back(p[1] + rho * std::sin(a));
    weights.push_back(cw);
    circle_sum += cw;
  }
  coords.push_back(p[0]);
  coords.push_back(p[1]);
  weights.push_back(-circle_sum);  // total weight exactly 0 bit-for-bit
  return SignedAtomicMeasure(2, 2.0 * kPi * rho / circle_count,
                             std::move(coords), std::move(weights));
}

int CounterexampleBuild::host_generation(int n) const {
  const auto it = N.find(n);
  if (it == N.end())
    fail(ErrorCode::InvalidArgument,
         "level " + std::to_string(n) + " was not built");
  return variant == 7 ? 2 * it->second : it->second;
}

int CounterexampleBuild::block_generation(int n) const {
  return host_generation(n) + n;
}

double CounterexampleBuild::probe_radius(int k) const {
  const auto it = N.find(k);
  if (it == N.end())
    fail(ErrorCode::InvalidArgument,
         "level " + std::to_string(k) + " was not built");
  return std::sqrt(2.0) * scales.sigma[it->second];
}

long CounterexampleBuild::covering_block(std::span<const double> a) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (dist(blocks[b].center, a) < blocks[b].radius) return static_cast<long>(b);
  }
  return -1;
}

namespace {

// all generation-g square origins, digit order 0..3
void host_origins(const CantorScales& sc, int g, std::vector<double>& out) {
  out.clear();
  out.reserve(2 * (std::size_t{1} << (2 * g)));
  const auto descend = [&](const auto& self, int level, double x,
                           double y) -> void {
    if (level == g) {
      out.push_back(x);
      out.push_back(y);
      return;
    }
    const double off = sc.sigma[level] - sc.sigma[level + 1];
    for (int d = 0; d < 4; ++d)
      self(self, level + 1, x + ((d & 1) ? off : 0.0),
           y + ((d & 2) ? off : 0.0));
  };
  descend(descend, 0, 0.0, 0.0);
}

CounterexampleBuild build_blocks(const MeasureFunction& gauge,
                                 const std::map<int, int>& N, int circle_count,
                                 std::size_t budget, int variant) {
  if (N.empty()) fail(ErrorCode::EmptyInput, "no levels requested");
  CounterexampleBuild build;
  build.variant = variant;
  build.N = N;
  build.gauge = gauge;
  build.circle_count = circle_count;

  int max_gen = 0;
  std::size_t atoms = 0;
  for (const auto& [n, Nn] : N) {
    if (n < 1 || Nn < 1)
      fail(ErrorCode::InvalidArgument, "levels and N_n must be >= 1");
    const int host = variant == 7 ? 2 * Nn : Nn;
    max_gen = std::max(max_gen, host + n);
    if (host > 30)
      fail(ErrorCode::BudgetExceeded,
           "4^" + std::to_string(host) + " blocks at level " + std::to_string(n));
    const std::size_t nblocks = std::size_t{1} << (2 * host);
    atoms += nblocks * static_cast<std::size_t>(circle_count + 1);
    if (atoms > budget)
      fail(ErrorCode::BudgetExceeded,
           "level " + std::to_string(n) + " needs 4^" + std::to_string(host) +
               " blocks; total atoms exceed the budget " +
               std::to_string(budget));
  }

  CantorSpec spec = CantorSpec::gauge_family(gauge, 0);
  build.scales = cantor_scales(spec, max_gen);

  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(2 * atoms);
  weights.reserve(atoms);
  std::vector<double> origins;
  for (const auto& [n, Nn] : N) {
    const int host = variant == 7 ? 2 * Nn : Nn;
    const int bgen = host + n;
    const double s1 = build.scales.sigma[bgen];
    const double rho = std::sqrt(2.0) * s1;
    const double w = 1.0 / (n * n * std::pow(4.0, host));
    host_origins(build.scales, host, origins);
    const std::size_t nb = origins.size() / 2;
    for (std::size_t j = 0; j < nb; ++j) {
      // lexicographically-first descendant square shares the host origin
      const Point p{origins[2 * j] + 0.5 * s1, origins[2 * j + 1] + 0.5 * s1};
      const double cw = -w / circle_count;
      double circle_sum = 0.0;
      for (int m = 0; m < circle_count; ++m) {
        const double a = 2.0 * kPi * m / circle_count;
        coords.push_back(p[0] + rho * std::cos(a));
        coords.push_back(p[1] + rho * std::sin(a));
        weights.push_back(cw);
        circle_sum += cw;
      }
      coords.push_back(p[0]);
      coords.push_back(p[1]);
      weights.push_back(-circle_sum);
      build.blocks.push_back(BlockInfo{p, rho, -circle_sum, n});
    }
  }

  // resolution: the finest circle spacing among the blocks
  double finest = std::numeric_limits<double>::infinity();
  for (const auto& b : build.blocks)
    finest = std::min(finest, 2.0 * kPi * b.radius / circle_count);
  build.measure = SignedAtomicMeasure(2, finest, std::move(coords),
                                      std::move(weights));
  return build;
}

}  // namespace

CounterexampleBuild thm6_measure(const MeasureFunction& gauge,
                                 const std::map<int, int>& N, int circle_count,
                                 std::size_t budget) {
  return build_blocks(gauge, N, circle_count, budget, 6);
}

CounterexampleBuild thm7_measure(const MeasureFunction& gauge,
                                 const std::map<int, int>& N, int circle_count,
                                 std::size_t budget) {
  return build_blocks(gauge, N, circle_count, budget, 7);
}

long CalderonBuild::covering_block(std::span<const double> a) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (dist(blocks[b].center, a) < blocks[b].radius) return static_cast<long>(b);
  return -1;
}

CalderonBuild calderon_grid_measure(int n_max, int circle_count,
                                    std::size_t budget) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (n_max > 3)
    fail(ErrorCode::BudgetExceeded,
         "(2^" + std::to_string(n_max * n_max) +
             "-1)^2 vertices exceed any desk budget; n <= 3");
  CalderonBuild build;
  build.n_max = n_max;
  build.circle_count = circle_count;

  std::size_t atoms = 0;
  for (int n = 1; n <= n_max; ++n) {
    const long side = (1L << (n * n)) - 1;
    atoms += static_cast<std::size_t>(side) * side *
             static_cast<std::size_t>(circle_count + 1);
  }
  if (atoms > budget)
    fail(ErrorCode::BudgetExceeded, "calderon grid exceeds the atom budget");

  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(2 * atoms);
  weights.reserve(atoms);
  for (int n = 1; n <= n_max; ++n) {
    const long cells = 1L << (n * n);  // 2^(n^2) per axis
    const long side = cells - 1;
    const double step = 1.0 / static_cast<double>(cells);
    const double rho = 1.0 / (n * static_cast<double>(cells));
    const double nv = static_cast<double>(side) * static_cast<double>(side);
    const double w = 1.0 / (std::pow(n, 1.5) * nv);
    for (long i = 1; i <= side; ++i)
      for (long j = 1; j <= side; ++j) {
        const Point p{i * step, j * step};
        const double cw = -w / circle_count;
        double circle_sum = 0.0;
        for (int m = 0; m < circle_count; ++m) {
          const double a = 2.0 * kPi * m / circle_count;
          coords.push_back(p[0] + rho * std::cos(a));
          coords.push_back(p[1] + rho * std::sin(a));
          weights.push_back(cw);
          circle_sum += cw;
        }
        coords.push_back(p[0]);
        coords.push_back(p[1]);
        weights.push_back(-circle_sum);
        build.blocks.push_back(BlockInfo{p, rho, -circle_sum, n});
      }
  }
  double finest = 2.0 * kPi / (n_max * std::pow(2.0, n_max * n_max)) /
                  circle_count;
  build.measure =
      SignedAtomicMeasure(2, finest, std::move(coords), std::move(weights));
  return build;
}

void save_bookkeeping(const CounterexampleBuild& build,
                      const std::string& path) {
  nlohmann::json doc;
  doc["variant"] = build.variant;
  doc["gauge"] = build.gauge.name();
  doc["circle_count"] = build.circle_count;
  nlohmann::json nn;
  for (const auto& [n, Nn] : build.N) nn[std::to_string(n)] = Nn;
  doc["N"] = std::move(nn);
  doc["sigma"] = build.scales.sigma;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : build.blocks) {
    blocks.push_back({{"level", b.level},
                      {"x", b.center[0]},
                      {"y", b.center[1]},
                      {"radius", b.radius},
                      {"weight", b.weight}});
  }
  doc["blocks"] = std::move(blocks);
  write_text_file(path, doc.dump());
}

}  // namespace potlab
