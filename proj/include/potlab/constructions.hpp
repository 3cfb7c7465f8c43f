#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "potlab/cantor.hpp"
#include "potlab/measure.hpp"
#include "potlab/measure_function.hpp"

namespace potlab {

/// Equidistributed atoms of equal weight mass/count on a sphere: exact
/// equal angles for d = 2, a Fibonacci lattice for d = 3. The resolution is
/// the mesh size (max nearest-neighbor distance estimate).
SignedAtomicMeasure sphere_measure(const Point& center, double radius,
                                   double mass, int count, int dim);

/// Uniformly filled ball (d = 3) on a cubic lattice of step `spacing`,
/// total weight `mass`; resolution is the cell diagonal.
SignedAtomicMeasure ball_measure(const Point& center, double radius,
                                 double mass, double spacing);

/// Zero-mass block: a unit at p compensated by M atoms of equal negative
/// weight on the circle |z - p| = rho. Its log potential approximates
/// log(rho/|z-p|) inside the disc and 0 outside (midpoint-rule error
/// O(1/M^2) away from the circle itself). The delta weight is set to the
/// exact negative of the circle sum so the total is 0 bit-for-bit.
SignedAtomicMeasure block_measure(const Point& p, double rho, int circle_count,
                                  double unit_weight = 1.0);

struct BlockInfo {
  Point center;
  double radius = 0.0;
  double weight = 0.0;  // delta weight; the circle carries the negative
  int level = 0;        // n
};

/// Block family built over a Cantor scaffold: for each level n, one chosen
/// descendant square per host square carries a zero-mass block.
struct CounterexampleBuild {
  SignedAtomicMeasure measure;  // nu = sum of all blocks
  std::vector<BlockInfo> blocks;
  CantorScales scales;
  std::map<int, int> N;  // level n -> N_n
  int variant = 6;       // 6: hosts at N_n; 7: hosts at 2 N_n
  MeasureFunction gauge = MeasureFunction::power(1.0);
  int circle_count = 64;

  int host_generation(int n) const;   // N_n or 2 N_n
  int block_generation(int n) const;  // host + n
  double sigma(int k) const { return scales.sigma[k]; }
  /// Probe radius r_k = sqrt(2) sigma_{N_k} (both variants).
  double probe_radius(int k) const;
  bool has_level(int n) const { return N.count(n) > 0; }
  /// Index of a covering exceptional ball, or -1 when the point is clear.
  long covering_block(std::span<const double> a) const;
};

/// Blocks of weight 1/(n^2 4^{N_n}) at the lexicographically-first
/// generation-(N_n+n) square center inside each generation-N_n square,
/// radius sqrt(2) sigma_{N_n+n}.
CounterexampleBuild thm6_measure(const MeasureFunction& gauge,
                                 const std::map<int, int>& N, int circle_count,
                                 std::size_t budget = kAtomBudget);

/// Same with hosts at generation 2 N_n and weights 1/(n^2 4^{2 N_n}).
CounterexampleBuild thm7_measure(const MeasureFunction& gauge,
                                 const std::map<int, int>& N, int circle_count,
                                 std::size_t budget = kAtomBudget);

/// Dyadic-grid block family on the unit square: for each level n, blocks of
/// radius 1/(n 2^{n^2}) at all (2^{n^2}-1)^2 interior lattice vertices, each
/// of weight 1/(n^{3/2} N_n). Practical levels stop at n = 3.
struct CalderonBuild {
  SignedAtomicMeasure measure;
  std::vector<BlockInfo> blocks;
  int n_max = 2;
  int circle_count = 64;
  long covering_block(std::span<const double> a) const;
};

CalderonBuild calderon_grid_measure(int n_max, int circle_count,
                                    std::size_t budget = kAtomBudget);

/// Sidecar bookkeeping document (scales, block centers/radii/levels).
void save_bookkeeping(const CounterexampleBuild& build, const std::string& path);

}  // namespace potlab
