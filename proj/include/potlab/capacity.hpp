#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "potlab/kernel.hpp"
#include "potlab/measure.hpp"

namespace potlab {

/// Discrete energy: sum_{i != j} w_i w_j k(x_i - x_j) plus, when the
/// resolution is positive, the collocation diagonal sum w_i^2 k_self.
/// For resolution 0 the diagonal is omitted and the flag marks the value
/// as off-diagonal energy.
struct EnergyValue {
  double value = 0.0;
  bool off_diagonal_only = false;
};

EnergyValue energy(const SignedAtomicMeasure& mu, const KernelSpec& k);

/// Dense symmetric kernel matrix with k_self(resolution) on the diagonal.
/// Intended for moderate N; the solver itself works matrix-free.
std::vector<double> energy_matrix(std::span<const double> coords, int dim,
                                  const KernelSpec& k, double resolution);

/// Wiener-domain rule: every planar capacity computation requires all
/// points inside the closed disc of radius 1/2 about the origin.
void require_log_domain(std::span<const double> coords, int dim);

struct EquilibriumOptions {
  double tol = 1e-8;     // relative energy change per productive step
  long max_iter = -1;    // default 50 * N
  /// per-point self-energy override (size N); empty selects k_self(resolution)
  std::vector<double> self_values;
};

struct EquilibriumResult {
  std::vector<double> weights;  // on the simplex
  double energy = 0.0;
  double capacity = 0.0;  // 1 / energy
  long iterations = 0;
  double residual = 0.0;  // last relative energy change
  bool converged = false;
};

/// Minimal-energy probability weights on a point cloud via away-step
/// conditional-gradient descent from the uniform start; deterministic.
EquilibriumResult equilibrium_solve(std::span<const double> coords, int dim,
                                    const KernelSpec& k, double resolution,
                                    const EquilibriumOptions& opts = {});

/// Axis-aligned lattice cells (index i covers [i h, (i+1) h) per axis).
struct CellCover {
  int dim = 2;
  double h = 0.0;
  std::vector<std::array<int64_t, 3>> cells;  // unique, sorted

  std::size_t size() const { return cells.size(); }
  std::vector<double> centers() const;

  static CellCover from_points(int dim, double h, std::span<const double> pts);
  /// Cells whose centers lie in the open ball B(center, r).
  static CellCover ball(int dim, double h, std::span<const double> center,
                        double r);
  /// Cells whose centers lie in the axis-aligned box [lo, hi).
  static CellCover box(int dim, double h, std::span<const double> lo,
                       std::span<const double> hi);
  /// Merge lattice cells into blocks of `factor` cells per axis.
  CellCover coarsened(int factor) const;
};

double capacity_of_cover(const CellCover& cover, const KernelSpec& k,
                         const EquilibriumOptions& opts = {});

/// Closed-form ball capacity: r^(d-2) for d >= 3 (c_d = 1 under the kernel
/// normalization 1/|x|^(d-2)), 1/log(1/r) in the plane.
double ball_capacity(const KernelSpec& k, double r);

struct SuperadditivityReport {
  double union_capacity = 0.0;
  double sum_capacity = 0.0;
  double ratio = 0.0;
  bool hypothesis_holds = false;  // sigma <= delta^N
  double sigma = 0.0;             // max radius
  double delta = 0.0;             // min gap between discs
};

/// Cap(union B_j) / sum Cap(B_j) for pairwise disjoint planar discs, both
/// sides via cell covers at h_j = r_j / cells_per_radius.
SuperadditivityReport superadditivity_check(
    const std::vector<std::pair<Point, double>>& discs,
    int cells_per_radius = 16, const EquilibriumOptions& opts = {});

struct WeakCapOptions {
  std::size_t max_cells = 2500;  // covers above this are coarsened
  int max_rungs = 64;
  EquilibriumOptions solve;
};

struct WeakCapResult {
  double value = 0.0;
  double argmax_t = 0.0;
  int rungs = 0;
  int coarsen_factor = 1;  // largest factor used across rungs
};

/// sup over a t-ladder of t * Cap({samples with value > t}) where the
/// super-level set is covered by its sample cells. The ladder is geometric
/// (ratio 2) across the positive value range, topped up with rungs just
/// below the largest distinct values and midpoints when few rungs result.
/// Oversized covers are coarsened (cell size multiplied, recorded in the
/// result); each rung's capacity is clamped by the closed-form capacity of
/// a ball circumscribing the cover.
WeakCapResult weak_cap_norm(std::span<const double> sample_points,
                            std::span<const double> values, int dim, double h,
                            const KernelSpec& k, const WeakCapOptions& opts = {});

}  // namespace potlab
