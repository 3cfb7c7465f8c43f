#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "potlab/ladder.hpp"
#include "potlab/measure_function.hpp"

namespace potlab {

using Point = std::vector<double>;

/// Finite signed atomic measure in R^d.
///
/// Atoms are stored flat (coords has dim * size entries) in a canonical
/// lexicographic order; duplicate locations are merged at construction by
/// summing weights. `resolution` records the cell diameter a discretized
/// continuous measure stands for (0 for genuinely atomic data); diagnostics
/// refuse to report at scales finer than it.
class SignedAtomicMeasure {
 public:
  SignedAtomicMeasure() = default;
  SignedAtomicMeasure(int dim, double resolution, std::vector<double> coords,
                      std::vector<double> weights);

  static SignedAtomicMeasure from_atoms(
      int dim, double resolution,
      const std::vector<std::pair<Point, double>>& atoms);

  int dim() const { return dim_; }
  double resolution() const { return resolution_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

  std::span<const double> location(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& weights() const { return weights_; }

  bool nonnegative() const;
  /// Distance from x to the nearest atom (infinity for the empty measure).
  double min_distance(std::span<const double> x) const;

  SignedAtomicMeasure scaled_weights(double c) const;
  SignedAtomicMeasure translated(std::span<const double> shift) const;
  /// Pushforward under x -> lambda x; resolution scales along.
  SignedAtomicMeasure scaled_space(double lambda) const;
  /// Reflection through the point c.
  SignedAtomicMeasure reflected(std::span<const double> c) const;

  static SignedAtomicMeasure merged(const SignedAtomicMeasure& a,
                                    const SignedAtomicMeasure& b);

 private:
  int dim_ = 0;
  double resolution_ = 0.0;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

double total_variation(const SignedAtomicMeasure& mu);

/// Mass of the open ball B(a, r): atoms at distance exactly r are excluded.
double ball_mass(const SignedAtomicMeasure& mu, std::span<const double> a,
                 double r);

/// Ball masses for a strictly decreasing radius ladder, one pass over atoms.
std::vector<double> ball_mass_ladder(const SignedAtomicMeasure& mu,
                                     std::span<const double> a,
                                     std::span<const double> radii);

/// Ratios ball_mass(B(a, r)) / h(r) over the ladder with a trend verdict.
/// Every rung must stay above the measure's resolution; the error names the
/// offending rung otherwise.
LadderReport density_profile(const SignedAtomicMeasure& mu,
                             std::span<const double> a,
                             const MeasureFunction& h, const Ladder& ladder);

void save_measure(const SignedAtomicMeasure& mu, const std::string& path);
SignedAtomicMeasure load_measure(const std::string& path);

// geometry helpers over flat coordinate spans
double dist2(std::span<const double> a, std::span<const double> b);
double dist(std::span<const double> a, std::span<const double> b);

}  // namespace potlab
