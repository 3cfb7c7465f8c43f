#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "potlab/kernel.hpp"
#include "potlab/ladder.hpp"
#include "potlab/measure.hpp"

namespace potlab {

/// Potential of mu at x by direct summation (compensated, fixed atom order).
/// Errors with EvaluationAtAtom when x sits closer than half the resolution
/// to an atom (or exactly on one for resolution-0 measures).
double potential(const SignedAtomicMeasure& mu, const KernelSpec& k,
                 std::span<const double> x);

/// Gradient of the potential: -(d-2) sum w (x-y)/|x-y|^d for Riesz,
/// -sum w (x-y)/|x-y|^2 for the log kernel.
std::vector<double> gradient(const SignedAtomicMeasure& mu, const KernelSpec& k,
                             std::span<const double> x);

/// Truncated vector transform R_eps(mu)(a) = sum over |y - a| > eps of
/// w (a-y)/|a-y|^d. Atoms within eps are excluded by definition; no error.
std::vector<double> truncated_transform(const SignedAtomicMeasure& mu,
                                        std::span<const double> a, double eps);

/// R_eps for a strictly decreasing eps ladder in one pass over the atoms.
std::vector<std::vector<double>> transform_ladder(const SignedAtomicMeasure& mu,
                                                  std::span<const double> a,
                                                  std::span<const double> epsilons);

/// Principal-value diagnosis: R_eps per rung, oscillation over the last
/// `window` rungs, hysteresis verdict (see classify_convergence). The ladder
/// must bottom out at or above the resolution of mu.
LadderReport pv_classify(const SignedAtomicMeasure& mu, std::span<const double> a,
                         const Ladder& ladder, double tol = 0.0, int window = 5);

/// eps-truncated second-derivative kernel sums (local delta terms are NOT
/// included here; they belong to the diagnostics layer):
///   d >= 3, i != j:  d(d-2) x_i x_j / |x|^(d+2)
///   d >= 3, i == j:  -(d-2) (|x|^2 - d x_i^2) / |x|^(d+2)
///   d == 2:          (x^2-y^2)/|z|^4, (y^2-x^2)/|z|^4, 2xy/|z|^4
/// with x = a - y per atom.
double second_derivative_truncated(const SignedAtomicMeasure& mu,
                                   std::span<const double> a, int i, int j,
                                   double eps);

/// Menger-curvature energy: sum over unordered atom triples of
/// c(x,y,z)^2 w_x w_y w_z, c = 1/circumradius (0 for collinear triples).
/// Planar measures only; atom counts beyond cap_n error out (cubic cost).
double menger_energy(const SignedAtomicMeasure& mu, std::size_t cap_n = 4096);

/// Potentials at many points; parallel over points, per-point order fixed.
/// Points closer than exclude_radius to an atom get NaN instead of a value
/// (callers drop them); exclude_radius < 0 applies the EvaluationAtAtom rule.
std::vector<double> potential_many(const SignedAtomicMeasure& mu,
                                   const KernelSpec& k,
                                   std::span<const double> points,
                                   std::size_t npoints,
                                   double exclude_radius = -1.0);

}  // namespace potlab
