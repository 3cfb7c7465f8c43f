#pragma once

#include <cstdint>
#include <cstddef>

#include "potlab/measure.hpp"

namespace potlab {

struct OperatorNormOptions {
  uint64_t seed = 0x9e3779b97f4a7c15ull;
  double tol = 1e-6;     // relative change of the estimate between iterations
  int max_iter = 500;
  std::size_t cap_n = 1u << 15;  // quadratic-cost guard
};

struct OperatorNormResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;  // flagged estimate when false
};

/// Largest singular value of f |-> R_eps(f mu) on the weighted sequence
/// space with inner product sum f_i g_i w_i, by power iteration on the
/// normal operator (fixed seed, matrix-free). mu must be nonnegative.
OperatorNormResult operator_norm_estimate(const SignedAtomicMeasure& mu,
                                          double eps,
                                          const OperatorNormOptions& opts = {});

}  // namespace potlab
