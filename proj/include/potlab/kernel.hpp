#pragma once

#include <cmath>

#include "potlab/error.hpp"

namespace potlab {

/// Riesz kernel 1/|x|^(d-2) for d >= 3, logarithmic kernel log(1/|z|) for
/// d = 2. Both are the (positive multiple of the) fundamental solution of
/// the Laplacian used throughout.
struct KernelSpec {
  int dim = 3;

  static KernelSpec riesz(int dim) {
    if (dim < 3) fail(ErrorCode::InvalidArgument, "Riesz kernel needs d >= 3");
    return KernelSpec{dim};
  }
  static KernelSpec log2d() { return KernelSpec{2}; }
  /// the kernel matching the measure's ambient dimension
  static KernelSpec for_dim(int dim) {
    if (dim < 2) fail(ErrorCode::InvalidArgument, "kernels need d >= 2");
    return KernelSpec{dim};
  }

  bool is_log() const { return dim == 2; }

  double value(double r) const {
    if (dim == 2) return -std::log(r);
    if (dim == 3) return 1.0 / r;
    return std::pow(r, 2 - dim);
  }
  double value_sq(double r2) const {
    if (dim == 2) return -0.5 * std::log(r2);
    if (dim == 3) return 1.0 / std::sqrt(r2);
    return std::pow(r2, 0.5 * (2 - dim));
  }

  /// Collocation self-energy of a cell of diameter h: kernel at c_self * h
  /// with c_self = 0.5 (fixed).
  double self_value(double h) const { return value(0.5 * h); }
};

}  // namespace potlab
