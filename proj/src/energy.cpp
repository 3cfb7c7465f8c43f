#include "potlab/capacity.hpp"

#include <cmath>

#include "potlab/error.hpp"
#include "potlab/io.hpp"
#include "potlab/parallel.hpp"

namespace potlab {

void require_log_domain(std::span<const double> coords, int dim) {
  if (dim != 2) return;
  for (std::size_t i = 0; i + 1 < coords.size(); i += 2) {
    const double r2 = coords[i] * coords[i] + coords[i + 1] * coords[i + 1];
    if (r2 > 0.25 * (1.0 + 1e-12))
      fail(ErrorCode::LogDomainViolation,
           "planar point (" + format_double(coords[i]) + ", " +
               format_double(coords[i + 1]) +
               ") lies outside the radius-1/2 disc");
  }
}

EnergyValue energy(const SignedAtomicMeasure& mu, const KernelSpec& k) {
  if (mu.dim() != k.dim)
    fail(ErrorCode::DimensionMismatch, "kernel/measure dimension mismatch");
  if (k.is_log()) require_log_domain(mu.coords(), mu.dim());
  const std::size_t n = mu.size();
  const int d = mu.dim();
  const double* c = mu.coords().data();
  const double* w = mu.weights().data();

  std::vector<double> row(n, 0.0);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double s = 0.0, comp = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double r2 = 0.0;
        for (int q = 0; q < d; ++q) {
          const double dq = c[i * d + q] - c[j * d + q];
          r2 += dq * dq;
        }
        const double y = w[j] * k.value_sq(r2) - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
      }
      row[i] = w[i] * s;
    }
  });
  double total = 0.0, comp = 0.0;
  for (double v : row) {
    const double y = v - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }

  EnergyValue out;
  if (mu.resolution() > 0) {
    const double self = k.self_value(mu.resolution());
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag += w[i] * w[i] * self;
    out.value = total + diag;
    out.off_diagonal_only = false;
  } else {
    out.value = total;
    out.off_diagonal_only = true;
  }
  return out;
}

std::vector<double> energy_matrix(std::span<const double> coords, int dim,
                                  const KernelSpec& k, double resolution) {
  if (dim != k.dim)
    fail(ErrorCode::DimensionMismatch, "kernel dimension mismatch");
  if (k.is_log()) require_log_domain(coords, dim);
  const std::size_t n = coords.size() / static_cast<std::size_t>(dim);
  const double self = resolution > 0 ? k.self_value(resolution) : 0.0;
  std::vector<double> m(n * n, 0.0);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          m[i * n + i] = self;
          continue;
        }
        double r2 = 0.0;
        for (int q = 0; q < dim; ++q) {
          const double dq = coords[i * dim + q] - coords[j * dim + q];
          r2 += dq * dq;
        }
        m[i * n + j] = k.value_sq(r2);
      }
    }
  });
  return m;
}

double ball_capacity(const KernelSpec& k, double r) {
  if (!(r > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  if (k.is_log()) {
    if (r >= 1.0)
      fail(ErrorCode::LogDomainViolation, "planar ball capacity needs r < 1");
    return 1.0 / std::log(1.0 / r);
  }
  return std::pow(r, k.dim - 2);
}

}  // namespace potlab
