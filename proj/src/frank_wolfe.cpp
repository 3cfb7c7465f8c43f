#include "potlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "potlab/error.hpp"
#include "potlab/parallel.hpp"

namespace potlab {

namespace {

// One kernel-matrix column, evaluated on the fly; the solver never stores
// the N x N matrix. O(N) per iteration keeps large covers tractable.
void kernel_column(std::span<const double> coords, int dim, const KernelSpec& k,
                   const std::vector<double>& self, std::size_t col,
                   std::vector<double>& out) {
  const std::size_t n = out.size();
  const double* c = coords.data();
  const double* pc = c + col * dim;
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (int q = 0; q < dim; ++q) {
      const double dq = c[i * dim + q] - pc[q];
      r2 += dq * dq;
    }
    out[i] = (i == col) ? self[i] : k.value_sq(r2);
  }
}

}  // namespace

EquilibriumResult equilibrium_solve(std::span<const double> coords, int dim,
                                    const KernelSpec& k, double resolution,
                                    const EquilibriumOptions& opts) {
  if (dim != k.dim)
    fail(ErrorCode::DimensionMismatch, "kernel dimension mismatch");
  const std::size_t n = coords.size() / static_cast<std::size_t>(dim);
  if (n == 0) fail(ErrorCode::EmptyInput, "empty point cloud");
  if (k.is_log()) require_log_domain(coords, dim);

  std::vector<double> self = opts.self_values;
  if (self.empty()) {
    const double s = resolution > 0 ? k.self_value(resolution) : 0.0;
    self.assign(n, s);
  } else if (self.size() != n) {
    fail(ErrorCode::InvalidArgument, "self_values size mismatch");
  }

  const long max_iter =
      opts.max_iter > 0 ? opts.max_iter : static_cast<long>(50 * n);

  EquilibriumResult res;
  res.weights.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double>& w = res.weights;

  // Kw maintained incrementally, refreshed periodically against drift
  std::vector<double> kw(n, 0.0);
  std::vector<double> col(n, 0.0);
  const auto refresh = [&] {
    const double* c = coords.data();
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        double s = 0.0, comp = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          double v;
          if (i == j) {
            v = self[i] * w[j];
          } else {
            double r2 = 0.0;
            for (int q = 0; q < dim; ++q) {
              const double dq = c[i * dim + q] - c[j * dim + q];
              r2 += dq * dq;
            }
            v = k.value_sq(r2) * w[j];
          }
          const double y = v - comp;
          const double t = s + y;
          comp = (t - s) - y;
          s = t;
        }
        kw[i] = s;
      }
    });
  };
  refresh();

  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) energy += w[i] * kw[i];
  const long refresh_every = std::max<long>(8192, static_cast<long>(n));

  double residual = 1.0;
  bool converged = false;
  long it = 0;
  for (; it < max_iter; ++it) {
    std::size_t s_idx = 0, v_idx = n;
    double g_min = kw[0], g_max = -std::numeric_limits<double>::infinity();
    double gw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (kw[i] < g_min) {
        g_min = kw[i];
        s_idx = i;
      }
      if (w[i] > 0.0 && kw[i] > g_max) {
        g_max = kw[i];
        v_idx = i;
      }
      gw += w[i] * kw[i];
    }
    const double gap_fw = gw - g_min;    // -<e_s - w, Kw>
    const double gap_away = g_max - gw;  // -<w - e_v, Kw>
    if (gap_fw <= 0 && gap_away <= 0) {  // stationary to rounding
      converged = true;
      residual = 0.0;
      break;
    }

    // E(w + g d) = E + 2 g <d, Kw> + g^2 d^T K d with <d, Kw> = -gap
    bool drop = false;
    double e_next;
    if (gap_fw >= gap_away) {  // toward vertex s
      kernel_column(coords, dim, k, self, s_idx, col);
      double ks_w = 0.0;
      for (std::size_t i = 0; i < n; ++i) ks_w += col[i] * w[i];
      const double dkd = self[s_idx] - 2.0 * ks_w + energy;
      double gamma = dkd > 0 ? std::min(1.0, gap_fw / dkd) : 1.0;
      e_next = energy - 2.0 * gamma * gap_fw + gamma * gamma * dkd;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] *= (1.0 - gamma);
        kw[i] = (1.0 - gamma) * kw[i] + gamma * col[i];
      }
      w[s_idx] += gamma;
    } else {  // away from vertex v
      kernel_column(coords, dim, k, self, v_idx, col);
      double kv_w = 0.0;
      for (std::size_t i = 0; i < n; ++i) kv_w += col[i] * w[i];
      const double dkd = energy - 2.0 * kv_w + self[v_idx];
      const double gamma_max =
          w[v_idx] < 1.0 ? w[v_idx] / (1.0 - w[v_idx]) : 1.0;
      double gamma = dkd > 0 ? std::min(gamma_max, gap_away / dkd) : gamma_max;
      drop = (gamma >= gamma_max);
      if (drop) gamma = gamma_max;
      e_next = energy - 2.0 * gamma * gap_away + gamma * gamma * dkd;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] *= (1.0 + gamma);
        kw[i] = (1.0 + gamma) * kw[i] - gamma * col[i];
      }
      // the loop scaled w[v] by (1+gamma) already; complete (1+g) w_v - g
      w[v_idx] = drop ? 0.0 : w[v_idx] - gamma;
    }
    residual = std::abs(energy - e_next) / std::max(std::abs(e_next), 1e-300);
    energy = e_next;

    if ((it + 1) % refresh_every == 0) {
      refresh();
      energy = 0.0;
      for (std::size_t i = 0; i < n; ++i) energy += w[i] * kw[i];
    }
    // drop steps say nothing about stationarity
    if (!drop && residual < opts.tol) {
      converged = true;
      ++it;
      break;
    }
  }

  // keep the simplex exact against rounding drift
  double sum = 0.0;
  for (double wi : w) sum += wi;
  if (sum > 0)
    for (double& wi : w) wi /= sum;

  refresh();
  energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) energy += w[i] * kw[i];

  res.energy = energy;
  res.capacity = energy != 0.0 ? 1.0 / energy : 0.0;
  res.iterations = it;
  res.residual = residual;
  res.converged = converged;
  return res;
}

}  // namespace potlab
