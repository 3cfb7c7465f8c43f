#include "potlab/opnorm.hpp"

#include <cmath>
#include <vector>

#include "potlab/error.hpp"
#include "potlab/parallel.hpp"
#include "potlab/rng.hpp"

namespace potlab {

namespace {

// y = M v with M_{(i,c),j} = sqrt(w_i) k_c(x_i - x_j) sqrt(w_j) [dist > eps],
// k(x) = x/|x|^d. Row-parallel, matrix-free.
void apply_forward(const SignedAtomicMeasure& mu, double eps2,
                   const std::vector<double>& sw, const std::vector<double>& v,
                   std::vector<double>& y) {
  const std::size_t n = mu.size();
  const int d = mu.dim();
  const double* c = mu.coords().data();
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    std::vector<double> acc(d);
    for (std::size_t i = b; i < e; ++i) {
      for (int q = 0; q < d; ++q) acc[q] = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double r2 = 0.0;
        for (int q = 0; q < d; ++q) {
          const double dq = c[i * d + q] - c[j * d + q];
          r2 += dq * dq;
        }
        if (r2 <= eps2) continue;
        const double scale =
            (d == 2 ? 1.0 / r2 : std::pow(r2, -0.5 * d)) * sw[j] * v[j];
        for (int q = 0; q < d; ++q)
          acc[q] += (c[i * d + q] - c[j * d + q]) * scale;
      }
      for (int q = 0; q < d; ++q) y[i * d + q] = sw[i] * acc[q];
    }
  });
}

// v' = M^T y (adjoint of the forward map; the kernel is antisymmetric)
void apply_adjoint(const SignedAtomicMeasure& mu, double eps2,
                   const std::vector<double>& sw, const std::vector<double>& y,
                   std::vector<double>& v) {
  const std::size_t n = mu.size();
  const int d = mu.dim();
  const double* c = mu.coords().data();
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        double r2 = 0.0;
        for (int q = 0; q < d; ++q) {
          const double dq = c[i * d + q] - c[j * d + q];
          r2 += dq * dq;
        }
        if (r2 <= eps2) continue;
        const double scale = (d == 2 ? 1.0 / r2 : std::pow(r2, -0.5 * d)) * sw[i];
        double dot = 0.0;
        for (int q = 0; q < d; ++q)
          dot += (c[i * d + q] - c[j * d + q]) * y[i * d + q];
        acc += scale * dot;
      }
      v[j] = sw[j] * acc;
    }
  });
}

}  // namespace

OperatorNormResult operator_norm_estimate(const SignedAtomicMeasure& mu,
                                          double eps,
                                          const OperatorNormOptions& opts) {
  if (!mu.nonnegative())
    fail(ErrorCode::InvalidArgument, "operator norm requires a nonnegative measure");
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const std::size_t n = mu.size();
  if (n > opts.cap_n)
    fail(ErrorCode::TooManyAtoms,
         std::to_string(n) + " atoms exceed the quadratic-cost cap " +
             std::to_string(opts.cap_n));
  OperatorNormResult res;
  if (n < 2) return res;  // no off-diagonal interactions

  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(mu.weight(i));

  Rng rng(opts.seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  double norm_v = 0.0;
  for (double x : v) norm_v += x * x;
  norm_v = std::sqrt(norm_v);
  for (double& x : v) x /= norm_v;

  const int d = mu.dim();
  std::vector<double> y(n * static_cast<std::size_t>(d));
  std::vector<double> v2(n);
  const double eps2 = eps * eps;

  double sigma = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    apply_forward(mu, eps2, sw, v, y);
    double norm_y2 = 0.0;
    for (double x : y) norm_y2 += x * x;
    const double sigma_next = std::sqrt(norm_y2);  // ||M v||, v normalized
    apply_adjoint(mu, eps2, sw, y, v2);
    double norm2 = 0.0;
    for (double x : v2) norm2 += x * x;
    const double nv = std::sqrt(norm2);
    if (nv == 0.0) {
      res.norm = 0.0;
      res.iterations = it;
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = v2[i] / nv;
    res.iterations = it;
    if (it > 1 && std::abs(sigma_next - sigma) <= opts.tol * sigma_next) {
      res.norm = sigma_next;
      res.converged = true;
      return res;
    }
    sigma = sigma_next;
  }
  res.norm = sigma;  // flagged: best available estimate
  res.converged = false;
  return res;
}

}  // namespace potlab
