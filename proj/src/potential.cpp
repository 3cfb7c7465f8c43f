#include "potlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "potlab/error.hpp"
#include "potlab/io.hpp"
#include "potlab/parallel.hpp"

namespace potlab {

namespace {

void check_kernel_dim(const SignedAtomicMeasure& mu, const KernelSpec& k) {
  if (mu.dim() != k.dim)
    fail(ErrorCode::DimensionMismatch, "kernel/measure dimension mismatch");
}

void check_point_dim(const SignedAtomicMeasure& mu, std::span<const double> x) {
  if (static_cast<int>(x.size()) != mu.dim())
    fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
}

// evaluability rule: resolution-0 measures only forbid exact coincidence;
// discretized ones forbid anything closer than half the resolution (with a
// hair of slack so corner points at exactly res/2 stay evaluable)
double exclusion_radius2(const SignedAtomicMeasure& mu) {
  const double r = 0.499 * mu.resolution();
  return r * r;
}

struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double y) {
    y -= c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

double potential_at(const SignedAtomicMeasure& mu, const KernelSpec& k,
                    const double* x, double excl2, bool* dropped) {
  const int d = mu.dim();
  const double* coords = mu.coords().data();
  const double* w = mu.weights().data();
  Kahan acc;
  if (d == 2) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double dx = x[0] - coords[2 * i], dy = x[1] - coords[2 * i + 1];
      const double r2 = dx * dx + dy * dy;
      if (r2 <= excl2) {
        *dropped = true;
        return std::numeric_limits<double>::quiet_NaN();
      }
      acc.add(w[i] * (-0.5 * std::log(r2)));
    }
  } else if (d == 3) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double dx = x[0] - coords[3 * i], dy = x[1] - coords[3 * i + 1],
                   dz = x[2] - coords[3 * i + 2];
      const double r2 = dx * dx + dy * dy + dz * dz;
      if (r2 <= excl2) {
        *dropped = true;
        return std::numeric_limits<double>::quiet_NaN();
      }
      acc.add(w[i] / std::sqrt(r2));
    }
  } else {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double dc = x[c] - coords[i * d + c];
        r2 += dc * dc;
      }
      if (r2 <= excl2) {
        *dropped = true;
        return std::numeric_limits<double>::quiet_NaN();
      }
      acc.add(w[i] * k.value_sq(r2));
    }
  }
  return acc.s;
}

}  // namespace

double potential(const SignedAtomicMeasure& mu, const KernelSpec& k,
                 std::span<const double> x) {
  check_kernel_dim(mu, k);
  check_point_dim(mu, x);
  bool dropped = false;
  const double v = potential_at(mu, k, x.data(), exclusion_radius2(mu), &dropped);
  if (dropped)
    fail(ErrorCode::EvaluationAtAtom,
         "evaluation point within half a resolution of an atom");
  return v;
}

std::vector<double> potential_many(const SignedAtomicMeasure& mu,
                                   const KernelSpec& k,
                                   std::span<const double> points,
                                   std::size_t npoints, double exclude_radius) {
  check_kernel_dim(mu, k);
  const int d = mu.dim();
  const double excl2 = exclude_radius < 0
                           ? exclusion_radius2(mu)
                           : exclude_radius * exclude_radius;
  std::vector<double> out(npoints);
  parallel_for(npoints, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      bool dropped = false;
      out[p] = potential_at(mu, k, points.data() + p * d, excl2, &dropped);
    }
  });
  return out;
}

std::vector<double> gradient(const SignedAtomicMeasure& mu, const KernelSpec& k,
                             std::span<const double> x) {
  check_kernel_dim(mu, k);
  check_point_dim(mu, x);
  const int d = mu.dim();
  const double excl2 = exclusion_radius2(mu);
  const double factor = (d == 2) ? 1.0 : static_cast<double>(d - 2);
  std::vector<Kahan> acc(d);
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto y = mu.location(i);
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
      diff[c] = x[c] - y[c];
      r2 += diff[c] * diff[c];
    }
    if (r2 <= excl2)
      fail(ErrorCode::EvaluationAtAtom,
           "gradient evaluation within half a resolution of an atom");
    // (x-y)/|x-y|^d
    const double scale = mu.weight(i) * std::pow(r2, -0.5 * d);
    for (int c = 0; c < d; ++c) acc[c].add(scale * diff[c]);
  }
  std::vector<double> g(d);
  for (int c = 0; c < d; ++c) g[c] = -factor * acc[c].s;
  return g;
}

std::vector<double> truncated_transform(const SignedAtomicMeasure& mu,
                                        std::span<const double> a, double eps) {
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const std::vector<double> e{eps};
  return transform_ladder(mu, a, e).front();
}

std::vector<std::vector<double>> transform_ladder(
    const SignedAtomicMeasure& mu, std::span<const double> a,
    std::span<const double> epsilons) {
  check_point_dim(mu, a);
  const int d = mu.dim();
  const std::size_t m = epsilons.size();
  for (std::size_t j = 0; j + 1 < m; ++j)
    if (!(epsilons[j] > epsilons[j + 1]))
      fail(ErrorCode::InvalidArgument, "eps ladder must be strictly decreasing");

  // bucket by the first rung whose truncation admits the atom (1/r^d decay
  // in |a-y|, kernel (a-y)/|a-y|^d); prefix sums then give every rung
  std::vector<std::vector<Kahan>> bucket(m, std::vector<Kahan>(d));
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto y = mu.location(i);
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
      diff[c] = a[c] - y[c];
      r2 += diff[c] * diff[c];
    }
    // first rung j with eps_j < dist (included from j on); eps decreasing
    const double dd = std::sqrt(r2);
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (epsilons[mid] < dd)
        hi = mid;
      else
        lo = mid + 1;
    }
    if (lo == m) continue;  // inside every truncation
    const double scale = mu.weight(i) * std::pow(r2, -0.5 * d);
    for (int c = 0; c < d; ++c) bucket[lo][c].add(scale * diff[c]);
  }
  std::vector<std::vector<double>> out(m, std::vector<double>(d, 0.0));
  std::vector<double> acc(d, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (int c = 0; c < d; ++c) {
      acc[c] += bucket[j][c].s;
      out[j][c] = acc[c];
    }
  }
  return out;
}

LadderReport pv_classify(const SignedAtomicMeasure& mu,
                         std::span<const double> a, const Ladder& ladder,
                         double tol, int window) {
  for (std::size_t j = 0; j < ladder.scales.size(); ++j)
    if (ladder.scales[j] < mu.resolution())
      fail(ErrorCode::LadderBelowResolution,
           "rung " + std::to_string(j) + " (eps=" +
               format_double(ladder.scales[j]) + ") is below the resolution " +
               format_double(mu.resolution()));
  LadderReport rep;
  rep.scales = ladder.scales;
  rep.values = transform_ladder(mu, a, ladder.scales);
  classify_convergence(rep, tol, window);
  return rep;
}

double second_derivative_truncated(const SignedAtomicMeasure& mu,
                                   std::span<const double> a, int i, int j,
                                   double eps) {
  check_point_dim(mu, a);
  const int d = mu.dim();
  if (i < 0 || j < 0 || i >= d || j >= d)
    fail(ErrorCode::InvalidArgument, "component index out of range");
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const double eps2 = eps * eps;
  Kahan acc;
  std::vector<double> diff(d);
  for (std::size_t n = 0; n < mu.size(); ++n) {
    const auto y = mu.location(n);
    double r2 = 0.0;
    for (int c = 0; c < d; ++c) {
      diff[c] = a[c] - y[c];
      r2 += diff[c] * diff[c];
    }
    if (r2 <= eps2) continue;
    double kernel;
    if (d == 2) {
      // (x^2-y^2)/|z|^4 on the diagonal (sign per component), 2xy/|z|^4 off it
      const double inv4 = 1.0 / (r2 * r2);
      if (i == j) {
        const double other = diff[1 - i];
        kernel = (diff[i] * diff[i] - other * other) * inv4;
      } else {
        kernel = 2.0 * diff[0] * diff[1] * inv4;
      }
    } else {
      const double invpow = std::pow(r2, -0.5 * (d + 2));
      if (i == j)
        kernel = -(d - 2) * (r2 - d * diff[i] * diff[i]) * invpow;
      else
        kernel = d * (d - 2) * diff[i] * diff[j] * invpow;
    }
    acc.add(mu.weight(n) * kernel);
  }
  return acc.s;
}

namespace {

// squared Menger curvature of a planar triple: c^2 = (4 area / (abc))^2
double menger_c2(const double* p, const double* q, const double* r) {
  const double ax = q[0] - p[0], ay = q[1] - p[1];
  const double bx = r[0] - p[0], by = r[1] - p[1];
  const double cross = ax * by - ay * bx;
  if (cross == 0.0) return 0.0;  // collinear
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double cx = r[0] - q[0], cy = r[1] - q[1];
  const double c2 = cx * cx + cy * cy;
  return (2.0 * cross) * (2.0 * cross) / (a2 * b2 * c2);
}

}  // namespace

double menger_energy(const SignedAtomicMeasure& mu, std::size_t cap_n) {
  if (mu.dim() != 2)
    fail(ErrorCode::DimensionMismatch, "Menger energy is planar only");
  const std::size_t n = mu.size();
  if (n > cap_n)
    fail(ErrorCode::TooManyAtoms, std::to_string(n) + " atoms exceed the cubic-cost cap " +
                                      std::to_string(cap_n));
  if (n < 3) return 0.0;
  const double* c = mu.coords().data();
  const double* w = mu.weights().data();
  // parallel over the leading index; each (i, j, k) triple counted once
  std::vector<double> partial(n, 0.0);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Kahan acc;
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          acc.add(menger_c2(c + 2 * i, c + 2 * j, c + 2 * k) * w[i] * w[j] * w[k]);
      partial[i] = acc.s;
    }
  });
  Kahan total;
  for (double p : partial) total.add(p);
  return total.s;
}

}  // namespace potlab
