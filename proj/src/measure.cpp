#include "potlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "potlab/error.hpp"
#include "potlab/io.hpp"

namespace potlab {

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dist(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(dist2(a, b));
}

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      fail(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
}

}  // namespace

SignedAtomicMeasure::SignedAtomicMeasure(int dim, double resolution,
                                         std::vector<double> coords,
                                         std::vector<double> weights)
    : dim_(dim), resolution_(resolution) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "dimension must be >= 2");
  if (resolution < 0)
    fail(ErrorCode::InvalidArgument, "resolution must be >= 0");
  if (coords.size() != weights.size() * static_cast<std::size_t>(dim))
    fail(ErrorCode::DimensionMismatch, "coords/weights size mismatch");
  check_finite(coords, "coordinates");
  check_finite(weights, "weights");

  const std::size_t n = weights.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto lex_less = [&](std::size_t a, std::size_t b) {
    for (int c = 0; c < dim; ++c) {
      const double xa = coords[a * dim + c], xb = coords[b * dim + c];
      if (xa != xb) return xa < xb;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), lex_less);

  coords_.reserve(coords.size());
  weights_.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::size_t i = order[idx];
    const bool same_as_prev =
        !weights_.empty() &&
        std::equal(coords.begin() + static_cast<long>(i) * dim,
                   coords.begin() + static_cast<long>(i + 1) * dim,
                   coords_.end() - dim);
    if (same_as_prev) {
      weights_.back() += weights[i];  // duplicate locations merge
    } else {
      coords_.insert(coords_.end(), coords.begin() + static_cast<long>(i) * dim,
                     coords.begin() + static_cast<long>(i + 1) * dim);
      weights_.push_back(weights[i]);
    }
  }
}

SignedAtomicMeasure SignedAtomicMeasure::from_atoms(
    int dim, double resolution,
    const std::vector<std::pair<Point, double>>& atoms) {
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(atoms.size() * static_cast<std::size_t>(dim));
  weights.reserve(atoms.size());
  for (const auto& [p, w] : atoms) {
    if (static_cast<int>(p.size()) != dim)
      fail(ErrorCode::DimensionMismatch, "atom location has wrong dimension");
    coords.insert(coords.end(), p.begin(), p.end());
    weights.push_back(w);
  }
  return SignedAtomicMeasure(dim, resolution, std::move(coords),
                             std::move(weights));
}

bool SignedAtomicMeasure::nonnegative() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w >= 0.0; });
}

double SignedAtomicMeasure::min_distance(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i)
    best = std::min(best, dist2(location(i), x));
  return std::sqrt(best);
}

SignedAtomicMeasure SignedAtomicMeasure::scaled_weights(double c) const {
  SignedAtomicMeasure out = *this;
  for (double& w : out.weights_) w *= c;
  return out;
}

SignedAtomicMeasure SignedAtomicMeasure::translated(
    std::span<const double> shift) const {
  if (static_cast<int>(shift.size()) != dim_)
    fail(ErrorCode::DimensionMismatch, "shift has wrong dimension");
  SignedAtomicMeasure out = *this;
  for (std::size_t i = 0; i < out.coords_.size(); ++i)
    out.coords_[i] += shift[i % static_cast<std::size_t>(dim_)];
  return out;
}

SignedAtomicMeasure SignedAtomicMeasure::scaled_space(double lambda) const {
  if (!(lambda > 0))
    fail(ErrorCode::InvalidArgument, "scale factor must be positive");
  SignedAtomicMeasure out = *this;
  for (double& c : out.coords_) c *= lambda;
  out.resolution_ *= lambda;
  return out;
}

SignedAtomicMeasure SignedAtomicMeasure::reflected(
    std::span<const double> c) const {
  if (static_cast<int>(c.size()) != dim_)
    fail(ErrorCode::DimensionMismatch, "center has wrong dimension");
  SignedAtomicMeasure out = *this;
  for (std::size_t i = 0; i < out.coords_.size(); ++i)
    out.coords_[i] = 2.0 * c[i % static_cast<std::size_t>(dim_)] - out.coords_[i];
  // canonical order: rebuild
  return SignedAtomicMeasure(dim_, resolution_, std::move(out.coords_),
                             std::move(out.weights_));
}

SignedAtomicMeasure SignedAtomicMeasure::merged(const SignedAtomicMeasure& a,
                                                const SignedAtomicMeasure& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::DimensionMismatch, "measures have different dimensions");
  std::vector<double> coords = a.coords_;
  coords.insert(coords.end(), b.coords_.begin(), b.coords_.end());
  std::vector<double> weights = a.weights_;
  weights.insert(weights.end(), b.weights_.begin(), b.weights_.end());
  return SignedAtomicMeasure(a.dim(), std::max(a.resolution(), b.resolution()),
                             std::move(coords), std::move(weights));
}

double total_variation(const SignedAtomicMeasure& mu) {
  double s = 0.0, comp = 0.0;
  for (double w : mu.weights()) {
    const double y = std::abs(w) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

double ball_mass(const SignedAtomicMeasure& mu, std::span<const double> a,
                 double r) {
  if (static_cast<int>(a.size()) != mu.dim())
    fail(ErrorCode::DimensionMismatch, "center has wrong dimension");
  if (!(r > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  const double r2 = r * r;
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (dist2(mu.location(i), a) < r2) {  // open ball: boundary excluded
      const double y = mu.weight(i) - comp;
      const double t = s + y;
      comp = (t - s) - y;
      s = t;
    }
  }
  return s;
}

std::vector<double> ball_mass_ladder(const SignedAtomicMeasure& mu,
                                     std::span<const double> a,
                                     std::span<const double> radii) {
  if (static_cast<int>(a.size()) != mu.dim())
    fail(ErrorCode::DimensionMismatch, "center has wrong dimension");
  const std::size_t m = radii.size();
  // bucket[j]: atoms with radii[j] > dist >= radii[j+1]; prefix sums give
  // the open-ball masses for the decreasing ladder
  std::vector<double> bucket(m + 1, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d2 = dist2(mu.location(i), a);
    // first rung whose open ball contains the atom
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (d2 < radii[mid] * radii[mid])
        lo = mid + 1;
      else
        hi = mid;
    }
    // atom is inside rungs [0, lo): add at the last containing rung
    if (lo > 0) bucket[lo - 1] += mu.weight(i);
  }
  std::vector<double> masses(m, 0.0);
  double acc = 0.0;
  for (std::size_t j = m; j-- > 0;) {
    acc += bucket[j];
    masses[j] = acc;
  }
  return masses;
}

LadderReport density_profile(const SignedAtomicMeasure& mu,
                             std::span<const double> a,
                             const MeasureFunction& h, const Ladder& ladder) {
  for (std::size_t j = 0; j < ladder.scales.size(); ++j) {
    if (ladder.scales[j] <= mu.resolution())
      fail(ErrorCode::LadderBelowResolution,
           "rung " + std::to_string(j) + " (r=" + format_double(ladder.scales[j]) +
               ") is not above the resolution " + format_double(mu.resolution()));
  }
  const auto masses = ball_mass_ladder(mu, a, ladder.scales);
  LadderReport rep;
  rep.scales = ladder.scales;
  rep.values.reserve(masses.size());
  std::vector<double> ratios(masses.size());
  for (std::size_t j = 0; j < masses.size(); ++j) {
    ratios[j] = masses[j] / h(ladder.scales[j]);
    rep.values.push_back({ratios[j]});
  }
  rep.trend = classify_trend(rep.scales, ratios);
  classify_convergence(rep, 0.0);
  return rep;
}

void save_measure(const SignedAtomicMeasure& mu, const std::string& path) {
  nlohmann::json doc;
  doc["dim"] = mu.dim();
  doc["resolution"] = mu.resolution();
  nlohmann::json atoms = nlohmann::json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    nlohmann::json atom;
    atom["x"] = std::vector<double>(mu.location(i).begin(), mu.location(i).end());
    atom["w"] = mu.weight(i);
    atoms.push_back(std::move(atom));
  }
  doc["atoms"] = std::move(atoms);
  write_text_file(path, doc.dump());
}

SignedAtomicMeasure load_measure(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, std::string("measure parse error: ") + e.what());
  }
  if (!doc.contains("dim") || !doc.contains("atoms"))
    fail(ErrorCode::IoError, "measure file missing dim/atoms: " + path);
  const int dim = doc["dim"].get<int>();
  const double resolution = doc.value("resolution", 0.0);
  std::vector<double> coords, weights;
  for (const auto& atom : doc["atoms"]) {
    const auto& x = atom.at("x");
    if (static_cast<int>(x.size()) != dim)
      fail(ErrorCode::DimensionMismatch, "atom with wrong dimension in " + path);
    for (const auto& c : x) {
      if (!c.is_number())
        fail(ErrorCode::IoError, "non-numeric coordinate in " + path);
      coords.push_back(c.get<double>());
    }
    if (!atom.at("w").is_number())
      fail(ErrorCode::IoError, "non-numeric weight in " + path);
    weights.push_back(atom.at("w").get<double>());
  }
  for (double c : coords)
    if (!std::isfinite(c)) fail(ErrorCode::IoError, "non-finite coordinate");
  for (double w : weights)
    if (!std::isfinite(w)) fail(ErrorCode::IoError, "non-finite weight");
  return SignedAtomicMeasure(dim, resolution, std::move(coords),
                             std::move(weights));
}

}  // namespace potlab
