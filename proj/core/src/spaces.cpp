#include "epsnet/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "epsnet/errors.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/quadrature.hpp"

namespace epsnet {
namespace {

constexpr std::size_t kSampleChunk = 4096;
constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Generates `count` points chunk by chunk; chunk c draws from its own derived seed,
// so the output is independent of the worker count.
template <typename ChunkFn>
PointSet chunked_points(std::size_t stride, std::size_t count, std::uint64_t seed,
                        ChunkFn&& generate) {
  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  std::vector<PointSet> parts(chunks, PointSet(stride));
  const std::uint64_t base = derive_seed(seed, Stream::kSample);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(base, c));
    const std::size_t n = std::min(kSampleChunk, count - c * kSampleChunk);
    parts[c].reserve(n);
    generate(rng, n, parts[c]);
  });
  PointSet out(stride);
  out.reserve(count);
  for (const PointSet& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i) out.push_back(part[i]);
  }
  return out;
}

void unit_direction(Rng& rng, std::span<double> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double len = 0.0;
  while (len == 0.0) {
    for (double& x : out) x = normal(rng);
    len = norm(out);
  }
  for (double& x : out) x /= len;
}

}  // namespace

void CurvatureDimensionData::validate() const {
  std::ostringstream msg;
  if (topological_dim < 1) {
    msg << "topological dimension must be >= 1, got " << topological_dim;
  } else if (!(N >= 1.0) || !std::isfinite(N)) {
    msg << "effective dimension N must be a finite real >= 1, got " << N;
  } else if (N + 1e-12 < topological_dim) {
    msg << "effective dimension N = " << N << " is below the topological dimension "
        << topological_dim;
  } else if (!(D > 0.0) || !std::isfinite(D)) {
    msg << "diameter bound D must be finite and > 0, got " << D;
  } else if (!std::isfinite(K)) {
    msg << "curvature bound K must be finite";
  } else if (K > 0.0) {
    const double limit = kPi * std::sqrt((N - 1.0) / K);
    if (D > limit * (1.0 + 1e-12)) {
      msg << "D = " << D << " exceeds the comparison domain pi*sqrt((N-1)/K) = " << limit;
    }
  }
  if (!msg.str().empty()) throw ValidationError(msg.str());
}

MetricMeasureSpace::MetricMeasureSpace(CurvatureDimensionData cd) : cd_(cd) { cd_.validate(); }

double MetricMeasureSpace::ball_measure(std::span<const double> center, double r,
                                        std::size_t budget, std::uint64_t seed) const {
  return monte_carlo_ball_measure(center, r, budget, seed).value;
}

MeasureEstimate MetricMeasureSpace::monte_carlo_ball_measure(std::span<const double> center,
                                                             double r, std::size_t budget,
                                                             std::uint64_t seed) const {
  if (budget == 0) throw ValidationError("Monte-Carlo budget must be positive");
  const Sample s = sample(budget, seed);
  const std::size_t n = s.size();
  std::vector<double> hits(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    if (distance(center, s.points[i]) < r) hits[i] = s.weights[i];
  });
  const double value = compensated_sum(hits);
  // Per-draw contributions y_i = n * w_i * 1_i; the estimate is their mean.
  const double mean = value / static_cast<double>(n);
  double ss = 0.0;
  for (double h : hits) ss += (h - mean) * (h - mean);
  const double var_mean = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {value, std::sqrt(var_mean * static_cast<double>(n))};
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// ModelSpace ------------------------------------------------------------------------

CurvatureDimensionData ModelSpace::default_cd(ModelKind kind, int dim, double curvature,
                                              const Region& region) {
  CurvatureDimensionData cd;
  cd.topological_dim = dim;
  cd.N = dim;
  cd.K = (dim - 1) * curvature;
  switch (kind) {
    case ModelKind::kSphere:
      cd.D = kPi / std::sqrt(curvature);
      break;
    case ModelKind::kEuclidean:
      cd.K = 0.0;
      cd.D = region.shape == Region::Shape::kBox ? region.size * std::sqrt(double(dim))
                                                 : 2.0 * region.size;
      break;
    case ModelKind::kHyperbolic:
      cd.D = 2.0 * region.size;
      break;
  }
  return cd;
}

namespace {

void validate_model(ModelKind kind, int dim, double curvature, const Region& region) {
  if (dim < 1) throw ValidationError("model space dimension must be >= 1");
  switch (kind) {
    case ModelKind::kSphere:
      if (!(curvature > 0.0)) throw ValidationError("sphere curvature must be > 0");
      if (region.shape != Region::Shape::kWhole)
        throw ValidationError("sphere spaces are sampled as a whole; no region allowed");
      break;
    case ModelKind::kEuclidean:
      if (curvature != 0.0) throw ValidationError("euclidean curvature must be 0");
      if (region.shape == Region::Shape::kWhole || !(region.size > 0.0))
        throw ValidationError("euclidean space needs a ball or box region of positive size");
      break;
    case ModelKind::kHyperbolic:
      if (!(curvature < 0.0)) throw ValidationError("hyperbolic curvature must be < 0");
      if (region.shape != Region::Shape::kBall || !(region.size > 0.0))
        throw ValidationError("hyperbolic space needs a ball region of positive radius");
      break;
  }
}

CurvatureDimensionData checked_model_cd(ModelKind kind, int dim, double curvature,
                                        const Region& region,
                                        const std::optional<CurvatureDimensionData>& cd) {
  validate_model(kind, dim, curvature, region);
  return cd ? *cd : ModelSpace::default_cd(kind, dim, curvature, region);
}

}  // namespace

ModelSpace::ModelSpace(ModelKind kind, int dim, double curvature, Region region,
                       std::optional<CurvatureDimensionData> cd_override)
    : MetricMeasureSpace(checked_model_cd(kind, dim, curvature, region, cd_override)),
      kind_(kind),
      dim_(dim),
      curvature_(curvature),
      region_(region) {}

std::string ModelSpace::kind() const {
  switch (kind_) {
    case ModelKind::kEuclidean:
      return "euclidean";
    case ModelKind::kSphere:
      return "sphere";
    case ModelKind::kHyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

std::size_t ModelSpace::coordinate_dim() const {
  return kind_ == ModelKind::kEuclidean ? dim_ : dim_ + 1;
}

double ModelSpace::region_volume() const {
  switch (kind_) {
    case ModelKind::kSphere:
      return model_ball_volume(*this, kPi / std::sqrt(curvature_));
    case ModelKind::kEuclidean:
      if (region_.shape == Region::Shape::kBox) return std::pow(region_.size, dim_);
      return model_ball_volume(*this, region_.size);
    case ModelKind::kHyperbolic:
      return model_ball_volume(*this, region_.size);
  }
  return 0.0;
}

double ModelSpace::distance(std::span<const double> a, std::span<const double> b) const {
  switch (kind_) {
    case ModelKind::kEuclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    }
    case ModelKind::kSphere: {
      double diff = 0.0;
      double sum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        sum += (a[i] + b[i]) * (a[i] + b[i]);
      }
      return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)) / std::sqrt(curvature_);
    }
    case ModelKind::kHyperbolic: {
      // Minkowski squared chord q = 4 rho^2 sinh^2(d / (2 rho)).
      const double rho = 1.0 / std::sqrt(-curvature_);
      double q = -(a[0] - b[0]) * (a[0] - b[0]);
      for (std::size_t i = 1; i < a.size(); ++i) q += (a[i] - b[i]) * (a[i] - b[i]);
      return 2.0 * rho * std::asinh(std::sqrt(std::max(q, 0.0)) / (2.0 * rho));
    }
  }
  return 0.0;
}

std::vector<double> ModelSpace::make_point(std::span<const double> coords) const {
  switch (kind_) {
    case ModelKind::kEuclidean:
      if (coords.size() != static_cast<std::size_t>(dim_))
        throw ValidationError("euclidean point has wrong dimension");
      return {coords.begin(), coords.end()};
    case ModelKind::kSphere: {
      if (coords.size() != static_cast<std::size_t>(dim_ + 1))
        throw ValidationError("sphere point needs dim + 1 coordinates");
      const double len = norm(coords);
      if (len == 0.0) throw ValidationError("sphere point direction is zero");
      const double rho = 1.0 / std::sqrt(curvature_);
      std::vector<double> p(coords.begin(), coords.end());
      for (double& x : p) x *= rho / len;
      return p;
    }
    case ModelKind::kHyperbolic: {
      if (coords.size() != static_cast<std::size_t>(dim_))
        throw ValidationError("hyperbolic tangent vector has wrong dimension");
      const double rho = 1.0 / std::sqrt(-curvature_);
      const double r = norm(coords);
      std::vector<double> p(dim_ + 1, 0.0);
      p[0] = rho * std::cosh(r / rho);
      if (r > 0.0) {
        const double s = rho * std::sinh(r / rho) / r;
        for (int i = 0; i < dim_; ++i) p[i + 1] = s * coords[i];
      }
      return p;
    }
  }
  return {};
}

double ModelSpace::radial_distance(std::span<const double> p) const {
  switch (kind_) {
    case ModelKind::kEuclidean:
      return norm(p);
    case ModelKind::kHyperbolic: {
      const double rho = 1.0 / std::sqrt(-curvature_);
      return rho * std::asinh(norm(p.subspan(1)) / rho);
    }
    case ModelKind::kSphere: {
      const auto ref = reference_point();
      return distance(p, ref);
    }
  }
  return 0.0;
}

bool ModelSpace::ball_inside_region(std::span<const double> center, double r) const {
  switch (region_.shape) {
    case Region::Shape::kWhole:
      return true;
    case Region::Shape::kBall:
      return radial_distance(center) + r <= region_.size;
    case Region::Shape::kBox:
      for (double x : center) {
        if (std::abs(x) + r > 0.5 * region_.size) return false;
      }
      return true;
  }
  return false;
}

void ModelSpace::sample_chunk(Rng& rng, std::size_t count, PointSet& out) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> p(coordinate_dim());
  std::vector<double> dir(dim_);
  for (std::size_t i = 0; i < count; ++i) {
    switch (kind_) {
      case ModelKind::kSphere: {
        unit_direction(rng, p);
        const double rho = 1.0 / std::sqrt(curvature_);
        for (double& x : p) x *= rho;
        break;
      }
      case ModelKind::kEuclidean: {
        if (region_.shape == Region::Shape::kBox) {
          for (double& x : p) x = (unif(rng) - 0.5) * region_.size;
        } else {
          unit_direction(rng, p);
          const double r = region_.size * std::pow(unif(rng), 1.0 / dim_);
          for (double& x : p) x *= r;
        }
        break;
      }
      case ModelKind::kHyperbolic: {
        const double rho = 1.0 / std::sqrt(-curvature_);
        const double a = 1.0 / rho;
        const double big_r = region_.size;
        double r = 0.0;
        if (dim_ == 1) {
          r = big_r * unif(rng);
        } else {
          // Radial density proportional to sinh(a r)^(dim-1): exact inversion for the
          // dim = 2 law, then rejection with acceptance (sinh(a r) / sinh(a R))^(dim-2).
          for (;;) {
            const double u = unif(rng);
            r = std::acosh(1.0 + u * (std::cosh(a * big_r) - 1.0)) / a;
            if (dim_ == 2) break;
            const double accept = std::pow(std::sinh(a * r) / std::sinh(a * big_r), dim_ - 2);
            if (unif(rng) < accept) break;
          }
        }
        unit_direction(rng, dir);
        p[0] = rho * std::cosh(r / rho);
        const double s = rho * std::sinh(r / rho);
        for (int k = 0; k < dim_; ++k) p[k + 1] = s * dir[k];
        break;
      }
    }
    out.push_back(p);
  }
}

Sample ModelSpace::sample(std::size_t count, std::uint64_t seed) const {
  Sample s;
  s.points = chunked_points(coordinate_dim(), count, seed,
                            [this](Rng& rng, std::size_t n, PointSet& out) {
                              sample_chunk(rng, n, out);
                            });
  const double w = count ? region_volume() / static_cast<double>(count) : 0.0;
  s.weights.assign(count, w);
  return s;
}

double ModelSpace::ball_measure(std::span<const double> center, double r, std::size_t budget,
                                std::uint64_t seed) const {
  if (r <= 0.0) return 0.0;
  if (kind_ == ModelKind::kSphere) {
    const double diameter = kPi / std::sqrt(curvature_);
    return model_ball_volume(*this, std::min(r, diameter));
  }
  if (ball_inside_region(center, r)) return model_ball_volume(*this, r);
  return MetricMeasureSpace::ball_measure(center, r, budget, seed);
}

std::vector<double> ModelSpace::reference_point() const {
  std::vector<double> p(coordinate_dim(), 0.0);
  if (kind_ == ModelKind::kSphere) p.back() = 1.0 / std::sqrt(curvature_);
  if (kind_ == ModelKind::kHyperbolic) p[0] = 1.0 / std::sqrt(-curvature_);
  return p;
}

std::optional<double> ModelSpace::convexity_radius() const {
  if (kind_ == ModelKind::kSphere) return 0.5 * kPi / std::sqrt(curvature_);
  return std::numeric_limits<double>::infinity();
}

std::optional<std::array<double, 3>> ModelSpace::mesh_coordinates(std::span<const double> p) const {
  if (dim_ != 2) return std::nullopt;
  switch (kind_) {
    case ModelKind::kEuclidean:
      return std::array<double, 3>{p[0], p[1], 0.0};
    case ModelKind::kSphere:
      return std::array<double, 3>{p[0], p[1], p[2]};
    case ModelKind::kHyperbolic: {
      // Poincare disk of radius rho.
      const double rho = 1.0 / std::sqrt(-curvature_);
      const double s = rho / (p[0] + rho);
      return std::array<double, 3>{s * p[1], s * p[2], 0.0};
    }
  }
  return std::nullopt;
}

double model_ball_volume(ModelKind kind, int dim, double curvature, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("ball radius must be finite and >= 0");
  if (dim < 1) throw ValidationError("model space dimension must be >= 1");
  if (kind == ModelKind::kSphere) {
    const double diameter = kPi / std::sqrt(curvature);
    if (r > diameter * (1.0 + 1e-12))
      throw DomainError("radius exceeds the spherical diameter pi/sqrt(curvature)");
    r = std::min(r, diameter);
  }
  if (dim == 1) return 2.0 * r;
  const double area = unit_sphere_area(dim);
  if (kind == ModelKind::kEuclidean) return area * std::pow(r, dim) / dim;

  const double rho = 1.0 / std::sqrt(std::abs(curvature));
  const bool sphere = kind == ModelKind::kSphere;
  if (dim == 2) {
    const double h = sphere ? std::sin(0.5 * r / rho) : std::sinh(0.5 * r / rho);
    return 2.0 * kPi * rho * rho * 2.0 * h * h;
  }
  const auto integrand = [=](double t) {
    const double s = sphere ? std::sin(t / rho) : std::sinh(t / rho);
    return std::pow(rho * s, dim - 1);
  };
  return area * adaptive_simpson(integrand, 0.0, r);
}

double model_ball_volume(const ModelSpace& space, double r) {
  return model_ball_volume(space.model_kind(), space.dim(), space.curvature(), r);
}

// WeightedSpace ---------------------------------------------------------------------

WeightedSpace::WeightedSpace(int dim, Region region, LogDensity log_density, std::string preset,
                             bool normalized, CurvatureDimensionData cd)
    : MetricMeasureSpace(cd),
      base_(ModelKind::kEuclidean, dim, 0.0, region),
      log_density_(std::move(log_density)),
      preset_(std::move(preset)),
      normalized_(normalized) {
  if (!log_density_) throw ValidationError("weighted space needs a log-density");
}

namespace {

double region_outer_radius(int dim, const Region& region) {
  return region.shape == Region::Shape::kBox ? 0.5 * region.size * std::sqrt(double(dim))
                                             : region.size;
}

}  // namespace

std::unique_ptr<WeightedSpace> WeightedSpace::gaussian(int dim, Region region, double sigma,
                                                       std::optional<CurvatureDimensionData> cd) {
  if (!(sigma > 0.0)) throw ValidationError("gaussian sigma must be > 0");
  const ModelSpace base(ModelKind::kEuclidean, dim, 0.0, region);
  if (!cd) {
    const double rho = region_outer_radius(dim, region);
    CurvatureDimensionData d = base.cd_data();
    d.N = dim + 1.0;
    d.K = 1.0 / (sigma * sigma) - rho * rho / (sigma * sigma * sigma * sigma);
    cd = d;
  }
  const double log_norm = -0.5 * dim * std::log(2.0 * kPi * sigma * sigma);
  auto density = [sigma, log_norm](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return log_norm - 0.5 * s / (sigma * sigma);
  };
  return std::make_unique<WeightedSpace>(dim, region, density, "gaussian", true, *cd);
}

std::unique_ptr<WeightedSpace> WeightedSpace::flat(int dim, Region region,
                                                   std::optional<CurvatureDimensionData> cd) {
  const ModelSpace base(ModelKind::kEuclidean, dim, 0.0, region);
  auto density = [](std::span<const double>) { return 0.0; };
  return std::make_unique<WeightedSpace>(dim, region, density, "zero", false,
                                         cd ? *cd : base.cd_data());
}

Sample WeightedSpace::sample(std::size_t count, std::uint64_t seed) const {
  Sample s = base_.sample(count, seed);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ld = log_density_(s.points[i]);
    if (!std::isfinite(ld)) throw ValidationError("log-density is not finite at a sampled point");
    s.weights[i] *= std::exp(ld);
  }
  return s;
}

// PointCloudSpace -------------------------------------------------------------------

CurvatureDimensionData PointCloudSpace::default_cd(std::span<const double> distance_matrix,
                                                   std::size_t) {
  CurvatureDimensionData cd;
  cd.K = 0.0;
  cd.N = 1.0;
  cd.topological_dim = 1;
  double max_d = 0.0;
  for (double d : distance_matrix) max_d = std::max(max_d, d);
  cd.D = max_d > 0.0 ? max_d : 1.0;
  return cd;
}

namespace {

CurvatureDimensionData checked_cloud(const std::vector<double>& dist, std::size_t n,
                                     const std::vector<double>& weights,
                                     const CurvatureDimensionData& cd) {
  if (n == 0) throw ValidationError("point cloud is empty");
  if (dist.size() != n * n) throw ValidationError("distance matrix must be n x n");
  if (weights.size() != n) throw ValidationError("weights must have one entry per point");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be finite and >= 0");
  }
  const auto tol = [](double scale) { return 1e-9 * std::max(1.0, scale); };
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) throw ValidationError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i * n + j];
      if (!(d >= 0.0) || !std::isfinite(d))
        throw ValidationError("distances must be finite and nonnegative");
      if (std::abs(d - dist[j * n + i]) > tol(d))
        throw ValidationError("distance matrix is not symmetric");
      if (i != j && d == 0.0) throw ValidationError("distinct points at distance zero");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = dist[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        const double rhs = dij + dist[j * n + k];
        if (dist[i * n + k] > rhs + tol(rhs)) {
          std::ostringstream msg;
          msg << "triangle inequality fails for points (" << i << ", " << j << ", " << k << ")";
          throw ValidationError(msg.str());
        }
      }
    }
  }
  return cd;
}

}  // namespace

PointCloudSpace::PointCloudSpace(std::vector<double> distance_matrix, std::size_t n,
                                 std::vector<double> weights, CurvatureDimensionData cd)
    : MetricMeasureSpace(checked_cloud(distance_matrix, n, weights, cd)),
      dist_(std::move(distance_matrix)),
      n_(n),
      weights_(std::move(weights)) {}

std::size_t PointCloudSpace::index_of(std::span<const double> p) const {
  const double v = p[0];
  if (!(v >= 0.0) || v > static_cast<double>(n_ - 1) || v != std::floor(v))
    throw ValidationError("point-cloud point index out of range");
  return static_cast<std::size_t>(v);
}

double PointCloudSpace::distance(std::span<const double> a, std::span<const double> b) const {
  return dist_[index_of(a) * n_ + index_of(b)];
}

Sample PointCloudSpace::sample(std::size_t count, std::uint64_t seed) const {
  std::vector<std::size_t> idx(n_);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double scale = 1.0;
  if (count != 0 && count < n_) {
    Rng rng(derive_seed(seed, Stream::kSubset));
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    scale = static_cast<double>(n_) / static_cast<double>(count);
  }
  Sample s;
  s.points = PointSet(1);
  s.points.reserve(idx.size());
  for (std::size_t i : idx) {
    const double v = static_cast<double>(i);
    s.points.push_back(std::span<const double>(&v, 1));
    s.weights.push_back(weights_[i] * scale);
  }
  return s;
}

double PointCloudSpace::ball_measure(std::span<const double> center, double r, std::size_t,
                                     std::uint64_t) const {
  const std::size_t c = index_of(center);
  std::vector<double> inside;
  for (std::size_t j = 0; j < n_; ++j) {
    if (dist_[c * n_ + j] < r) inside.push_back(weights_[j]);
  }
  return compensated_sum(inside);
}

// Fisher simplex --------------------------------------------------------------------

CurvatureDimensionData FisherSimplexSpace::default_cd(int num_atoms, double scale) {
  CurvatureDimensionData cd;
  const int n = num_atoms - 1;
  const double radius = 2.0 * scale;
  cd.topological_dim = n;
  cd.N = n;
  cd.K = (n - 1) / (radius * radius);
  cd.D = kPi * scale;
  return cd;
}

namespace {

CurvatureDimensionData checked_fisher(int k, double scale,
                                      const std::optional<CurvatureDimensionData>& cd) {
  if (k < 2) throw ValidationError("fisher simplex needs at least 2 atoms");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("fisher scale must be > 0");
  return cd ? *cd : FisherSimplexSpace::default_cd(k, scale);
}

}  // namespace

FisherSimplexSpace::FisherSimplexSpace(int num_atoms, double scale,
                                       std::optional<CurvatureDimensionData> cd_override)
    : MetricMeasureSpace(checked_fisher(num_atoms, scale, cd_override)),
      k_(num_atoms),
      scale_(scale) {}

double FisherSimplexSpace::total_volume() const {
  // Positive orthant of the radius-(2 scale) sphere in R^k.
  const double radius = 2.0 * scale_;
  return std::pow(radius, k_ - 1) * unit_sphere_area(k_) / std::pow(2.0, k_);
}

double FisherSimplexSpace::distance(std::span<const double> p, std::span<const double> q) const {
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double u = 2.0 * std::sqrt(p[i]);
    const double v = 2.0 * std::sqrt(q[i]);
    diff += (u - v) * (u - v);
    sum += (u + v) * (u + v);
  }
  return scale_ * 2.0 * 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

Sample FisherSimplexSpace::sample(std::size_t count, std::uint64_t seed) const {
  Sample s;
  const int k = k_;
  s.points = chunked_points(k, count, seed, [k](Rng& rng, std::size_t n, PointSet& out) {
    std::vector<double> p(k);
    for (std::size_t i = 0; i < n; ++i) {
      bool interior = false;
      while (!interior) {
        unit_direction(rng, p);
        interior = true;
        for (double& x : p) {
          x = x * x;
          if (x <= 0.0) interior = false;
        }
      }
      out.push_back(p);
    }
  });
  s.weights.assign(count, count ? total_volume() / static_cast<double>(count) : 0.0);
  return s;
}

double FisherSimplexSpace::ball_measure(std::span<const double> center, double r,
                                        std::size_t budget, std::uint64_t seed) const {
  if (r <= 0.0) return 0.0;
  const double r_unit = r / scale_;
  // Spherical distance from u = 2 sqrt(p) to the face u_x = 0 is 2 asin(sqrt(p_x)).
  double to_boundary = std::numeric_limits<double>::infinity();
  for (double px : center) to_boundary = std::min(to_boundary, 2.0 * std::asin(std::sqrt(px)));
  if (r_unit <= to_boundary) {
    return std::pow(scale_, k_ - 1) * model_ball_volume(ModelKind::kSphere, k_ - 1, 0.25, r_unit);
  }
  return MetricMeasureSpace::ball_measure(center, r, budget, seed);
}

std::vector<double> FisherSimplexSpace::reference_point() const {
  return std::vector<double>(k_, 1.0 / k_);
}

void validate_probability(std::span<const double> p) {
  if (p.size() < 2) throw ValidationError("probability vector needs at least 2 entries");
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || !(x > 0.0))
      throw ValidationError("probability entries must be strictly positive (open simplex)");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("probability vector must sum to 1");
}

std::vector<double> fisher_embed(std::span<const double> p) {
  validate_probability(p);
  std::vector<double> u(p.size());
  std::transform(p.begin(), p.end(), u.begin(), [](double x) { return 2.0 * std::sqrt(x); });
  return u;
}

double sphere_arc(std::span<const double> u, std::span<const double> v, double radius) {
  if (u.size() != v.size()) throw ValidationError("points have different dimensions");
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diff += (u[i] - v[i]) * (u[i] - v[i]);
    sum += (u[i] + v[i]) * (u[i] + v[i]);
  }
  return radius * 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

double fisher_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ValidationError("probability vectors differ in length");
  const auto u = fisher_embed(p);
  const auto v = fisher_embed(q);
  return sphere_arc(u, v, 2.0);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  validate_probability(p);
  validate_probability(q);
  if (p.size() != q.size()) throw ValidationError("probability vectors differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

}  // namespace epsnet
