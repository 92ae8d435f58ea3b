#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsnet/point_set.hpp"
#include "epsnet/rng.hpp"

namespace epsnet {

/// Declared curvature-dimension data of a space: Ric_{N,nu} >= K, effective
/// dimension N, diameter bound D and topological dimension n.
/// K and N are never computed from a metric; they are part of the space description.
struct CurvatureDimensionData {
  double K = 0.0;
  double N = 1.0;
  double D = 1.0;
  int topological_dim = 1;

  /// Throws ValidationError unless N >= topological_dim >= 1 and D > 0, and, for K > 0,
  /// D <= pi * sqrt((N - 1) / K).
  void validate() const;
};

/// Monte-Carlo estimate with its standard error.
struct MeasureEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// A (locally compact, complete) metric measure space accessed through distances,
/// ball measures and a seeded sampler. Implementations are immutable and thread-safe.
class MetricMeasureSpace {
 public:
  virtual ~MetricMeasureSpace() = default;

  virtual std::string kind() const = 0;
  /// Length of the coordinate vectors used to represent points.
  virtual std::size_t coordinate_dim() const = 0;
  virtual double distance(std::span<const double> a, std::span<const double> b) const = 0;

  /// Draws `count` points with importance weights whose sum estimates the total measure.
  /// Points are generated in fixed-size chunks, each from its own derived seed.
  virtual Sample sample(std::size_t count, std::uint64_t seed) const = 0;

  /// nu[B(center, r)]: closed form where available, otherwise Monte-Carlo with `budget`
  /// samples drawn from `seed`.
  virtual double ball_measure(std::span<const double> center, double r, std::size_t budget,
                              std::uint64_t seed) const;

  /// Always the Monte-Carlo path, with its standard error.
  MeasureEstimate monte_carlo_ball_measure(std::span<const double> center, double r,
                                           std::size_t budget, std::uint64_t seed) const;

  /// A distinguished interior point (origin, pole, barycenter).
  virtual std::vector<double> reference_point() const = 0;

  /// Convexity radius where it is known in closed form.
  virtual std::optional<double> convexity_radius() const { return std::nullopt; }

  /// 3D coordinates for mesh output, when the space has a natural embedding.
  virtual std::optional<std::array<double, 3>> mesh_coordinates(std::span<const double>) const {
    return std::nullopt;
  }

  const CurvatureDimensionData& cd_data() const noexcept { return cd_; }

 protected:
  explicit MetricMeasureSpace(CurvatureDimensionData cd);

 private:
  CurvatureDimensionData cd_;
};

/// Surface area of the unit (n-1)-sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

enum class ModelKind { kEuclidean, kSphere, kHyperbolic };

/// Bounded convex region on which a non-compact model space is sampled.
struct Region {
  enum class Shape { kWhole, kBall, kBox };
  Shape shape = Shape::kWhole;
  /// Ball radius, or box side length (box centered at the origin).
  double size = 0.0;
};

/// Constant-curvature model spaces: Euclidean R^n, the round sphere of sectional curvature
/// kappa > 0 (radius 1/sqrt(kappa)) and hyperbolic space of curvature -kappa.
/// Euclidean and hyperbolic spaces are restricted to a convex region (a ball, or a box
/// for Euclidean space) which then is the measure space itself.
/// Points: R^n coordinates (Euclidean), R^{n+1} ambient coordinates (sphere) and
/// hyperboloid coordinates (x0, x1..xn) with x0 > 0 (hyperbolic).
class ModelSpace final : public MetricMeasureSpace {
 public:
  ModelSpace(ModelKind kind, int dim, double curvature, Region region,
             std::optional<CurvatureDimensionData> cd_override = std::nullopt);

  static CurvatureDimensionData default_cd(ModelKind kind, int dim, double curvature,
                                           const Region& region);

  std::string kind() const override;
  ModelKind model_kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  /// Signed sectional curvature (0, +kappa or -kappa).
  double curvature() const noexcept { return curvature_; }
  const Region& region() const noexcept { return region_; }
  double region_volume() const;

  std::size_t coordinate_dim() const override;
  double distance(std::span<const double> a, std::span<const double> b) const override;
  Sample sample(std::size_t count, std::uint64_t seed) const override;
  double ball_measure(std::span<const double> center, double r, std::size_t budget,
                      std::uint64_t seed) const override;
  std::vector<double> reference_point() const override;
  std::optional<double> convexity_radius() const override;
  std::optional<std::array<double, 3>> mesh_coordinates(std::span<const double> p) const override;

  /// Distance from the reference point; used to test containment in ball regions.
  double radial_distance(std::span<const double> p) const;

  /// Builds a point of the space from intrinsic data: Euclidean coordinates, a direction
  /// vector in R^{n+1} (sphere, normalized and scaled), or a tangent vector at the origin
  /// (hyperbolic, mapped by the exponential map of the hyperboloid).
  std::vector<double> make_point(std::span<const double> coords) const;

 private:
  bool ball_inside_region(std::span<const double> center, double r) const;
  void sample_chunk(Rng& rng, std::size_t count, PointSet& out) const;

  ModelKind kind_;
  int dim_;
  double curvature_;
  Region region_;
};

using LogDensity = std::function<double(std::span<const double>)>;

/// R^n (restricted to a region) with the measure nu(dx) = e^{-V(x)} dx, where the
/// supplied log-density is -V.
class WeightedSpace final : public MetricMeasureSpace {
 public:
  WeightedSpace(int dim, Region region, LogDensity log_density, std::string preset,
                bool normalized, CurvatureDimensionData cd);

  /// Standard Gaussian measure with variance sigma^2 per axis, normalized to a probability
  /// measure on R^n. The declared data uses N = n + 1 and the Ric_{N,nu} lower bound
  /// 1/sigma^2 - rho^2/sigma^4 over the region, rho being the region's outer radius.
  static std::unique_ptr<WeightedSpace> gaussian(int dim, Region region, double sigma = 1.0,
                                                 std::optional<CurvatureDimensionData> cd = {});
  /// V == 0: the Lebesgue measure, as a weighted space.
  static std::unique_ptr<WeightedSpace> flat(int dim, Region region,
                                             std::optional<CurvatureDimensionData> cd = {});

  std::string kind() const override { return "weighted"; }
  const std::string& preset() const noexcept { return preset_; }
  bool normalized() const noexcept { return normalized_; }
  double log_density(std::span<const double> x) const { return log_density_(x); }
  const ModelSpace& base() const noexcept { return base_; }

  std::size_t coordinate_dim() const override { return base_.coordinate_dim(); }
  double distance(std::span<const double> a, std::span<const double> b) const override {
    return base_.distance(a, b);
  }
  Sample sample(std::size_t count, std::uint64_t seed) const override;
  std::vector<double> reference_point() const override { return base_.reference_point(); }
  std::optional<double> convexity_radius() const override { return base_.convexity_radius(); }
  std::optional<std::array<double, 3>> mesh_coordinates(std::span<const double> p) const override {
    return base_.mesh_coordinates(p);
  }

 private:
  ModelSpace base_;
  LogDensity log_density_;
  std::string preset_;
  bool normalized_;
};

/// A finite metric space given by a distance matrix, with an atomic measure.
/// Points are represented by a single coordinate holding the point index.
class PointCloudSpace final : public MetricMeasureSpace {
 public:
  /// Validates symmetry, zero diagonal, nonnegativity and the triangle inequality
  /// (relative tolerance 1e-9) and throws ValidationError on failure.
  PointCloudSpace(std::vector<double> distance_matrix, std::size_t n, std::vector<double> weights,
                  CurvatureDimensionData cd);

  /// Default declared data: K = 0, N = 1, D = max distance.
  static CurvatureDimensionData default_cd(std::span<const double> distance_matrix, std::size_t n);

  std::string kind() const override { return "pointcloud"; }
  std::size_t num_points() const noexcept { return n_; }
  double matrix_distance(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  std::size_t coordinate_dim() const override { return 1; }
  double distance(std::span<const double> a, std::span<const double> b) const override;
  /// count == 0 or count >= size returns every point in index order; otherwise a seeded
  /// subset without replacement, sorted by index.
  Sample sample(std::size_t count, std::uint64_t seed) const override;
  /// Exact: sum of atomic weights within distance < r.
  double ball_measure(std::span<const double> center, double r, std::size_t budget,
                      std::uint64_t seed) const override;
  std::vector<double> reference_point() const override { return {0.0}; }

 private:
  std::size_t index_of(std::span<const double> p) const;

  std::vector<double> dist_;
  std::size_t n_;
  std::vector<double> weights_;
};

/// The open probability simplex on k atoms with the Fisher information metric, realized
/// through u = 2 sqrt(p) as the positive orthant of the radius-2 sphere in R^k.
/// All distances may be multiplied by a uniform `scale` (0.5 gives the unit sphere).
/// The measure is the Riemannian volume; sampling is uniform in that volume.
class FisherSimplexSpace final : public MetricMeasureSpace {
 public:
  explicit FisherSimplexSpace(int num_atoms, double scale = 1.0,
                              std::optional<CurvatureDimensionData> cd_override = std::nullopt);

  static CurvatureDimensionData default_cd(int num_atoms, double scale);

  std::string kind() const override { return "fisher"; }
  int num_atoms() const noexcept { return k_; }
  double scale() const noexcept { return scale_; }
  double total_volume() const;

  std::size_t coordinate_dim() const override { return static_cast<std::size_t>(k_); }
  double distance(std::span<const double> p, std::span<const double> q) const override;
  Sample sample(std::size_t count, std::uint64_t seed) const override;
  double ball_measure(std::span<const double> center, double r, std::size_t budget,
                      std::uint64_t seed) const override;
  std::vector<double> reference_point() const override;

 private:
  int k_;
  double scale_;
};

// Model ball volumes ---------------------------------------------------------------

/// Exact volume of a metric ball of radius r in the complete model space (ignores any
/// sampling region). Throws DomainError for r < 0 or r beyond the spherical diameter.
double model_ball_volume(ModelKind kind, int dim, double curvature, double r);
double model_ball_volume(const ModelSpace& space, double r);

// Fisher geometry -----------------------------------------------------------------

/// Throws ValidationError unless p has >= 2 strictly positive entries summing to 1 within 1e-9.
void validate_probability(std::span<const double> p);

/// u = 2 sqrt(p); lies on the positive orthant of the sphere sum u^2 = 4.
std::vector<double> fisher_embed(std::span<const double> p);

/// Great-circle distance on the sphere of the given radius between two points on it.
double sphere_arc(std::span<const double> u, std::span<const double> v, double radius);

/// Fisher geodesic distance 2 arccos(sum sqrt(p q)), computed as the arc between the
/// embeddings on the radius-2 sphere.
double fisher_distance(std::span<const double> p, std::span<const double> q);

/// sum p log(p / q), natural logarithm.
double kl_divergence(std::span<const double> p, std::span<const double> q);

}  // namespace epsnet
