#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epsnet/nets.hpp"
#include "epsnet/spaces.hpp"

namespace epsnet {

enum class EdgeMetric {
  kCombinatorial,  // unit edge lengths
  kGeodesic,       // ambient distance between adjacent centers
};

/// The discretization graph G(N) of an eps-net: the 1-skeleton of its intersection
/// pattern together with the Voronoi (Dirichlet) cells of the centers and their masses.
struct DiscretizationGraph {
  double eps = 0.0;
  /// Covering radius of the net over the sample (the fullness radius eps1 of X <- G).
  double covering = 0.0;
  std::vector<std::size_t> vertices;  // sample index of each vertex
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<double> edge_lengths;  // parallel to adjacency (flattened per vertex), geodesic only
  EdgeMetric metric = EdgeMetric::kCombinatorial;

  std::vector<std::size_t> degrees;
  std::size_t max_degree = 0;

  std::vector<std::uint32_t> component;  // component label per vertex
  std::vector<std::size_t> component_sizes;
  std::uint32_t largest_component = 0;

  std::vector<std::uint32_t> voronoi;  // vertex owning each sample point
  std::vector<double> atomic_masses;   // measure of each Voronoi cell

  std::size_t num_vertices() const noexcept { return vertices.size(); }
  std::size_t num_components() const noexcept { return component_sizes.size(); }
  bool connected() const noexcept { return component_sizes.size() <= 1; }
};

DiscretizationGraph build_graph(const MetricMeasureSpace& space, const EpsilonNet& net,
                                const IntersectionPattern& pattern, const Sample& sample,
                                EdgeMetric metric = EdgeMetric::kCombinatorial);

/// A bare graph from an edge list (no geometry); used for graphs read from files.
DiscretizationGraph graph_from_edges(std::size_t num_vertices,
                                     std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// Hop counts from `source` (-1 where unreachable).
std::vector<int> bfs_distances(const DiscretizationGraph& graph, std::size_t source);
/// Graph distance under the graph's edge metric (+inf where unreachable).
std::vector<double> graph_distances(const DiscretizationGraph& graph, std::size_t source);

/// One compared pair: distance in the domain and in the target of the map.
struct DistancePair {
  double domain = 0.0;
  double target = 0.0;
};

struct RoughIsometryViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  double domain = 0.0;
  double target = 0.0;
};

struct EnvelopeLine {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

struct EnvelopeBin {
  double domain = 0.0;  // bin position (hop count, or bin center)
  double min_target = 0.0;
  double max_target = 0.0;
  std::size_t count = 0;
};

/// Constants for (1/a) d_dom - b <= d_tgt <= a d_dom + b and eps1-fullness.
struct RoughIsometryCertificate {
  double a = 1.0;
  double b = 0.0;
  double eps1 = 0.0;
  std::size_t pairs_checked = 0;
  std::vector<RoughIsometryViolation> violations;
  EnvelopeLine upper;
  EnvelopeLine lower;
  std::vector<EnvelopeBin> envelope;
  /// Pairs breaking d(p1, p2) <= 2 eps d_hat(p1, p2) by more than 1e-9 (graph to space only).
  std::vector<RoughIsometryViolation> lower_bound_violations;
  double max_lower_bound_ratio = 0.0;  // max d / (2 eps d_hat)
  bool restricted_to_largest_component = false;
  std::vector<std::string> warnings;
};

/// Fits (a, b): a = max(1, slope of the upper envelope, 1 / slope of the lower envelope),
/// both least-squares lines over the upper half of the envelope bins; then b is the largest
/// residual, so every supplied pair satisfies the certificate. `bins` == 0 bins by exact
/// domain value (hop counts); otherwise equal-width bins.
RoughIsometryCertificate fit_rough_isometry(std::span<const DistancePair> pairs, std::size_t bins);

/// Pairs breaking the two-sided inequality for given constants.
std::vector<std::size_t> rough_isometry_violations(std::span<const DistancePair> pairs, double a,
                                                   double b);

/// Certificate for the inclusion (G, d_hat) -> (X, d) over about `pair_budget` random vertex
/// pairs: all pairs when they fit the budget, otherwise ceil(sqrt(budget)) random sources
/// with budget / sources random targets each. Also verifies d <= 2 eps d_hat on every pair.
/// Disconnected graphs are restricted to the largest component with a warning unless
/// `allow_disconnected` is false, in which case ValidationError is thrown.
RoughIsometryCertificate rough_isometry_certificate(const MetricMeasureSpace& space,
                                                    const Sample& sample,
                                                    const DiscretizationGraph& graph,
                                                    std::size_t pair_budget, std::uint64_t seed,
                                                    bool allow_disconnected = true);

/// Certificate for the nearest-center map (X, d) -> (G, d_hat) over random sample pairs.
/// Every vertex is its own image, so eps1 = 0.
RoughIsometryCertificate inverse_rough_isometry_certificate(const MetricMeasureSpace& space,
                                                            const Sample& sample,
                                                            const DiscretizationGraph& graph,
                                                            std::size_t pair_budget,
                                                            std::uint64_t seed);

struct BoundedGeometryReport {
  std::size_t rho0 = 0;
  std::optional<long long> degree_bound;
  bool regime_supported = true;
  bool passed = true;
  std::string note;
};

/// rho0 = max degree, compared against the degree bound at r = eps (K <= 0 only; for K > 0
/// the empirical rho0 is reported without an analytic bound).
BoundedGeometryReport bounded_geometry_check(const DiscretizationGraph& graph,
                                             const CurvatureDimensionData& cd, double eps);

}  // namespace epsnet
