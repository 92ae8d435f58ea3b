#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "epsnet/point_set.hpp"
#include "epsnet/spaces.hpp"

namespace epsnet {

enum class NetStrategy {
  kRandom,    // greedy admission in a seed-determined random order
  kFarthest,  // farthest-point insertion from a seed-chosen start
};

/// A maximal eps-separated subset of a sample (a minimal eps-net of the sample):
/// centers are pairwise >= eps apart and every sample point is within eps of a center.
struct EpsilonNet {
  double eps = 0.0;
  /// Sample indices, in admission order. Vertex k of derived graphs is centers[k].
  std::vector<std::size_t> centers;
  std::size_t ambient_sample_size = 0;
  /// Minimum pairwise center distance (+inf for a single center).
  double separation = 0.0;
  /// Maximum distance from a sample point to its nearest center.
  double covering = 0.0;
  NetStrategy strategy = NetStrategy::kRandom;

  std::size_t size() const noexcept { return centers.size(); }
};

EpsilonNet build_net(const MetricMeasureSpace& space, const Sample& sample, double eps,
                     std::uint64_t seed, NetStrategy strategy = NetStrategy::kRandom);

/// Nearest center of every sample point (a Voronoi / Dirichlet assignment); ties go to the
/// lowest center position.
struct NearestCenters {
  std::vector<std::uint32_t> center;  // position in net.centers
  std::vector<double> distance;
};

NearestCenters assign_nearest_centers(const MetricMeasureSpace& space, const Sample& sample,
                                      const EpsilonNet& net);

/// Edges (k, l), k < l, whenever the open eps-balls around centers k and l intersect,
/// i.e. d < 2 eps with a 1e-12 margin toward exclusion.
struct IntersectionPattern {
  double eps = 0.0;
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted
  std::vector<std::vector<std::uint32_t>> adjacency;           // sorted neighbour lists
  /// Number of centers whose eps-ball meets the vertex's eps-ball, the vertex included.
  std::vector<std::size_t> overlap_counts;

  bool has_edge(std::size_t a, std::size_t b) const;
  std::size_t max_overlap() const;
};

/// The threshold used for pattern edges.
bool balls_intersect(double d, double eps);

IntersectionPattern intersection_pattern(const MetricMeasureSpace& space, const Sample& sample,
                                         const EpsilonNet& net);

/// Pattern of an explicit graph (no geometry), e.g. for graphs read from files.
IntersectionPattern pattern_from_edges(std::size_t num_vertices, double eps,
                                       std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// max over sample points x of |{j : B(x, eps) meets B(p_j, eps)}|.
std::size_t max_sample_overlap(const MetricMeasureSpace& space, const Sample& sample,
                               const EpsilonNet& net);

/// Brute-force pairwise center distance.
double center_distance(const MetricMeasureSpace& space, const Sample& sample,
                       const EpsilonNet& net, std::size_t a, std::size_t b);

struct NetView {
  const MetricMeasureSpace& space;
  const Sample& sample;
  const EpsilonNet& net;
  const IntersectionPattern& pattern;
};

struct PatternViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance_a = 0.0;
  double distance_b = 0.0;
};

struct PatternIsomorphismReport {
  bool identical = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> only_in_a;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> only_in_b;
  double C = 1.0;
  long long n3 = 0;
  std::size_t pairs_checked = 0;
  /// Pairs with d_a < C eps_a but d_b >= n3 eps_b.
  std::vector<PatternViolation> violations;
};

/// Compares two labeled nets under the identity labeling and checks, for every pair with
/// d_a(p_i, p_j) < C eps_a, that d_b(q_i, q_j) < n3(C) eps_b, with n3 computed from the
/// first space's declared curvature-dimension data. Throws ValidationError on a vertex
/// count mismatch.
PatternIsomorphismReport compare_patterns(const NetView& a, const NetView& b, double C);

}  // namespace epsnet
