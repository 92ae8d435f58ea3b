#include "epsnet/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "epsnet/comparison.hpp"
#include "epsnet/errors.hpp"
#include "epsnet/neighbor_index.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/rng.hpp"

namespace epsnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_sample(const Sample& sample) {
  if (sample.size() == 0) throw ValidationError("sample is empty");
  if (sample.weights.size() != sample.size())
    throw ValidationError("sample weights do not match its points");
}

std::vector<std::size_t> admission_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, Stream::kNetOrder));
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<std::size_t> greedy_random(const MetricMeasureSpace& space, const Sample& sample,
                                       double eps, std::uint64_t seed) {
  NeighborIndex index(space, sample.points);
  std::vector<std::size_t> centers;
  for (const std::size_t i : admission_order(sample.size(), seed)) {
    bool separated = true;
    index.candidates(i, eps, [&](std::size_t j) {
      if (space.distance(sample.points[i], sample.points[j]) < eps) separated = false;
      return separated;
    });
    if (separated) {
      centers.push_back(i);
      index.insert(i);
    }
  }
  return centers;
}

std::vector<std::size_t> farthest_point(const MetricMeasureSpace& space, const Sample& sample,
                                        double eps, std::uint64_t seed) {
  const std::size_t n = sample.size();
  Rng rng(derive_seed(seed, Stream::kNetOrder));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> centers{pick(rng)};
  std::vector<double> nearest(n, kInf);
  for (;;) {
    const std::size_t c = centers.back();
    parallel_for(n, [&](std::size_t i) {
      nearest[i] = std::min(nearest[i], space.distance(sample.points[c], sample.points[i]));
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (nearest[i] > nearest[best]) best = i;
    }
    if (!(nearest[best] >= eps)) break;
    centers.push_back(best);
  }
  return centers;
}

double min_separation(const MetricMeasureSpace& space, const Sample& sample,
                      const std::vector<std::size_t>& centers, double eps) {
  const std::size_t m = centers.size();
  if (m < 2) return kInf;
  PointSet pts(sample.points.stride());
  pts.reserve(m);
  for (std::size_t c : centers) pts.push_back(sample.points[c]);
  NeighborIndex index(space, pts);
  for (std::size_t k = 0; k < m; ++k) index.insert(k);
  std::vector<double> best(m, kInf);
  const double probe = 2.0 * eps;
  parallel_for(m, [&](std::size_t k) {
    index.candidates(k, probe, [&](std::size_t l) {
      if (l != k) best[k] = std::min(best[k], space.distance(pts[k], pts[l]));
      return true;
    });
    if (best[k] > probe) {
      for (std::size_t l = 0; l < m; ++l) {
        if (l != k) best[k] = std::min(best[k], space.distance(pts[k], pts[l]));
      }
    }
  });
  return *std::min_element(best.begin(), best.end());
}

}  // namespace

EpsilonNet build_net(const MetricMeasureSpace& space, const Sample& sample, double eps,
                     std::uint64_t seed, NetStrategy strategy) {
  require_sample(sample);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be finite and > 0");
  EpsilonNet net;
  net.eps = eps;
  net.strategy = strategy;
  net.ambient_sample_size = sample.size();
  net.centers = strategy == NetStrategy::kRandom ? greedy_random(space, sample, eps, seed)
                                                 : farthest_point(space, sample, eps, seed);
  net.separation = min_separation(space, sample, net.centers, eps);
  const NearestCenters nc = assign_nearest_centers(space, sample, net);
  net.covering = *std::max_element(nc.distance.begin(), nc.distance.end());
  return net;
}

NearestCenters assign_nearest_centers(const MetricMeasureSpace& space, const Sample& sample,
                                      const EpsilonNet& net) {
  require_sample(sample);
  const std::size_t m = net.centers.size();
  if (m == 0) throw ValidationError("net has no centers");
  PointSet pts(sample.points.stride());
  pts.reserve(m);
  for (std::size_t c : net.centers) pts.push_back(sample.points[c]);
  NeighborIndex index(space, pts);
  for (std::size_t k = 0; k < m; ++k) index.insert(k);

  const std::size_t n = sample.size();
  NearestCenters out;
  out.center.assign(n, 0);
  out.distance.assign(n, kInf);
  const auto consider = [&](std::size_t i, std::size_t k) {
    const double d = space.distance(sample.points[i], pts[k]);
    if (d < out.distance[i] || (d == out.distance[i] && k < out.center[i])) {
      out.distance[i] = d;
      out.center[i] = static_cast<std::uint32_t>(k);
    }
  };
  parallel_for(n, [&](std::size_t i) {
    index.candidates(sample.points[i], net.eps, [&](std::size_t k) {
      consider(i, k);
      return true;
    });
    if (out.distance[i] > net.eps) {
      // Not covered within eps (only possible for nets that are not maximal on this sample).
      out.distance[i] = kInf;
      for (std::size_t k = 0; k < m; ++k) consider(i, k);
    }
  });
  return out;
}

bool balls_intersect(double d, double eps) {
  const double reach = 2.0 * eps;
  return d < reach - 1e-12 * std::max(1.0, reach);
}

bool IntersectionPattern::has_edge(std::size_t a, std::size_t b) const {
  if (a >= adjacency.size()) return false;
  const auto& nb = adjacency[a];
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(b));
}

std::size_t IntersectionPattern::max_overlap() const {
  return overlap_counts.empty() ? 0 : *std::max_element(overlap_counts.begin(), overlap_counts.end());
}

IntersectionPattern pattern_from_edges(std::size_t num_vertices, double eps,
                                       std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  IntersectionPattern p;
  p.eps = eps;
  p.num_vertices = num_vertices;
  for (auto& e : edges) {
    if (e.first == e.second) throw ValidationError("self-loops are not allowed");
    if (e.first >= num_vertices || e.second >= num_vertices)
      throw ValidationError("edge endpoint out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  p.adjacency.assign(num_vertices, {});
  for (const auto& [a, b] : edges) {
    p.adjacency[a].push_back(b);
    p.adjacency[b].push_back(a);
  }
  for (auto& nb : p.adjacency) std::sort(nb.begin(), nb.end());
  p.overlap_counts.resize(num_vertices);
  for (std::size_t v = 0; v < num_vertices; ++v) p.overlap_counts[v] = p.adjacency[v].size() + 1;
  p.edges = std::move(edges);
  return p;
}

IntersectionPattern intersection_pattern(const MetricMeasureSpace& space, const Sample& sample,
                                         const EpsilonNet& net) {
  const std::size_t m = net.centers.size();
  if (m == 0) throw ValidationError("net has no centers");
  PointSet pts(sample.points.stride());
  pts.reserve(m);
  for (std::size_t c : net.centers) {
    if (c >= sample.size()) throw ValidationError("net center outside the sample");
    pts.push_back(sample.points[c]);
  }
  NeighborIndex index(space, pts);
  for (std::size_t k = 0; k < m; ++k) index.insert(k);
  std::vector<std::vector<std::uint32_t>> upper(m);
  parallel_for(m, [&](std::size_t k) {
    index.candidates(k, 2.0 * net.eps, [&](std::size_t l) {
      if (l > k && balls_intersect(space.distance(pts[k], pts[l]), net.eps))
        upper[k].push_back(static_cast<std::uint32_t>(l));
      return true;
    });
  });
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::uint32_t l : upper[k]) edges.emplace_back(static_cast<std::uint32_t>(k), l);
  }
  return pattern_from_edges(m, net.eps, std::move(edges));
}

std::size_t max_sample_overlap(const MetricMeasureSpace& space, const Sample& sample,
                               const EpsilonNet& net) {
  const std::size_t m = net.centers.size();
  PointSet pts(sample.points.stride());
  pts.reserve(m);
  for (std::size_t c : net.centers) pts.push_back(sample.points[c]);
  NeighborIndex index(space, pts);
  for (std::size_t k = 0; k < m; ++k) index.insert(k);
  std::vector<std::size_t> counts(sample.size(), 0);
  parallel_for(sample.size(), [&](std::size_t i) {
    index.candidates(sample.points[i], 2.0 * net.eps, [&](std::size_t k) {
      if (balls_intersect(space.distance(sample.points[i], pts[k]), net.eps)) ++counts[i];
      return true;
    });
  });
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

double center_distance(const MetricMeasureSpace& space, const Sample& sample,
                       const EpsilonNet& net, std::size_t a, std::size_t b) {
  return space.distance(sample.points[net.centers[a]], sample.points[net.centers[b]]);
}

PatternIsomorphismReport compare_patterns(const NetView& a, const NetView& b, double C) {
  const std::size_t m = a.pattern.num_vertices;
  if (m != b.pattern.num_vertices || a.net.size() != m || b.net.size() != m) {
    throw ValidationError("nets being compared have different vertex counts");
  }
  PatternIsomorphismReport rep;
  rep.C = C;
  std::set_difference(a.pattern.edges.begin(), a.pattern.edges.end(), b.pattern.edges.begin(),
                      b.pattern.edges.end(), std::back_inserter(rep.only_in_a));
  std::set_difference(b.pattern.edges.begin(), b.pattern.edges.end(), a.pattern.edges.begin(),
                      a.pattern.edges.end(), std::back_inserter(rep.only_in_b));
  rep.identical = rep.only_in_a.empty() && rep.only_in_b.empty();
  rep.n3 = bound_n3(a.space.cd_data(), a.net.eps, C);

  PointSet pts(a.sample.points.stride());
  pts.reserve(m);
  for (std::size_t c : a.net.centers) pts.push_back(a.sample.points[c]);
  const double reach = C * a.net.eps;
  NeighborIndex index(a.space, pts);
  for (std::size_t k = 0; k < m; ++k) index.insert(k);
  const double limit = static_cast<double>(rep.n3) * b.net.eps;
  std::vector<std::vector<PatternViolation>> found(m);
  std::vector<std::size_t> checked(m, 0);
  parallel_for(m, [&](std::size_t i) {
    index.candidates(i, reach, [&](std::size_t j) {
      if (j <= i) return true;
      const double da = a.space.distance(pts[i], pts[j]);
      if (!(da < reach)) return true;
      ++checked[i];
      const double db = center_distance(b.space, b.sample, b.net, i, j);
      if (!(db < limit)) found[i].push_back({i, j, da, db});
      return true;
    });
  });
  for (std::size_t i = 0; i < m; ++i) {
    rep.pairs_checked += checked[i];
    rep.violations.insert(rep.violations.end(), found[i].begin(), found[i].end());
  }
  return rep;
}

}  // namespace epsnet
