#include "epsnet/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "epsnet/comparison.hpp"
#include "epsnet/errors.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/rng.hpp"

namespace epsnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void label_components(DiscretizationGraph& g) {
  const std::size_t n = g.num_vertices();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  g.component.assign(n, kUnset);
  g.component_sizes.clear();
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (g.component[s] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(g.component_sizes.size());
    std::size_t size = 0;
    stack.assign(1, static_cast<std::uint32_t>(s));
    g.component[s] = label;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t w : g.adjacency[v]) {
        if (g.component[w] == kUnset) {
          g.component[w] = label;
          stack.push_back(w);
        }
      }
    }
    g.component_sizes.push_back(size);
  }
  g.largest_component = 0;
  for (std::uint32_t c = 1; c < g.component_sizes.size(); ++c) {
    if (g.component_sizes[c] > g.component_sizes[g.largest_component]) g.largest_component = c;
  }
}

void fill_topology(DiscretizationGraph& g, std::size_t n,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  const IntersectionPattern p = pattern_from_edges(n, 0.0, std::move(edges));
  g.edges = p.edges;
  g.adjacency = p.adjacency;
  g.degrees.resize(n);
  g.max_degree = 0;
  for (std::size_t v = 0; v < n; ++v) {
    g.degrees[v] = g.adjacency[v].size();
    g.max_degree = std::max(g.max_degree, g.degrees[v]);
  }
  label_components(g);
}

double least_squares_slope(const std::vector<std::pair<double, double>>& pts, double& intercept) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (pts.size() < 2 || sxx <= 0.0) {
    // One distinct abscissa: line through the origin.
    intercept = 0.0;
    return mx > 0.0 ? my / mx : 0.0;
  }
  const double slope = sxy / sxx;
  intercept = my - slope * mx;
  return slope;
}

std::vector<std::uint32_t> component_members(const DiscretizationGraph& g, std::uint32_t label) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.component[v] == label) out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

struct PairPlan {
  std::vector<std::uint32_t> sources;
  std::vector<std::vector<std::uint32_t>> targets;
};

// Sources and targets drawn from `pool` (all unordered pairs when they fit the budget).
PairPlan plan_pairs(const std::vector<std::uint32_t>& pool, std::size_t budget, Rng& rng) {
  PairPlan plan;
  const std::size_t n = pool.size();
  if (n < 2 || budget == 0) return plan;
  if (n * (n - 1) / 2 <= budget) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      plan.sources.push_back(pool[i]);
      plan.targets.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1, pool.end());
    }
    return plan;
  }
  const std::size_t num_sources =
      std::min(n, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(budget)))));
  const std::size_t per_source = (budget + num_sources - 1) / num_sources;
  std::vector<std::uint32_t> shuffled = pool;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < num_sources; ++s) {
    plan.sources.push_back(shuffled[s]);
    auto& t = plan.targets.emplace_back();
    while (t.size() < per_source) {
      const std::uint32_t v = pool[pick(rng)];
      if (v != shuffled[s]) t.push_back(v);
    }
  }
  return plan;
}

}  // namespace

DiscretizationGraph build_graph(const MetricMeasureSpace& space, const EpsilonNet& net,
                                const IntersectionPattern& pattern, const Sample& sample,
                                EdgeMetric metric) {
  if (pattern.num_vertices != net.size())
    throw ValidationError("pattern and net have different vertex counts");
  DiscretizationGraph g;
  g.eps = net.eps;
  g.covering = net.covering;
  g.vertices = net.centers;
  g.metric = metric;
  fill_topology(g, net.size(), pattern.edges);
  if (metric == EdgeMetric::kGeodesic) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      for (std::uint32_t w : g.adjacency[v]) {
        g.edge_lengths.push_back(center_distance(space, sample, net, v, w));
      }
    }
  }
  const NearestCenters nc = assign_nearest_centers(space, sample, net);
  g.voronoi = nc.center;
  std::vector<std::vector<double>> cell_weights(g.num_vertices());
  for (std::size_t i = 0; i < sample.size(); ++i) cell_weights[g.voronoi[i]].push_back(sample.weights[i]);
  g.atomic_masses.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) g.atomic_masses[v] = compensated_sum(cell_weights[v]);
  return g;
}

DiscretizationGraph graph_from_edges(std::size_t num_vertices,
                                     std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  DiscretizationGraph g;
  g.vertices.resize(num_vertices);
  std::iota(g.vertices.begin(), g.vertices.end(), std::size_t{0});
  fill_topology(g, num_vertices, std::move(edges));
  return g;
}

std::vector<int> bfs_distances(const DiscretizationGraph& graph, std::size_t source) {
  if (source >= graph.num_vertices()) throw ValidationError("BFS source out of range");
  std::vector<int> dist(graph.num_vertices(), -1);
  std::queue<std::uint32_t> q;
  dist[source] = 0;
  q.push(static_cast<std::uint32_t>(source));
  while (!q.empty()) {
    const std::uint32_t v = q.front();
    q.pop();
    for (std::uint32_t w : graph.adjacency[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

std::vector<double> graph_distances(const DiscretizationGraph& graph, std::size_t source) {
  if (graph.metric == EdgeMetric::kCombinatorial) {
    const auto hops = bfs_distances(graph, source);
    std::vector<double> d(hops.size());
    std::transform(hops.begin(), hops.end(), d.begin(),
                   [](int h) { return h < 0 ? kInf : static_cast<double>(h); });
    return d;
  }
  if (source >= graph.num_vertices()) throw ValidationError("source out of range");
  std::vector<std::size_t> offset(graph.num_vertices() + 1, 0);
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) offset[v + 1] = offset[v] + graph.adjacency[v].size();
  std::vector<double> d(graph.num_vertices(), kInf);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  d[source] = 0.0;
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    const auto [dv, v] = heap.top();
    heap.pop();
    if (dv > d[v]) continue;
    for (std::size_t k = 0; k < graph.adjacency[v].size(); ++k) {
      const std::uint32_t w = graph.adjacency[v][k];
      const double nd = dv + graph.edge_lengths[offset[v] + k];
      if (nd < d[w]) {
        d[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return d;
}

RoughIsometryCertificate fit_rough_isometry(std::span<const DistancePair> pairs, std::size_t bins) {
  RoughIsometryCertificate cert;
  cert.pairs_checked = pairs.size();
  if (pairs.empty()) return cert;

  double xmin = kInf, xmax = 0.0;
  for (const auto& p : pairs) {
    if (!std::isfinite(p.domain) || !std::isfinite(p.target))
      throw ValidationError("distance pairs must be finite");
    xmin = std::min(xmin, p.domain);
    xmax = std::max(xmax, p.domain);
  }
  // Envelope bins.
  std::vector<EnvelopeBin> env;
  if (bins == 0) {
    std::vector<DistancePair> sorted(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const DistancePair& l, const DistancePair& r) { return l.domain < r.domain; });
    for (const auto& p : sorted) {
      if (env.empty() || env.back().domain != p.domain) env.push_back({p.domain, p.target, p.target, 0});
      auto& e = env.back();
      e.min_target = std::min(e.min_target, p.target);
      e.max_target = std::max(e.max_target, p.target);
      ++e.count;
    }
  } else {
    const double width = xmax > xmin ? (xmax - xmin) / static_cast<double>(bins) : 1.0;
    std::vector<EnvelopeBin> all(bins);
    for (std::size_t k = 0; k < bins; ++k) {
      all[k].domain = xmin + (static_cast<double>(k) + 0.5) * width;
      all[k].min_target = kInf;
      all[k].max_target = -kInf;
    }
    for (const auto& p : pairs) {
      const auto k = std::min(bins - 1, static_cast<std::size_t>((p.domain - xmin) / width));
      all[k].min_target = std::min(all[k].min_target, p.target);
      all[k].max_target = std::max(all[k].max_target, p.target);
      ++all[k].count;
    }
    for (const auto& e : all) {
      if (e.count > 0) env.push_back(e);
    }
  }
  cert.envelope = env;

  // Large-distance half of the envelope.
  std::vector<std::pair<double, double>> up, lo;
  const std::size_t start = env.size() / 2;
  for (std::size_t k = start; k < env.size(); ++k) {
    up.emplace_back(env[k].domain, env[k].max_target);
    lo.emplace_back(env[k].domain, env[k].min_target);
  }
  cert.upper.slope = least_squares_slope(up, cert.upper.intercept);
  cert.upper.points = up.size();
  cert.lower.slope = least_squares_slope(lo, cert.lower.intercept);
  cert.lower.points = lo.size();

  double a = std::max(1.0, cert.upper.slope);
  if (cert.lower.slope > 0.0) {
    a = std::max(a, 1.0 / cert.lower.slope);
  } else {
    // Flat or decreasing lower envelope: fall back to the largest domain/target ratio
    // among the far pairs.
    const double far = 0.5 * (xmin + xmax);
    for (const auto& p : pairs) {
      if (p.domain >= far && p.target > 0.0) a = std::max(a, p.domain / p.target);
    }
  }
  double b = 0.0;
  for (const auto& p : pairs) {
    b = std::max({b, p.target - a * p.domain, p.domain / a - p.target});
  }
  cert.a = a;
  cert.b = b;
  return cert;
}

std::vector<std::size_t> rough_isometry_violations(std::span<const DistancePair> pairs, double a,
                                                   double b) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const double slack = 1e-12 * std::max(1.0, p.target);
    if (p.target > a * p.domain + b + slack || p.target < p.domain / a - b - slack) bad.push_back(i);
  }
  return bad;
}

RoughIsometryCertificate rough_isometry_certificate(const MetricMeasureSpace& space,
                                                    const Sample& sample,
                                                    const DiscretizationGraph& graph,
                                                    std::size_t pair_budget, std::uint64_t seed,
                                                    bool allow_disconnected) {
  if (graph.num_vertices() == 0) throw ValidationError("graph has no vertices");
  std::vector<std::string> warnings;
  bool restricted = false;
  if (!graph.connected()) {
    if (!allow_disconnected) throw ValidationError("graph is disconnected");
    restricted = true;
    warnings.push_back("graph has " + std::to_string(graph.num_components()) +
                       " components; restricted to the largest (" +
                       std::to_string(graph.component_sizes[graph.largest_component]) +
                       " vertices)");
  }
  const auto pool = component_members(graph, graph.largest_component);
  Rng rng(derive_seed(seed, Stream::kPairs));
  const PairPlan plan = plan_pairs(pool, pair_budget, rng);

  struct Row {
    std::vector<DistancePair> pairs;
    std::vector<RoughIsometryViolation> meta;
  };
  std::vector<Row> rows(plan.sources.size());
  parallel_for(plan.sources.size(), [&](std::size_t s) {
    const std::uint32_t src = plan.sources[s];
    const auto dhat = graph_distances(graph, src);
    for (std::uint32_t t : plan.targets[s]) {
      const double d = space.distance(sample.points[graph.vertices[src]], sample.points[graph.vertices[t]]);
      rows[s].pairs.push_back({dhat[t], d});
      rows[s].meta.push_back({src, t, dhat[t], d});
    }
  });
  std::vector<DistancePair> pairs;
  std::vector<RoughIsometryViolation> meta;
  for (auto& r : rows) {
    pairs.insert(pairs.end(), r.pairs.begin(), r.pairs.end());
    meta.insert(meta.end(), r.meta.begin(), r.meta.end());
  }

  RoughIsometryCertificate cert =
      fit_rough_isometry(pairs, graph.metric == EdgeMetric::kCombinatorial ? 0 : 32);
  cert.eps1 = graph.covering;
  cert.restricted_to_largest_component = restricted;
  cert.warnings = std::move(warnings);
  for (std::size_t i : rough_isometry_violations(pairs, cert.a, cert.b)) cert.violations.push_back(meta[i]);
  if (graph.metric == EdgeMetric::kCombinatorial) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double allowed = 2.0 * graph.eps * pairs[i].domain;
      if (allowed > 0.0) cert.max_lower_bound_ratio = std::max(cert.max_lower_bound_ratio, pairs[i].target / allowed);
      if (allowed - pairs[i].target < -1e-9) cert.lower_bound_violations.push_back(meta[i]);
    }
  }
  return cert;
}

RoughIsometryCertificate inverse_rough_isometry_certificate(const MetricMeasureSpace& space,
                                                            const Sample& sample,
                                                            const DiscretizationGraph& graph,
                                                            std::size_t pair_budget,
                                                            std::uint64_t seed) {
  if (graph.voronoi.size() != sample.size())
    throw ValidationError("graph has no Voronoi assignment for this sample");
  std::vector<std::uint32_t> pool;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (graph.component[graph.voronoi[i]] == graph.largest_component)
      pool.push_back(static_cast<std::uint32_t>(i));
  }
  Rng rng(derive_seed(derive_seed(seed, Stream::kPairs), 1));
  const PairPlan plan = plan_pairs(pool, pair_budget, rng);
  std::vector<std::vector<DistancePair>> rows(plan.sources.size());
  parallel_for(plan.sources.size(), [&](std::size_t s) {
    const std::uint32_t x = plan.sources[s];
    const auto dhat = graph_distances(graph, graph.voronoi[x]);
    for (std::uint32_t y : plan.targets[s]) {
      rows[s].push_back({space.distance(sample.points[x], sample.points[y]), dhat[graph.voronoi[y]]});
    }
  });
  std::vector<DistancePair> pairs;
  for (auto& r : rows) pairs.insert(pairs.end(), r.begin(), r.end());
  RoughIsometryCertificate cert = fit_rough_isometry(pairs, 32);
  cert.eps1 = 0.0;
  cert.restricted_to_largest_component = !graph.connected();
  return cert;
}

BoundedGeometryReport bounded_geometry_check(const DiscretizationGraph& graph,
                                             const CurvatureDimensionData& cd, double eps) {
  BoundedGeometryReport rep;
  rep.rho0 = graph.max_degree;
  if (cd.K > 0.0) {
    rep.regime_supported = false;
    rep.note = "degree bound requires K <= 0; empirical rho0 only";
    return rep;
  }
  rep.degree_bound = bound_degree(cd, eps, eps);
  rep.passed = static_cast<long long>(rep.rho0) <= *rep.degree_bound;
  rep.note = "degree bound evaluated at r = eps";
  return rep;
}

}  // namespace epsnet
