#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "epsnet/comparison.hpp"
#include "epsnet/discretization.hpp"
#include "epsnet/errors.hpp"
#include "epsnet/nets.hpp"

using namespace epsnet;

namespace {

struct Built {
  Sample sample;
  EpsilonNet net;
  IntersectionPattern pattern;
  DiscretizationGraph graph;
};

Built build(const MetricMeasureSpace& s, std::size_t n, double eps, std::uint64_t seed,
            EdgeMetric metric = EdgeMetric::kCombinatorial) {
  Built b;
  b.sample = s.sample(n, seed);
  b.net = build_net(s, b.sample, eps, seed);
  b.pattern = intersection_pattern(s, b.sample, b.net);
  b.graph = build_graph(s, b.net, b.pattern, b.sample, metric);
  return b;
}

}  // namespace

TEST_CASE("Voronoi masses partition the sample measure") {
  const ModelSpace box(ModelKind::kEuclidean, 2, 0.0, {Region::Shape::kBox, 5.0});
  const Built b = build(box, 30000, 0.5, 3);
  double total = 0;
  for (double m : b.graph.atomic_masses) {
    CHECK(m > 0.0);
    total += m;
  }
  CHECK(total == doctest::Approx(b.sample.total_measure()).epsilon(1e-12));
  CHECK(total == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(b.graph.voronoi.size() == b.sample.size());
  // Each sample point belongs to a nearest center.
  for (std::size_t i = 0; i < b.sample.size(); i += 101) {
    const double own = box.distance(b.sample.points[i], b.sample.points[b.graph.vertices[b.graph.voronoi[i]]]);
    for (std::size_t c : b.net.centers) CHECK(own <= box.distance(b.sample.points[i], b.sample.points[c]));
  }
}

TEST_CASE("single vertex graph") {
  const ModelSpace sphere(ModelKind::kSphere, 2, 1.0, {});
  const Sample smp = sphere.sample(1, 2);
  const EpsilonNet net = build_net(sphere, smp, 0.5, 1);
  const IntersectionPattern pat = intersection_pattern(sphere, smp, net);
  const DiscretizationGraph g = build_graph(sphere, net, pat, smp);
  CHECK(g.num_vertices() == 1);
  CHECK(g.max_degree == 0);
  CHECK(g.connected());
  CHECK(g.atomic_masses[0] == doctest::Approx(4 * std::numbers::pi));
  const auto cert = rough_isometry_certificate(sphere, smp, g, 100, 1);
  CHECK(cert.pairs_checked == 0);
  CHECK(cert.violations.empty());
}

TEST_CASE("path graph") {
  const DiscretizationGraph g = graph_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(g.max_degree == 2);
  CHECK(g.connected());
  const auto d = bfs_distances(g, 0);
  CHECK(d == std::vector<int>{0, 1, 2, 3, 4});
  const auto gd = graph_distances(g, 4);
  CHECK(gd[0] == 4.0);
  const DiscretizationGraph split = graph_from_edges(5, {{0, 1}, {3, 4}});
  CHECK(split.num_components() == 3);
  CHECK(bfs_distances(split, 0)[3] == -1);
  CHECK(std::isinf(graph_distances(split, 0)[3]));
  CHECK(split.component_sizes[split.largest_component] == 2);
  CHECK_THROWS_AS(bfs_distances(g, 5), ValidationError);
}

TEST_CASE("graph distance is a metric") {
  const ModelSpace hyp(ModelKind::kHyperbolic, 2, -1.0, {Region::Shape::kBall, 3.0});
  for (EdgeMetric metric : {EdgeMetric::kCombinatorial, EdgeMetric::kGeodesic}) {
    const Built b = build(hyp, 20000, 0.4, 5, metric);
    const std::size_t n = b.graph.num_vertices();
    std::vector<std::vector<double>> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = graph_distances(b.graph, i);
    for (std::size_t i = 0; i < n; i += 7)
      for (std::size_t j = 0; j < n; j += 5) {
        CHECK(d[i][j] == doctest::Approx(d[j][i]).epsilon(1e-12));
        CHECK((d[i][j] == 0.0) == (i == j));
        for (std::size_t k = 0; k < n; k += 11) CHECK(d[i][k] <= d[i][j] + d[j][k] + 1e-9);
      }
    if (metric == EdgeMetric::kGeodesic) {
      // Geodesic graph distances dominate the ambient distance.
      for (std::size_t i = 0; i < n; i += 13)
        for (std::size_t j = 0; j < n; j += 3)
          CHECK(d[i][j] + 1e-12 >= hyp.distance(b.sample.points[b.graph.vertices[i]], b.sample.points[b.graph.vertices[j]]));
    }
  }
}

TEST_CASE("bounded geometry in the Euclidean plane") {
  const ModelSpace plane(ModelKind::kEuclidean, 2, 0.0, {Region::Shape::kBox, 8.0});
  for (double eps : {0.3, 0.5}) {
    const Built b = build(plane, 100000, eps, 7);
    const BoundedGeometryReport bg = bounded_geometry_check(b.graph, plane.cd_data(), eps);
    REQUIRE(bg.degree_bound.has_value());
    CHECK(*bg.degree_bound == bound_degree(plane.cd_data(), eps, eps));
    CHECK(*bg.degree_bound == 81);
    CHECK(static_cast<long long>(bg.rho0) <= *bg.degree_bound);
    CHECK(bg.passed);
  }
  const ModelSpace sphere(ModelKind::kSphere, 2, 1.0, {});
  const Built s = build(sphere, 10000, 0.3, 1);
  const BoundedGeometryReport bg = bounded_geometry_check(s.graph, sphere.cd_data(), 0.3);
  CHECK_FALSE(bg.regime_supported);
  CHECK_FALSE(bg.degree_bound.has_value());
  CHECK(bg.rho0 == s.graph.max_degree);
}

TEST_CASE("graph to space distances satisfy d <= 2 eps d_hat") {
  const ModelSpace hyp(ModelKind::kHyperbolic, 2, -1.0, {Region::Shape::kBall, 4.0});
  const Built b = build(hyp, 50000, 0.4, 2);
  const auto cert = rough_isometry_certificate(hyp, b.sample, b.graph, 5000, 3);
  CHECK(cert.lower_bound_violations.empty());
  CHECK(cert.max_lower_bound_ratio <= 1.0 + 1e-9);
  CHECK(cert.violations.empty());
  CHECK(cert.a >= 1.0);
  CHECK(cert.b >= 0.0);
  CHECK(cert.eps1 == b.net.covering);
  CHECK(cert.eps1 < 0.4);
  CHECK(cert.pairs_checked >= 4000);
  const auto inv = inverse_rough_isometry_certificate(hyp, b.sample, b.graph, 5000, 3);
  CHECK(inv.violations.empty());
  CHECK(inv.eps1 == 0.0);
}

TEST_CASE("fitting rough isometries") {
  // The identity on a single pair: a = 1, b = 0.
  const DistancePair one[] = {{2.0, 2.0}};
  const auto id = fit_rough_isometry(one, 0);
  CHECK(id.a == doctest::Approx(1.0));
  CHECK(id.b == doctest::Approx(0.0).epsilon(1e-12));

  // Exact scaling by 3 plus bounded noise.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 50), noise(-0.5, 0.5);
  std::vector<DistancePair> pairs;
  for (int i = 0; i < 4000; ++i) {
    const double x = u(rng);
    pairs.push_back({x, 3 * x + noise(rng)});
  }
  const auto fit = fit_rough_isometry(pairs, 32);
  CHECK(fit.a == doctest::Approx(3.0).epsilon(0.02));
  CHECK(fit.b <= 5.0);
  CHECK(fit.violations.empty());
  CHECK(rough_isometry_violations(pairs, fit.a, fit.b).empty());
  CHECK_FALSE(rough_isometry_violations(pairs, 1.0, 0.0).empty());

  // Composition of (a, b) and (a', b') maps is an (a a', a b' + b) map.
  std::vector<DistancePair> f, g, gf;
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double y = 2 * x + noise(rng);
    const double z = 1.5 * y + noise(rng);
    f.push_back({x, y});
    g.push_back({y, z});
    gf.push_back({x, z});
  }
  const auto cf = fit_rough_isometry(f, 32), cg = fit_rough_isometry(g, 32);
  CHECK(rough_isometry_violations(gf, cf.a * cg.a, cg.a * cf.b + cg.b).empty());
}

TEST_CASE("disconnected graphs") {
  const ModelSpace box(ModelKind::kEuclidean, 1, 0.0, {Region::Shape::kBox, 10.0});
  const Sample smp = box.sample(2000, 1);
  const EpsilonNet net = build_net(box, smp, 0.5, 1);
  // Drop every edge crossing x = 0.
  const IntersectionPattern full = intersection_pattern(box, smp, net);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
  for (const auto& e : full.edges)
    if ((smp.points[net.centers[e.first]][0] < 0) == (smp.points[net.centers[e.second]][0] < 0)) kept.push_back(e);
  const IntersectionPattern cut = pattern_from_edges(net.size(), 0.5, kept);
  const DiscretizationGraph g = build_graph(box, net, cut, smp);
  REQUIRE(g.num_components() == 2);
  const auto cert = rough_isometry_certificate(box, smp, g, 1000, 1);
  CHECK(cert.restricted_to_largest_component);
  CHECK_FALSE(cert.warnings.empty());
  CHECK_THROWS_AS(rough_isometry_certificate(box, smp, g, 1000, 1, false), ValidationError);
}
