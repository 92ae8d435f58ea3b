#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "epsnet/complex.hpp"
#include "epsnet/errors.hpp"
#include "epsnet/nets.hpp"
#include "oracles.hpp"

using namespace epsnet;
using std::numbers::pi;

namespace {

Eigen::MatrixXd distances_of(const std::vector<std::vector<double>>& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      d(i, j) = std::sqrt(s);
    }
  return d;
}

}  // namespace

TEST_CASE("triangle areas agree with Heron") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 500; ++t) {
    const std::vector<std::vector<double>> pts{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const Eigen::MatrixXd d = distances_of(pts);
    const double heron = oracle::heron_area(d(0, 1), d(1, 2), d(0, 2));
    if (heron < 1e-3) continue;
    CHECK(simplex_volume(d) == doctest::Approx(heron).epsilon(1e-9));
  }
  Eigen::MatrixXd d(3, 3);
  d << 0, 3, 4, 3, 0, 5, 4, 5, 0;
  CHECK(simplex_volume(d) == doctest::Approx(6.0).epsilon(1e-14));
  Eigen::MatrixXd p(1, 1);
  p << 0;
  CHECK(simplex_volume(p) == 1.0);
  Eigen::MatrixXd e(2, 2);
  e << 0, 2.5, 2.5, 0;
  CHECK(simplex_volume(e) == doctest::Approx(2.5));
}

TEST_CASE("Cayley-Menger volumes agree with the Gram determinant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const int j = 1 + t % 4;
    std::vector<std::vector<double>> pts(j + 1, std::vector<double>(5));
    for (auto& p : pts)
      for (double& x : p) x = g(rng);
    const double expect = oracle::embedded_volume(pts);
    const Eigen::MatrixXd d = distances_of(pts);
    double diam = d.maxCoeff();
    if (expect / std::pow(diam, j) < 1e-4) continue;
    CHECK(simplex_volume(d) == doctest::Approx(expect).epsilon(1e-8));
    ++checked;
  }
  CHECK(checked > 900);
  // Regular tetrahedron of edge 1: sqrt(2) / 12.
  Eigen::MatrixXd reg = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  CHECK(simplex_volume(reg) == doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-12));
}

TEST_CASE("thickness is scale invariant and bounded by 1 for j >= 1") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> pts(4, std::vector<double>(3));
    for (auto& p : pts)
      for (double& x : p) x = g(rng);
    const Eigen::MatrixXd d = distances_of(pts);
    const double th = thickness(d);
    CHECK(th >= 0.0);
    CHECK(th <= 1.0);
    CHECK(thickness(d * 7.5) == doctest::Approx(th).epsilon(1e-9));
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  CHECK(thickness(tri) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
}

TEST_CASE("near-collinear triangle is flagged thin") {
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {0.5, 0.01}};
  const Eigen::MatrixXd d = distances_of(pts);
  const double th = thickness(d);
  CHECK(th == doctest::Approx(0.005).epsilon(1e-6));
  CHECK(th < 0.032);
  const std::vector<std::vector<double>> flat{{0, 0}, {1, 0}, {2, 0}};
  const SimplexMeasure m = simplex_measure(distances_of(flat));
  CHECK(m.degenerate);
  CHECK(m.volume == 0.0);
  CHECK_FALSE(min_dihedral_angle(distances_of(flat)).has_value());
}

TEST_CASE("non-realizable distances are degenerate") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  const SimplexMeasure m = simplex_measure(d);
  CHECK(m.degenerate);
  CHECK(m.volume == 0.0);
}

TEST_CASE("dihedral angles") {
  Eigen::MatrixXd tri = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  CHECK(*min_dihedral_angle(tri) == doctest::Approx(pi / 3).epsilon(1e-12));
  Eigen::MatrixXd reg = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  CHECK(*min_dihedral_angle(reg) == doctest::Approx(std::acos(1.0 / 3)).epsilon(1e-10));
  const std::vector<std::vector<double>> right{{0, 0}, {3, 0}, {0, 4}};
  CHECK(*min_dihedral_angle(distances_of(right)) == doctest::Approx(std::atan2(3.0, 4.0)).epsilon(1e-12));
  Eigen::MatrixXd edge(2, 2);
  edge << 0, 1, 1, 0;
  CHECK_FALSE(min_dihedral_angle(edge).has_value());
}

TEST_CASE("flag complexes match exhaustive clique enumeration") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const int n = 5 + t % 16;
    const double p = 0.2 + 0.6 * (t % 5) / 4.0;
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) {
          adj[i][j] = adj[j][i] = true;
          edges.emplace_back(i, j);
        }
    const int cap = 1 + t % 4;
    const IntersectionPattern pat = pattern_from_edges(n, 1.0, edges);
    const SimplicialComplex k = flag_complex(pat, cap);
    const auto cliques = oracle::brute_cliques(n, adj, cap + 1);
    std::vector<std::vector<Simplex>> expect(cap + 1);
    for (const auto& c : cliques) expect[c.size() - 1].push_back(Simplex(c.begin(), c.end()));
    for (auto& level : expect) std::sort(level.begin(), level.end());
    for (int d = 0; d <= cap; ++d) {
      const std::vector<Simplex> got = d < static_cast<int>(k.simplices.size()) ? k.simplices[d] : std::vector<Simplex>{};
      CHECK(got == expect[d]);
    }
    // Downward closure.
    for (std::size_t d = 1; d < k.simplices.size(); ++d)
      for (const Simplex& s : k.simplices[d])
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
          CHECK(k.contains(face));
        }
  }
  CHECK_THROWS_AS(flag_complex(pattern_from_edges(2, 1.0, {}), 0), ValidationError);
}

TEST_CASE("four-cycle has no triangles") {
  const IntersectionPattern c4 = pattern_from_edges(4, 1.0, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const SimplicialComplex k = flag_complex(c4, 2);
  CHECK(k.count(0) == 4);
  CHECK(k.count(1) == 4);
  CHECK(k.count(2) == 0);
  CHECK(k.dimension() == 1);
}

TEST_CASE("triangulated sphere net") {
  const ModelSpace sphere(ModelKind::kSphere, 2, 1.0, {});
  const Sample smp = sphere.sample(20000, 6);
  const EpsilonNet net = build_net(sphere, smp, 0.3, 2);
  const IntersectionPattern pat = intersection_pattern(sphere, smp, net);
  const Triangulation tri = triangulate(sphere, smp, net, pat, 2, 0.1);
  CHECK(tri.complex.count(0) == net.size());
  CHECK(tri.complex.count(1) == pat.edges.size());
  CHECK(tri.complex.count(2) > 0);
  CHECK(tri.report.global_min > 0.0);
  CHECK(tri.report.global_min <= 1.0);
  std::size_t hist = 0;
  for (std::size_t h : tri.report.histogram) hist += h;
  CHECK(hist == tri.complex.count(2));
  for (const auto& f : tri.report.below_threshold) CHECK(f.thickness < 0.1);
  // Thickness entries agree with a direct recomputation.
  for (std::size_t i = 0; i < tri.complex.count(2); i += 17) {
    const Eigen::MatrixXd d = simplex_distances(sphere, smp, net, tri.complex.simplices[2][i]);
    CHECK(tri.report.thickness[2][i] == doctest::Approx(thickness(d)).epsilon(1e-12));
  }
}
