#include "epsnet/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "epsnet/errors.hpp"
#include "epsnet/parallel.hpp"

namespace epsnet {
namespace {

// Squared normalized volume below this is treated as flat.
constexpr double kFlatTolerance = 1e-13;
// Cayley-Menger values below minus this are not realizable.
constexpr double kRealizabilityTolerance = 1e-10;

void extend_cliques(const IntersectionPattern& pattern, int dim_cap, Simplex& clique,
                    const std::vector<std::uint32_t>& candidates, SimplicialComplex& out) {
  const int dim = static_cast<int>(clique.size()) - 1;
  out.simplices[dim].push_back(clique);
  if (dim == dim_cap) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::uint32_t v = candidates[i];
    std::vector<std::uint32_t> next;
    const auto& nb = pattern.adjacency[v];
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                          nb.begin(), nb.end(), std::back_inserter(next));
    clique.push_back(v);
    extend_cliques(pattern, dim_cap, clique, next, out);
    clique.pop_back();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Eigen::MatrixXd sub_matrix(const Eigen::MatrixXd& d, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) s(a, b) = d(idx[a], idx[b]);
  }
  return s;
}

void check_distance_matrix(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols() || d.rows() == 0)
    throw ValidationError("simplex distance matrix must be square and nonempty");
}

}  // namespace

int SimplicialComplex::dimension() const {
  for (int d = static_cast<int>(simplices.size()) - 1; d >= 0; --d) {
    if (!simplices[d].empty()) return d;
  }
  return -1;
}

std::size_t SimplicialComplex::count(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(simplices.size())) return 0;
  return simplices[dim].size();
}

bool SimplicialComplex::contains(const Simplex& s) const {
  const int dim = static_cast<int>(s.size()) - 1;
  if (dim < 0 || dim >= static_cast<int>(simplices.size())) return false;
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  return std::binary_search(simplices[dim].begin(), simplices[dim].end(), sorted);
}

SimplicialComplex flag_complex(const IntersectionPattern& pattern, int dim_cap) {
  if (dim_cap < 1) throw ValidationError("dimension cap must be >= 1");
  SimplicialComplex c;
  c.num_vertices = pattern.num_vertices;
  c.dim_cap = dim_cap;
  c.simplices.assign(dim_cap + 1, {});
  Simplex clique;
  for (std::uint32_t v = 0; v < pattern.num_vertices; ++v) {
    std::vector<std::uint32_t> upper;
    for (std::uint32_t w : pattern.adjacency[v]) {
      if (w > v) upper.push_back(w);
    }
    clique.assign(1, v);
    extend_cliques(pattern, dim_cap, clique, upper, c);
  }
  for (auto& level : c.simplices) std::sort(level.begin(), level.end());
  while (c.simplices.size() > 1 && c.simplices.back().empty()) c.simplices.pop_back();
  return c;
}

SimplexMeasure simplex_measure(const Eigen::MatrixXd& distances) {
  check_distance_matrix(distances);
  const int j = static_cast<int>(distances.rows()) - 1;
  if (j == 0) return {1.0, false};
  if (j == 1) return {distances(0, 1), distances(0, 1) <= 0.0};
  const double scale = distances.maxCoeff();
  if (!(scale > 0.0)) return {0.0, true};

  // Bordered matrix of squared normalized distances.
  Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(j + 2, j + 2);
  cm(0, 0) = 0.0;
  for (int a = 0; a <= j; ++a) {
    for (int b = 0; b <= j; ++b) {
      const double d = distances(a, b) / scale;
      cm(a + 1, b + 1) = d * d;
    }
  }
  const double det = cm.fullPivLu().determinant();
  const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
  const double vol2 = sign * det / (std::pow(2.0, j) * factorial(j) * factorial(j));
  if (vol2 < -kRealizabilityTolerance || vol2 <= kFlatTolerance) return {0.0, true};
  return {std::sqrt(vol2) * std::pow(scale, j), false};
}

double simplex_volume(const Eigen::MatrixXd& distances) { return simplex_measure(distances).volume; }

double thickness(const Eigen::MatrixXd& distances) {
  check_distance_matrix(distances);
  const int n = static_cast<int>(distances.rows());
  double best = 1.0;
  std::vector<int> idx;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    idx.clear();
    for (int v = 0; v < n; ++v) {
      if (mask & (1u << v)) idx.push_back(v);
    }
    const int j = static_cast<int>(idx.size()) - 1;
    if (j < 2) continue;  // vertices and edges contribute exactly 1
    const Eigen::MatrixXd face = sub_matrix(distances, idx);
    const double diam = face.maxCoeff();
    const SimplexMeasure m = simplex_measure(face);
    const double ratio = m.degenerate || !(diam > 0.0) ? 0.0 : m.volume / std::pow(diam, j);
    best = std::min(best, ratio);
  }
  return best;
}

std::optional<double> min_dihedral_angle(const Eigen::MatrixXd& distances) {
  check_distance_matrix(distances);
  const int j = static_cast<int>(distances.rows()) - 1;
  if (j < 2) return std::nullopt;
  if (simplex_measure(distances).degenerate) return std::nullopt;
  const double scale = distances.maxCoeff();
  // Gram matrix of edge vectors from vertex 0; rows of its inverse are the inward
  // facet normals (dual basis), with the normal opposite vertex 0 minus their sum.
  Eigen::MatrixXd gram(j, j);
  for (int a = 1; a <= j; ++a) {
    for (int b = 1; b <= j; ++b) {
      const double d0a = distances(0, a) / scale;
      const double d0b = distances(0, b) / scale;
      const double dab = distances(a, b) / scale;
      gram(a - 1, b - 1) = 0.5 * (d0a * d0a + d0b * d0b - dab * dab);
    }
  }
  const Eigen::MatrixXd inv = gram.inverse();
  Eigen::MatrixXd normals(j + 1, j + 1);
  normals.bottomRightCorner(j, j) = inv;
  const Eigen::VectorXd col_sums = inv.colwise().sum().transpose();
  normals.block(1, 0, j, 1) = -col_sums;
  normals.block(0, 1, 1, j) = -col_sums.transpose();
  normals(0, 0) = inv.sum();
  double best = std::numbers::pi;
  for (int a = 0; a <= j; ++a) {
    for (int b = a + 1; b <= j; ++b) {
      const double c = -normals(a, b) / std::sqrt(normals(a, a) * normals(b, b));
      best = std::min(best, std::acos(std::clamp(c, -1.0, 1.0)));
    }
  }
  return best;
}

Eigen::MatrixXd simplex_distances(const MetricMeasureSpace& space, const Sample& sample,
                                  const EpsilonNet& net, const Simplex& simplex) {
  const auto n = static_cast<Eigen::Index>(simplex.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      d(a, b) = d(b, a) = center_distance(space, sample, net, simplex[a], simplex[b]);
    }
  }
  return d;
}

Triangulation triangulate(const MetricMeasureSpace& space, const Sample& sample,
                          const EpsilonNet& net, const IntersectionPattern& pattern, int dim_cap,
                          double thickness_threshold) {
  if (pattern.num_vertices != net.size())
    throw ValidationError("pattern and net have different vertex counts");
  Triangulation t;
  if (const auto conv = space.convexity_radius()) {
    if (net.eps > *conv) {
      std::ostringstream msg;
      msg << "eps = " << net.eps << " exceeds the convexity radius " << *conv;
      t.warnings.push_back(msg.str());
    }
  } else {
    t.warnings.emplace_back("convexity radius unknown for this space; check skipped");
  }
  t.complex = flag_complex(pattern, dim_cap);
  const auto& simplices = t.complex.simplices;
  ThicknessReport& rep = t.report;
  rep.threshold = thickness_threshold;
  rep.histogram.assign(10, 0);
  rep.thickness.resize(simplices.size());

  // Faces of higher simplices, to recognize maximal ones for the dihedral summary.
  std::vector<std::set<Simplex>> non_maximal(simplices.size());
  for (std::size_t d = 1; d < simplices.size(); ++d) {
    for (const Simplex& s : simplices[d]) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t v = 0; v < s.size(); ++v) {
          if (v != drop) f.push_back(s[v]);
        }
        non_maximal[d - 1].insert(std::move(f));
      }
    }
  }

  for (std::size_t d = 0; d < simplices.size(); ++d) {
    const auto& level = simplices[d];
    std::vector<double>& phi = rep.thickness[d];
    phi.assign(level.size(), 1.0);
    std::vector<std::optional<double>> angles(level.size());
    std::vector<char> degenerate(level.size(), 0);
    if (d >= 2) {
      parallel_for(level.size(), [&](std::size_t i) {
        const Eigen::MatrixXd dist = simplex_distances(space, sample, net, level[i]);
        phi[i] = thickness(dist);
        degenerate[i] = simplex_measure(dist).degenerate ? 1 : 0;
        if (!non_maximal[d].contains(level[i])) angles[i] = min_dihedral_angle(dist);
      });
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      rep.global_min = std::min(rep.global_min, phi[i]);
      if (d >= 2) {
        const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(phi[i] * 10.0));
        ++rep.histogram[bin];
      }
      rep.degenerate_count += degenerate[i];
      if (angles[i]) {
        rep.min_dihedral_angle =
            rep.min_dihedral_angle ? std::min(*rep.min_dihedral_angle, *angles[i]) : *angles[i];
      }
      if (phi[i] < thickness_threshold) rep.below_threshold.push_back({static_cast<int>(d), i, phi[i]});
    }
  }
  return t;
}

}  // namespace epsnet
