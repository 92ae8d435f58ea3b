#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "epsnet/nets.hpp"
#include "epsnet/spaces.hpp"

namespace epsnet {

using Simplex = std::vector<std::uint32_t>;

/// Simplices stored per dimension, each a sorted vertex tuple, each dimension in
/// lexicographic order. Downward closed.
struct SimplicialComplex {
  std::size_t num_vertices = 0;
  int dim_cap = 1;
  std::vector<std::vector<Simplex>> simplices;  // simplices[d] holds the d-simplices

  int dimension() const;
  std::size_t count(int dim) const;
  bool contains(const Simplex& s) const;
};

/// All cliques of the pattern graph with at most dim_cap + 1 vertices.
SimplicialComplex flag_complex(const IntersectionPattern& pattern, int dim_cap);

struct SimplexMeasure {
  double volume = 0.0;
  /// Not realizable in Euclidean space, or flat within tolerance.
  bool degenerate = false;
};

/// Euclidean j-volume of the simplex with the given (j+1) x (j+1) matrix of pairwise
/// distances, from the Cayley-Menger determinant. Dimension 0 has volume 1 by convention.
SimplexMeasure simplex_measure(const Eigen::MatrixXd& distances);
double simplex_volume(const Eigen::MatrixXd& distances);

/// min over faces sigma (all dimensions) of Vol_j(sigma) / diam(sigma)^j; 0-faces count 1.
double thickness(const Eigen::MatrixXd& distances);

/// Smallest dihedral angle (radians) of the Euclidean realization; nullopt for
/// dimensions < 2 or degenerate simplices.
std::optional<double> min_dihedral_angle(const Eigen::MatrixXd& distances);

struct FlaggedSimplex {
  int dim = 0;
  std::size_t index = 0;
  double thickness = 0.0;
};

struct ThicknessReport {
  /// thickness[d][i] for complex.simplices[d][i].
  std::vector<std::vector<double>> thickness;
  double global_min = 1.0;
  /// Ten equal-width bins over [0, 1], counting simplices of dimension >= 2.
  std::vector<std::size_t> histogram;
  /// Minimum dihedral angle over maximal simplices of dimension >= 2 (nullopt if none).
  std::optional<double> min_dihedral_angle;
  std::size_t degenerate_count = 0;
  double threshold = 0.0;
  std::vector<FlaggedSimplex> below_threshold;
};

struct Triangulation {
  SimplicialComplex complex;
  ThicknessReport report;
  std::vector<std::string> warnings;
};

/// Distance matrix of a simplex of net vertices, from ambient distances.
Eigen::MatrixXd simplex_distances(const MetricMeasureSpace& space, const Sample& sample,
                                  const EpsilonNet& net, const Simplex& simplex);

/// Flag complex plus thickness of every simplex from ambient edge lengths. Warns when eps
/// exceeds a known convexity radius of the space.
Triangulation triangulate(const MetricMeasureSpace& space, const Sample& sample,
                          const EpsilonNet& net, const IntersectionPattern& pattern, int dim_cap,
                          double thickness_threshold);

}  // namespace epsnet
