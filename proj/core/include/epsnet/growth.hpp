#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsnet/discretization.hpp"
#include "epsnet/spaces.hpp"

namespace epsnet {

enum class GrowthType { kPolynomial, kExponential, kInconclusive };

const char* to_string(GrowthType type) noexcept;

struct GrowthOptions {
  /// Fraction of the smallest radii left out of both fits.
  double discard_fraction = 0.2;
  /// A fit wins only if its residual norm times (1 + margin) is below the other's.
  double dominance_margin = 0.25;
  /// Use limsup V(r)/r > 0 as the exponential criterion instead of limsup log V(r)/r > 0.
  bool literal_criterion = false;
  std::optional<double> r0;
  std::optional<double> V0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  std::size_t points = 0;
};

struct NonCollapsing {
  double r0 = 0.0;
  double V0 = 0.0;
  double measured = 0.0;
  bool holds = false;
};

struct GrowthReport {
  std::vector<double> radii;
  std::vector<double> volumes;
  LineFit polynomial;   // log V against log r; slope is the exponent k
  LineFit exponential;  // log V against r; slope is the rate
  GrowthType type = GrowthType::kInconclusive;
  std::optional<NonCollapsing> non_collapsing;
  /// V(r_max) / r_max, the quantity of the literal criterion.
  double literal_ratio = 0.0;
  bool literal_criterion = false;
  std::vector<std::string> warnings;
};

/// Growth of V(x, r) = nu[B(x, r)] (open balls) estimated from a weighted sample.
/// Radii beyond half the sample diameter are dropped with a warning.
GrowthReport growth_profile(const MetricMeasureSpace& space, const Sample& sample,
                            std::span<const double> base, std::span<const double> radii,
                            const GrowthOptions& options = {});

/// Growth of the counting measure |{v : d_hat(base, v) <= r}| on a graph. Radii beyond half
/// the diameter of the base vertex's component are dropped with a warning.
GrowthReport growth_profile(const DiscretizationGraph& graph, std::size_t base,
                            std::span<const double> radii, const GrowthOptions& options = {});

/// Largest hop count h such that every vertex within h hops of `base` lies within ambient
/// distance r of it; matches a graph radius grid to the space grid (0, r].
std::size_t hop_radius_within(const MetricMeasureSpace& space, const Sample& sample,
                              const DiscretizationGraph& graph, std::size_t base, double r);

/// Hop radii 1..h_max, thinned to at most n evenly spaced integers.
std::vector<double> hop_radii(std::size_t h_max, std::size_t n);

/// Fits and classifies a precomputed profile.
GrowthReport classify_growth(std::vector<double> radii, std::vector<double> volumes,
                             const GrowthOptions& options = {});

enum class Agreement { kAgree, kDisagree, kUndetermined };

const char* to_string(Agreement verdict) noexcept;

struct AgreementVerdict {
  Agreement verdict = Agreement::kUndetermined;
  GrowthType first = GrowthType::kInconclusive;
  GrowthType second = GrowthType::kInconclusive;
};

/// Compares growth types (not exponents or rates).
AgreementVerdict growth_agreement(const GrowthReport& a, const GrowthReport& b);

/// n points evenly spaced on (0, r_max].
std::vector<double> linear_radii(double r_max, std::size_t n);

}  // namespace epsnet
