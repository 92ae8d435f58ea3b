#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsnet/spaces.hpp"

namespace epsnet {

/// The comparison density S_K^N of the generalized Bishop-Gromov inequality:
///   (sin(sqrt(K/(N-1)) t))^{N-1}   K > 0
///   t^{N-1}                        K = 0
///   (sinh(sqrt(-K/(N-1)) t))^{N-1} K < 0
/// For N = 1 the profile is identically 1 (only defined for K <= 0).
class ComparisonProfile {
 public:
  ComparisonProfile(double K, double N);

  double K() const noexcept { return K_; }
  double N() const noexcept { return N_; }

  /// Right end of the domain: pi sqrt((N-1)/K) for K > 0, +infinity otherwise.
  double domain_limit() const noexcept { return limit_; }
  /// True when the integral is evaluated in closed form (K = 0, N = 1 or N = 2).
  bool closed_form() const noexcept { return closed_; }

  double value(double t) const;
  /// int_0^r S_K^N(t) dt. Adaptive Simpson in u with t = r u^4 (absolute tolerance 1e-12,
  /// floored at relative 1e-14; depth 60) unless a closed form applies.
  double integral(double r) const;
  /// integral(R) / integral(r), closed form (R/r)^N for K = 0.
  double integral_ratio(double R, double r) const;

  /// Throws DomainError when t < 0 or t exceeds the domain.
  void check_domain(double t, const char* what) const;

 private:
  double K_;
  double N_;
  double scale_;  // sqrt(|K| / (N - 1))
  double limit_;
  bool closed_;
};

double s_profile(double K, double N, double t);
double s_integral(double K, double N, double r);

/// Floor for counting bounds, snapping values within relative 1e-12 below an integer up to
/// it so that rounding never lowers an upper bound.
long long floor_bound(double ratio);

/// n1: [int_0^D S / int_0^{eps/2} S], the bound on the size of a minimal eps-net.
long long bound_n1(const CurvatureDimensionData& cd, double eps);
/// n2: floor of h(eps) = int_0^{9 eps/2} S / int_0^{eps/2} S, the overlap bound.
long long bound_n2(const CurvatureDimensionData& cd, double eps);
/// n'(C) with k = ceil(C): floor of int_0^{(4k+1) eps/2} S / int_0^{eps/2} S.
long long bound_n_prime(const CurvatureDimensionData& cd, double eps, double C);
/// n3(C) = 2 (n'(C) - 1).
long long bound_n3(const CurvatureDimensionData& cd, double eps, double C);
/// |N cap B(x, r)| <= int_0^{2r + eps/2} S / int_0^{eps/2} S. Requires K <= 0.
long long bound_net_in_ball(const CurvatureDimensionData& cd, double eps, double r);
/// rho(p) <= int_0^{4r + eps/2} S / int_0^{eps/2} S. Requires K <= 0.
long long bound_degree(const CurvatureDimensionData& cd, double eps, double r);

/// C(K,N,R) = sup_{0<r<R} int_0^{2r} S / int_0^r S.
double doubling_constant(const CurvatureDimensionData& cd, double R);
/// c(K,N,R) = inf_{0<r<=R} int_0^r S / (r^N int_0^{2R} S), so that
/// nu[B(x,r)] >= c nu[B(z,R)] r^N whenever B(x,r) is inside B(z,R)
/// (Bishop-Gromov between radii r and 2R around x, with B(x,2R) containing B(z,R)).
double small_ball_constant(const CurvatureDimensionData& cd, double R);

/// Every constant at once, as reported by the `bounds` command.
struct PackingBounds {
  long long n1 = 0;
  long long n2 = 0;
  std::map<double, long long> n3;  // keyed by C
  std::optional<long long> net_card_bound;
  std::optional<long long> degree_bound;
  double doubling_constant = 0.0;
  double small_ball_constant = 0.0;
  double domain_limit = 0.0;
  std::vector<std::string> notes;
};

/// Computes the packing bounds at (eps, r) for each C in `Cs`. The net-in-ball and degree
/// bounds are left empty (with a note) for K > 0; doubling and small-ball constants use R = D/2.
PackingBounds packing_bounds(const CurvatureDimensionData& cd, double eps,
                             std::span<const double> Cs, double r);

// Bishop-Gromov monotonicity ------------------------------------------------------

struct MonotonicityIncrease {
  std::size_t index = 0;  // phi[index + 1] > phi[index]
  double r_from = 0.0;
  double r_to = 0.0;
  double magnitude = 0.0;
  double tolerance = 0.0;
  bool significant = false;
};

struct MonotonicityReport {
  std::vector<double> radii;
  std::vector<double> ball_measures;
  std::vector<double> standard_errors;
  std::vector<double> phi;
  std::vector<MonotonicityIncrease> increases;
  bool monte_carlo = false;
  double sigma_multiplier = 3.0;
  bool passed = true;
  /// max |phi - phi[0]| / phi[0] over the grid.
  double max_relative_drift = 0.0;
};

enum class MeasureMode {
  kExact,       // closed-form ball measures where the space provides them
  kMonteCarlo,  // one shared sample of `budget` points for every radius
};

/// phi(r) = nu[B(center, r)] / int_0^r S_K^N on an increasing grid. An increase between
/// adjacent radii is significant when it exceeds `sigma` combined standard errors
/// (Monte-Carlo) or relative 1e-9 (exact).
MonotonicityReport bishop_gromov_check(const MetricMeasureSpace& space,
                                       std::span<const double> center,
                                       std::span<const double> r_grid, std::size_t budget,
                                       std::uint64_t seed, MeasureMode mode,
                                       double sigma = 3.0);

}  // namespace epsnet
