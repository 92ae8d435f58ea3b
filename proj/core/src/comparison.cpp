#include "epsnet/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "epsnet/errors.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/quadrature.hpp"

namespace epsnet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kConstantGrid = 512;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

ComparisonProfile::ComparisonProfile(double K, double N) : K_(K), N_(N) {
  if (!std::isfinite(K)) throw ValidationError("K must be finite");
  if (!(N >= 1.0) || !std::isfinite(N)) throw ValidationError("N must be a finite real >= 1");
  if (N == 1.0) {
    if (K > 0.0) throw DomainError("the comparison profile is undefined for K > 0 and N = 1");
    scale_ = 0.0;
    limit_ = std::numeric_limits<double>::infinity();
    closed_ = true;
    return;
  }
  scale_ = std::sqrt(std::abs(K) / (N - 1.0));
  limit_ = K > 0.0 ? kPi / scale_ : std::numeric_limits<double>::infinity();
  closed_ = K == 0.0 || N == 2.0;
}

void ComparisonProfile::check_domain(double t, const char* what) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + " must be finite and >= 0");
  }
  if (t > limit_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << what << " = " << t << " exceeds the comparison domain [0, " << limit_
        << "] for K = " << K_ << ", N = " << N_;
    throw DomainError(msg.str());
  }
}

double ComparisonProfile::value(double t) const {
  check_domain(t, "t");
  if (N_ == 1.0) return 1.0;
  if (K_ == 0.0) return std::pow(t, N_ - 1.0);
  const double s = K_ > 0.0 ? std::max(0.0, std::sin(scale_ * t)) : std::sinh(scale_ * t);
  return std::pow(s, N_ - 1.0);
}

double ComparisonProfile::integral(double r) const {
  check_domain(r, "radius");
  r = std::min(r, limit_);
  if (N_ == 1.0) return r;
  if (K_ == 0.0) return std::pow(r, N_) / N_;
  if (N_ == 2.0) {
    const double h = K_ > 0.0 ? std::sin(0.5 * scale_ * r) : std::sinh(0.5 * scale_ * r);
    return 2.0 * h * h / scale_;
  }
  const double a = scale_;
  const double e = N_ - 1.0;
  const bool positive = K_ > 0.0;
  // The sine profile is symmetric about limit/2, so only [0, limit/2] is ever integrated.
  if (positive && r > 0.5 * limit_) return 2.0 * integral(0.5 * limit_) - integral(limit_ - r);
  // t = r u^4 smooths the t^{N-1} behaviour at the origin.
  return adaptive_simpson(
      [a, e, positive, r](double u) {
        const double u2 = u * u;
        const double t = r * u2 * u2;
        const double s = positive ? std::max(0.0, std::sin(a * t)) : std::sinh(a * t);
        return std::pow(s, e) * 4.0 * r * u2 * u;
      },
      0.0, 1.0);
}

double ComparisonProfile::integral_ratio(double R, double r) const {
  check_domain(R, "outer radius");
  check_domain(r, "inner radius");
  if (!(r > 0.0)) throw DomainError("inner radius of a comparison ratio must be > 0");
  if (K_ == 0.0) return std::pow(R / r, N_);
  return integral(R) / integral(r);
}

double s_profile(double K, double N, double t) { return ComparisonProfile(K, N).value(t); }

double s_integral(double K, double N, double r) { return ComparisonProfile(K, N).integral(r); }

long long floor_bound(double ratio) {
  if (!std::isfinite(ratio)) throw DomainError("bound ratio is not finite");
  double n = std::floor(ratio);
  if ((n + 1.0) - ratio <= 1e-12 * std::max(1.0, ratio)) n += 1.0;
  return static_cast<long long>(n);
}

namespace {

ComparisonProfile profile_for(const CurvatureDimensionData& cd, double scale,
                              const char* name = "eps") {
  cd.validate();
  require_positive(scale, name);
  ComparisonProfile profile(cd.K, cd.N);
  profile.check_domain(cd.D, "D");
  return profile;
}

long long ratio_bound(const ComparisonProfile& profile, double outer, double eps) {
  return std::max<long long>(1, floor_bound(profile.integral_ratio(outer, 0.5 * eps)));
}

void require_nonpositive_K(const CurvatureDimensionData& cd) {
  if (cd.K > 0.0) {
    throw RegimeError("net-in-ball and degree bounds are stated for K <= 0 only");
  }
}

}  // namespace

long long bound_n1(const CurvatureDimensionData& cd, double eps) {
  const auto profile = profile_for(cd, eps);
  return ratio_bound(profile, cd.D, eps);
}

long long bound_n2(const CurvatureDimensionData& cd, double eps) {
  const auto profile = profile_for(cd, eps);
  return ratio_bound(profile, 4.5 * eps, eps);
}

long long bound_n_prime(const CurvatureDimensionData& cd, double eps, double C) {
  const auto profile = profile_for(cd, eps);
  if (!(C >= 1.0) || !std::isfinite(C)) throw ValidationError("C must be a finite real >= 1");
  const double k = std::ceil(C - 1e-12);
  return ratio_bound(profile, (4.0 * k + 1.0) * 0.5 * eps, eps);
}

long long bound_n3(const CurvatureDimensionData& cd, double eps, double C) {
  return 2 * (bound_n_prime(cd, eps, C) - 1);
}

long long bound_net_in_ball(const CurvatureDimensionData& cd, double eps, double r) {
  require_nonpositive_K(cd);
  const auto profile = profile_for(cd, eps);
  require_positive(r, "r");
  return ratio_bound(profile, 2.0 * r + 0.5 * eps, eps);
}

long long bound_degree(const CurvatureDimensionData& cd, double eps, double r) {
  require_nonpositive_K(cd);
  const auto profile = profile_for(cd, eps);
  require_positive(r, "r");
  return ratio_bound(profile, 4.0 * r + 0.5 * eps, eps);
}

double doubling_constant(const CurvatureDimensionData& cd, double R) {
  const auto profile = profile_for(cd, R, "R");
  profile.check_domain(2.0 * R, "2R");
  if (cd.K == 0.0 || cd.N == 1.0) return std::pow(2.0, cd.N);
  // For K != 0 the ratio I(2r)/I(r) is monotone in r and tends to 2^N at 0+, so the
  // supremum is attained at one end; the grid scan also covers the interior.
  double best = std::pow(2.0, cd.N);
  for (int i = 1; i <= kConstantGrid; ++i) {
    const double r = R * i / kConstantGrid;
    best = std::max(best, profile.integral(2.0 * r) / profile.integral(r));
  }
  return best;
}

double small_ball_constant(const CurvatureDimensionData& cd, double R) {
  const auto profile = profile_for(cd, R, "R");
  profile.check_domain(2.0 * R, "2R");
  const double outer = profile.integral(2.0 * R);
  if (cd.K == 0.0 || cd.N == 1.0) {
    // I(r) / r^N is the constant 1/N (or 1 for N = 1).
    const double per_r = cd.N == 1.0 ? 1.0 : 1.0 / cd.N;
    return per_r / outer;
  }
  // I(r)/r^N is monotone: increasing for K < 0, decreasing for K > 0. Its limit at 0+ is
  // a^{N-1}/N, a = sqrt(|K|/(N-1)).
  const double a = std::sqrt(std::abs(cd.K) / (cd.N - 1.0));
  double worst = std::pow(a, cd.N - 1.0) / cd.N;
  for (int i = 1; i <= kConstantGrid; ++i) {
    const double r = R * i / kConstantGrid;
    worst = std::min(worst, profile.integral(r) / std::pow(r, cd.N));
  }
  return worst / outer;
}

PackingBounds packing_bounds(const CurvatureDimensionData& cd, double eps,
                             std::span<const double> Cs, double r) {
  PackingBounds b;
  b.n1 = bound_n1(cd, eps);
  b.n2 = bound_n2(cd, eps);
  for (double C : Cs) b.n3[C] = bound_n3(cd, eps, C);
  if (cd.K <= 0.0) {
    b.net_card_bound = bound_net_in_ball(cd, eps, r);
    b.degree_bound = bound_degree(cd, eps, r);
  } else {
    b.notes.emplace_back("net_card_bound and degree_bound require K <= 0");
  }
  const double R = 0.5 * cd.D;
  b.doubling_constant = doubling_constant(cd, R);
  b.small_ball_constant = small_ball_constant(cd, R);
  b.domain_limit = ComparisonProfile(cd.K, cd.N).domain_limit();
  b.notes.emplace_back(
      "doubling and small-ball constants use R = D/2; small_ball_c follows from "
      "Bishop-Gromov between radii r and 2R around x, using B(x,2R) containing B(z,R)");
  return b;
}

MonotonicityReport bishop_gromov_check(const MetricMeasureSpace& space,
                                       std::span<const double> center,
                                       std::span<const double> r_grid, std::size_t budget,
                                       std::uint64_t seed, MeasureMode mode, double sigma) {
  if (r_grid.empty()) throw ValidationError("radius grid is empty");
  const auto& cd = space.cd_data();
  const ComparisonProfile profile(cd.K, cd.N);
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0)) throw ValidationError("grid radii must be > 0");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw ValidationError("grid must be increasing");
    profile.check_domain(r_grid[i], "grid radius");
  }

  MonotonicityReport rep;
  rep.radii.assign(r_grid.begin(), r_grid.end());
  rep.monte_carlo = mode == MeasureMode::kMonteCarlo;
  rep.sigma_multiplier = sigma;
  const std::size_t m = r_grid.size();
  rep.ball_measures.resize(m);
  rep.standard_errors.assign(m, 0.0);

  if (mode == MeasureMode::kExact) {
    for (std::size_t i = 0; i < m; ++i) {
      rep.ball_measures[i] = space.ball_measure(center, r_grid[i], budget, seed);
    }
  } else {
    if (budget == 0) throw ValidationError("Monte-Carlo budget must be positive");
    const Sample s = space.sample(budget, derive_seed(seed, Stream::kBallMeasure));
    const std::size_t n = s.size();
    std::vector<double> dist(n);
    parallel_for(n, [&](std::size_t j) { dist[j] = space.distance(center, s.points[j]); });
    std::vector<double> hits(n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) hits[j] = dist[j] < r_grid[i] ? s.weights[j] : 0.0;
      const double value = compensated_sum(hits);
      const double mean = value / static_cast<double>(n);
      double ss = 0.0;
      for (double h : hits) ss += (h - mean) * (h - mean);
      const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
      rep.ball_measures[i] = value;
      rep.standard_errors[i] = std::sqrt(var * static_cast<double>(n));
    }
  }

  rep.phi.resize(m);
  std::vector<double> phi_se(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double denom = profile.integral(r_grid[i]);
    rep.phi[i] = rep.ball_measures[i] / denom;
    phi_se[i] = rep.standard_errors[i] / denom;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double inc = rep.phi[i + 1] - rep.phi[i];
    if (inc <= 0.0) continue;
    MonotonicityIncrease e;
    e.index = i;
    e.r_from = r_grid[i];
    e.r_to = r_grid[i + 1];
    e.magnitude = inc;
    e.tolerance = rep.monte_carlo
                      ? sigma * std::hypot(phi_se[i], phi_se[i + 1])
                      : 1e-9 * std::max(std::abs(rep.phi[i]), std::abs(rep.phi[i + 1]));
    e.significant = inc > e.tolerance;
    if (e.significant) rep.passed = false;
    rep.increases.push_back(e);
  }
  if (rep.phi[0] != 0.0) {
    for (double p : rep.phi) {
      rep.max_relative_drift = std::max(rep.max_relative_drift, std::abs(p - rep.phi[0]) / rep.phi[0]);
    }
  }
  return rep;
}

}  // namespace epsnet
