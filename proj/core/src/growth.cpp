#include "epsnet/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epsnet/errors.hpp"
#include "epsnet/parallel.hpp"

namespace epsnet {
namespace {

void check_grid(std::span<const double> radii) {
  if (radii.size() < 2) throw ValidationError("growth grid needs at least 2 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw ValidationError("growth radii must be positive and finite");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ValidationError("growth radii must be increasing");
  }
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit fit;
  fit.points = x.size();
  if (x.empty()) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

// Drops radii above `cap`, keeping at least the first two.
void cap_radii(std::vector<double>& radii, double cap, const char* what,
               std::vector<std::string>& warnings) {
  std::size_t keep = radii.size();
  while (keep > 2 && radii[keep - 1] > cap) --keep;
  if (keep < radii.size()) {
    warnings.push_back(std::to_string(radii.size() - keep) + " radii beyond half the " + what +
                       " diameter (" + std::to_string(cap) + ") dropped");
    radii.resize(keep);
  }
}

GrowthReport finish(std::vector<double> radii, std::vector<double> volumes,
                    std::vector<std::string> warnings, const GrowthOptions& options) {
  GrowthReport rep = classify_growth(std::move(radii), std::move(volumes), options);
  warnings.insert(warnings.end(), rep.warnings.begin(), rep.warnings.end());
  rep.warnings = std::move(warnings);
  return rep;
}

}  // namespace

const char* to_string(GrowthType type) noexcept {
  switch (type) {
    case GrowthType::kPolynomial: return "polynomial";
    case GrowthType::kExponential: return "exponential";
    case GrowthType::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(Agreement verdict) noexcept {
  switch (verdict) {
    case Agreement::kAgree: return "agree";
    case Agreement::kDisagree: return "disagree";
    case Agreement::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

std::vector<double> linear_radii(double r_max, std::size_t n) {
  if (!(r_max > 0.0) || n < 2) throw ValidationError("linear_radii needs r_max > 0 and n >= 2");
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(n);
  return r;
}

std::size_t hop_radius_within(const MetricMeasureSpace& space, const Sample& sample,
                              const DiscretizationGraph& graph, std::size_t base, double r) {
  const auto hops = bfs_distances(graph, base);
  const auto origin = sample.points[graph.vertices[base]];
  int ecc = 0;
  int limit = std::numeric_limits<int>::max();
  for (std::size_t v = 0; v < hops.size(); ++v) {
    if (hops[v] < 0) continue;
    ecc = std::max(ecc, hops[v]);
    if (hops[v] <= limit && space.distance(origin, sample.points[graph.vertices[v]]) > r) limit = hops[v] - 1;
  }
  return static_cast<std::size_t>(std::min(ecc, limit));
}

std::vector<double> hop_radii(std::size_t h_max, std::size_t n) {
  if (h_max < 2 || n < 2) throw ValidationError("hop grid needs h_max >= 2 and n >= 2");
  std::vector<double> r;
  const std::size_t m = std::min(h_max, n);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto h = static_cast<double>((i * h_max + m - 1) / m);
    if (r.empty() || h > r.back()) r.push_back(h);
  }
  return r;
}

GrowthReport classify_growth(std::vector<double> radii, std::vector<double> volumes,
                             const GrowthOptions& options) {
  check_grid(radii);
  if (volumes.size() != radii.size()) throw ValidationError("radii and volumes differ in length");
  if (!(options.discard_fraction >= 0.0 && options.discard_fraction < 1.0))
    throw ValidationError("discard_fraction must lie in [0, 1)");
  if (!(options.dominance_margin >= 0.0)) throw ValidationError("dominance_margin must be >= 0");

  GrowthReport rep;
  rep.radii = std::move(radii);
  rep.volumes = std::move(volumes);
  rep.literal_criterion = options.literal_criterion;
  rep.literal_ratio = rep.volumes.back() / rep.radii.back();

  const std::size_t n = rep.radii.size();
  std::size_t first = static_cast<std::size_t>(std::floor(options.discard_fraction * static_cast<double>(n)));
  first = std::min(first, n - 2);
  std::vector<double> lr, r, lv;
  std::size_t zeros = 0;
  for (std::size_t i = first; i < n; ++i) {
    if (!(rep.volumes[i] > 0.0)) {
      ++zeros;
      continue;
    }
    lr.push_back(std::log(rep.radii[i]));
    r.push_back(rep.radii[i]);
    lv.push_back(std::log(rep.volumes[i]));
  }
  if (zeros > 0) rep.warnings.push_back(std::to_string(zeros) + " zero volumes excluded from the fits");
  rep.polynomial = fit_line(lr, lv);
  rep.exponential = fit_line(r, lv);

  if (lv.size() < 3) {
    rep.warnings.push_back("fewer than 3 usable radii; classification inconclusive");
    return rep;
  }
  const auto [vmin, vmax] = std::minmax_element(lv.begin(), lv.end());
  if (*vmax - *vmin <= 1e-12 * std::max(1.0, std::abs(*vmax))) {
    rep.warnings.push_back("volume is constant over the fit window");
    return rep;
  }
  const double m = 1.0 + options.dominance_margin;
  if (rep.polynomial.rms * m < rep.exponential.rms) {
    rep.type = GrowthType::kPolynomial;
  } else if (rep.exponential.rms * m < rep.polynomial.rms) {
    rep.type = GrowthType::kExponential;
  }
  if (options.literal_criterion && rep.literal_ratio > 0.0) {
    rep.type = GrowthType::kExponential;
  }
  return rep;
}

GrowthReport growth_profile(const MetricMeasureSpace& space, const Sample& sample,
                            std::span<const double> base, std::span<const double> radii,
                            const GrowthOptions& options) {
  check_grid(radii);
  if (sample.size() == 0) throw ValidationError("growth needs a non-empty sample");
  const std::size_t n = sample.size();
  std::vector<double> dist(n);
  parallel_for(n, [&](std::size_t i) { dist[i] = space.distance(base, sample.points[i]); });
  // Double sweep for the diameter.
  const std::size_t far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  std::vector<double> from_far(n);
  parallel_for(n, [&](std::size_t i) { from_far[i] = space.distance(sample.points[far], sample.points[i]); });
  const double diameter = std::max(dist[far], *std::max_element(from_far.begin(), from_far.end()));

  std::vector<std::string> warnings;
  std::vector<double> grid(radii.begin(), radii.end());
  cap_radii(grid, 0.5 * diameter, "sample", warnings);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<double> volumes(grid.size());
  std::size_t k = 0;
  std::vector<double> acc;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    while (k < n && dist[order[k]] < grid[g]) acc.push_back(sample.weights[order[k++]]);
    volumes[g] = compensated_sum(acc);
  }
  GrowthReport rep = finish(std::move(grid), std::move(volumes), std::move(warnings), options);
  if (options.r0 && options.V0) {
    std::vector<double> inside;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] < *options.r0) inside.push_back(sample.weights[i]);
    }
    const double measured = compensated_sum(inside);
    rep.non_collapsing = NonCollapsing{*options.r0, *options.V0, measured, measured >= *options.V0};
  }
  return rep;
}

GrowthReport growth_profile(const DiscretizationGraph& graph, std::size_t base,
                            std::span<const double> radii, const GrowthOptions& options) {
  check_grid(radii);
  const auto hops = bfs_distances(graph, base);
  int ecc = 0;
  std::size_t far = base;
  for (std::size_t v = 0; v < hops.size(); ++v) {
    if (hops[v] > ecc) {
      ecc = hops[v];
      far = v;
    }
  }
  const auto back = bfs_distances(graph, far);
  const int diameter = std::max(ecc, *std::max_element(back.begin(), back.end()));

  std::vector<std::string> warnings;
  std::vector<double> grid(radii.begin(), radii.end());
  cap_radii(grid, 0.5 * static_cast<double>(diameter), "graph", warnings);

  std::vector<std::size_t> shell(static_cast<std::size_t>(ecc) + 1, 0);
  for (int h : hops) {
    if (h >= 0) ++shell[static_cast<std::size_t>(h)];
  }
  auto ball = [&](double r) {
    double count = 0;
    for (std::size_t h = 0; h < shell.size() && static_cast<double>(h) <= r; ++h) count += static_cast<double>(shell[h]);
    return count;
  };
  std::vector<double> volumes(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) volumes[g] = ball(grid[g]);
  GrowthReport rep = finish(std::move(grid), std::move(volumes), std::move(warnings), options);
  if (options.r0 && options.V0) {
    const double measured = ball(*options.r0);
    rep.non_collapsing = NonCollapsing{*options.r0, *options.V0, measured, measured >= *options.V0};
  }
  return rep;
}

AgreementVerdict growth_agreement(const GrowthReport& a, const GrowthReport& b) {
  AgreementVerdict v;
  v.first = a.type;
  v.second = b.type;
  if (a.type == GrowthType::kInconclusive || b.type == GrowthType::kInconclusive) {
    v.verdict = Agreement::kUndetermined;
  } else {
    v.verdict = a.type == b.type ? Agreement::kAgree : Agreement::kDisagree;
  }
  return v;
}

}  // namespace epsnet
