#include "epsnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace epsnet {
namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  // The second test stops refinement once the difference is at rounding level.
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= 1e-14 * std::abs(left + right)) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options) {
  if (a == b) return 0.0;
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  std::vector<Panel> panels;
  panels.reserve(kPanels);
  double coarse = 0.0;
  double fa = f(a);
  for (int i = 0; i < kPanels; ++i) {
    const double pa = a + i * h;
    const double pb = (i + 1 == kPanels) ? b : a + (i + 1) * h;
    const double pm = 0.5 * (pa + pb);
    const double fm = f(pm);
    const double fb = f(pb);
    const double whole = simpson(pa, pb, fa, fm, fb);
    panels.push_back({pa, pm, pb, fa, fm, fb, whole});
    coarse += whole;
    fa = fb;
  }
  // The absolute tolerance is tightened for integrals much smaller than 1 so that
  // ratios of small integrals keep their relative accuracy, and relaxed to relative
  // 1e-14 for large integrals where it would be below rounding.
  const double tol = std::max({std::min(options.abs_tol, 1e-13 * std::abs(coarse)),
                               1e-14 * std::abs(coarse), 1e-300});
  double total = 0.0;
  for (const Panel& p : panels) total += refine(f, p, tol / kPanels, options.max_depth);
  return total;
}

}  // namespace epsnet
