#pragma once

#include <functional>

namespace epsnet {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 60;
};

/// Adaptive Simpson integration of f over [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {});

}  // namespace epsnet
