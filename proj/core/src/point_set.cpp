#include "epsnet/point_set.hpp"

#include <cmath>

namespace epsnet {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double Sample::total_measure() const { return compensated_sum(weights); }

}  // namespace epsnet
