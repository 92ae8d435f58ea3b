#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace epsnet {

/// Flat row-major storage for points of a fixed coordinate dimension.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t stride) : stride_(stride) {}

  std::size_t stride() const noexcept { return stride_; }
  std::size_t size() const noexcept { return stride_ == 0 ? 0 : data_.size() / stride_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    assert(i < size());
    return {data_.data() + i * stride_, stride_};
  }

  void reserve(std::size_t n) { data_.reserve(n * stride_); }

  void push_back(std::span<const double> p) {
    assert(p.size() == stride_);
    data_.insert(data_.end(), p.begin(), p.end());
  }

  const std::vector<double>& raw() const noexcept { return data_; }

 private:
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

/// A finite sample of a metric measure space: points plus the atomic weight each
/// carries, so that sums of weights estimate measures of subsets.
struct Sample {
  PointSet points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
  double total_measure() const;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace epsnet
