#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "epsnet/point_set.hpp"
#include "epsnet/spaces.hpp"

namespace epsnet {

/// Range queries under an arbitrary metric: a vantage-point tree over a fixed point set,
/// of which only the inserted points are reported. Subtrees without inserted points are
/// skipped, so incremental use (greedy nets) costs about as much as a static index over
/// the inserted set.
class NeighborIndex {
 public:
  NeighborIndex(const MetricMeasureSpace& space, const PointSet& points);

  /// Adds points[i] to the searchable set.
  void insert(std::size_t i);
  std::size_t inserted() const noexcept { return inserted_; }

  /// Calls visit(j) on every inserted j with d(points[i], points[j]) <= radius;
  /// stops early when visit returns false.
  template <typename Visit>
  void candidates(std::size_t i, double radius, Visit&& visit) const {
    search(points_[i], radius, visit);
  }

  /// Same for an arbitrary query point.
  template <typename Visit>
  void candidates(std::span<const double> query, double radius, Visit&& visit) const {
    search(query, radius, visit);
  }

 private:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  struct Node {
    std::uint32_t vantage = kNone;  // kNone for leaves
    std::uint32_t begin = 0;        // leaf items in order_[begin, end)
    std::uint32_t end = 0;
    std::uint32_t inner = kNone;
    std::uint32_t outer = kNone;
    std::uint32_t parent = kNone;
    std::uint32_t members = 0;
    double inner_lo = 0, inner_hi = 0, outer_lo = 0, outer_hi = 0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end, std::uint32_t parent,
                      std::vector<double>& scratch, std::uint64_t& state);

  template <typename Visit>
  void search(std::span<const double> q, double radius, Visit& visit) const {
    if (nodes_.empty() || nodes_[0].members == 0) return;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      if (node.members == 0) continue;
      if (node.vantage == kNone) {
        for (std::uint32_t k = node.begin; k < node.end; ++k) {
          const std::uint32_t j = order_[k];
          if (member_[j] && space_.distance(q, points_[j]) <= radius && !visit(static_cast<std::size_t>(j)))
            return;
        }
        continue;
      }
      const double dv = space_.distance(q, points_[node.vantage]);
      if (member_[node.vantage] && dv <= radius && !visit(static_cast<std::size_t>(node.vantage))) return;
      if (node.outer != kNone && dv + radius >= node.outer_lo && dv - radius <= node.outer_hi)
        stack.push_back(node.outer);
      if (node.inner != kNone && dv + radius >= node.inner_lo && dv - radius <= node.inner_hi)
        stack.push_back(node.inner);
    }
  }

  const MetricMeasureSpace& space_;
  const PointSet& points_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> home_;  // node holding each point
  std::vector<char> member_;
  std::size_t inserted_ = 0;
};

}  // namespace epsnet
