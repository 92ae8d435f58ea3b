#include "epsnet/neighbor_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "epsnet/errors.hpp"
#include "epsnet/rng.hpp"

namespace epsnet {
namespace {

constexpr std::uint32_t kLeafSize = 12;

}  // namespace

NeighborIndex::NeighborIndex(const MetricMeasureSpace& space, const PointSet& points)
    : space_(space), points_(points) {
  const std::size_t n = points.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) throw ValidationError("too many points to index");
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::uint32_t{0});
  home_.assign(n, kNone);
  member_.assign(n, 0);
  nodes_.reserve(2 * n / kLeafSize + 16);
  std::vector<double> scratch(n);
  std::uint64_t state = 0x243F6A8885A308D3ULL;
  if (n > 0) build(0, static_cast<std::uint32_t>(n), kNone, scratch, state);
}

std::uint32_t NeighborIndex::build(std::uint32_t begin, std::uint32_t end, std::uint32_t parent,
                                   std::vector<double>& scratch, std::uint64_t& state) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_[id].parent = parent;
  if (end - begin <= kLeafSize) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    for (std::uint32_t k = begin; k < end; ++k) home_[order_[k]] = id;
    return id;
  }
  state = splitmix64(state);
  std::swap(order_[begin], order_[begin + static_cast<std::uint32_t>(state % (end - begin))]);
  const std::uint32_t v = order_[begin];
  home_[v] = id;
  const std::uint32_t lo = begin + 1;
  for (std::uint32_t k = lo; k < end; ++k) scratch[order_[k]] = space_.distance(points_[v], points_[order_[k]]);
  const std::uint32_t mid = lo + (end - lo) / 2;
  auto by_distance = [&](std::uint32_t a, std::uint32_t b) { return scratch[a] < scratch[b]; };
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + end, by_distance);

  auto range = [&](std::uint32_t b, std::uint32_t e, double& rlo, double& rhi) {
    rlo = std::numeric_limits<double>::infinity();
    rhi = -rlo;
    for (std::uint32_t k = b; k < e; ++k) {
      rlo = std::min(rlo, scratch[order_[k]]);
      rhi = std::max(rhi, scratch[order_[k]]);
    }
  };
  double ilo, ihi, olo, ohi;
  range(lo, mid, ilo, ihi);
  range(mid, end, olo, ohi);
  nodes_[id].vantage = v;
  nodes_[id].inner_lo = ilo;
  nodes_[id].inner_hi = ihi;
  nodes_[id].outer_lo = olo;
  nodes_[id].outer_hi = ohi;
  // Children overwrite scratch, so the ranges are taken first.
  const std::uint32_t inner = lo < mid ? build(lo, mid, id, scratch, state) : kNone;
  const std::uint32_t outer = build(mid, end, id, scratch, state);
  nodes_[id].inner = inner;
  nodes_[id].outer = outer;
  return id;
}

void NeighborIndex::insert(std::size_t i) {
  if (member_[i]) return;
  member_[i] = 1;
  ++inserted_;
  for (std::uint32_t node = home_[i]; node != kNone; node = nodes_[node].parent) ++nodes_[node].members;
}

}  // namespace epsnet
