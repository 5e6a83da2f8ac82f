#include "roadaccess/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "roadaccess/errors.hpp"

namespace roadaccess {

namespace {

// Sort-Tile-Recursive ordering: vertical slices by x, then y within a slice.
std::vector<std::uint32_t> str_order(std::span<const BBox> boxes, std::size_t capacity) {
  const std::size_t n = boxes.size();
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  auto cx = [&](std::uint32_t k) { return boxes[k].min_x + boxes[k].max_x; };
  auto cy = [&](std::uint32_t k) { return boxes[k].min_y + boxes[k].max_y; };
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::tuple(cx(a), a) < std::tuple(cx(b), b);
  });
  const std::size_t leaves = (n + capacity - 1) / capacity;
  const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(leaves))));
  const std::size_t slice_size = std::max<std::size_t>(1, slices) * capacity;
  for (std::size_t start = 0; start < n; start += slice_size) {
    const auto first = idx.begin() + static_cast<std::ptrdiff_t>(start);
    const auto last = idx.begin() + static_cast<std::ptrdiff_t>(std::min(n, start + slice_size));
    std::sort(first, last, [&](std::uint32_t a, std::uint32_t b) {
      return std::tuple(cy(a), a) < std::tuple(cy(b), b);
    });
  }
  return idx;
}

}  // namespace

BoxTree::BoxTree(std::span<const BBox> boxes) : item_boxes_(boxes.begin(), boxes.end()) {
  if (item_boxes_.empty()) return;
  if (item_boxes_.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw std::length_error("too many items for BoxTree");
  }

  std::vector<std::vector<Node>> levels;

  order_ = str_order(item_boxes_, kNodeCapacity);
  {
    std::vector<Node> leaves;
    for (std::size_t start = 0; start < order_.size(); start += kNodeCapacity) {
      Node leaf;
      leaf.leaf = true;
      leaf.first = static_cast<std::uint32_t>(start);
      leaf.count = static_cast<std::uint32_t>(std::min(kNodeCapacity, order_.size() - start));
      for (std::uint32_t k = 0; k < leaf.count; ++k) leaf.box.expand(item_boxes_[order_[start + k]]);
      leaves.push_back(leaf);
    }
    levels.push_back(std::move(leaves));
  }

  while (levels.back().size() > 1) {
    auto& below = levels.back();
    std::vector<BBox> boxes_below;
    boxes_below.reserve(below.size());
    for (const auto& nd : below) boxes_below.push_back(nd.box);
    const auto perm = str_order(boxes_below, kNodeCapacity);
    std::vector<Node> reordered;
    reordered.reserve(below.size());
    for (auto k : perm) reordered.push_back(below[k]);
    below = std::move(reordered);

    std::vector<Node> parents;
    for (std::size_t start = 0; start < below.size(); start += kNodeCapacity) {
      Node parent;
      parent.first = static_cast<std::uint32_t>(start);
      parent.count = static_cast<std::uint32_t>(std::min(kNodeCapacity, below.size() - start));
      for (std::uint32_t k = 0; k < parent.count; ++k) parent.box.expand(below[start + k].box);
      parents.push_back(parent);
    }
    levels.push_back(std::move(parents));
  }

  std::size_t offset = 0;
  for (std::size_t level = 0; level < levels.size(); ++level) {
    for (auto nd : levels[level]) {
      if (!nd.leaf) nd.first += static_cast<std::uint32_t>(offset - levels[level - 1].size());
      nodes_.push_back(nd);
    }
    offset += levels[level].size();
  }
  root_ = static_cast<std::uint32_t>(nodes_.size() - 1);
}

SegmentIndex SegmentIndex::build(std::span<const RoadSegment> roads) {
  if (roads.empty()) throw ConfigError("no motorable roads: nearest-road queries are undefined");
  SegmentIndex idx;
  std::vector<BBox> boxes;
  for (const auto& road : roads) {
    for (std::size_t k = 0; k < road.geometry.segment_count(); ++k) {
      const Segment seg = road.geometry.segment(k);
      idx.entries_.push_back({idx.entries_.size(), road.road_id, seg});
      boxes.push_back(BBox::of(seg));
    }
    idx.surfaces_.emplace_back(road.road_id, road.surface);
  }
  std::stable_sort(idx.surfaces_.begin(), idx.surfaces_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  idx.tree_ = BoxTree(boxes);
  return idx;
}

RoadHit SegmentIndex::nearest(const PlanePoint& p) const {
  RoadHit best;
  bool found = false;
  tree_.visit_by_distance(p, [&](std::size_t item) {
    const Entry& e = entries_[item];
    const auto hit = nearest_point_on_segment(p, e.segment);
    const bool better =
        !found || hit.distance < best.distance ||
        (hit.distance == best.distance &&
         std::tie(e.road_id, e.segment_id) < std::tie(best.road_id, best.segment_id));
    if (better) {
      best = {e.road_id, e.segment_id, hit.point, hit.distance};
      found = true;
    }
    return best.distance;
  });
  if (!found) throw ConfigError("nearest-road query on an empty index");
  return best;
}

Surface SegmentIndex::surface_of(std::int64_t road_id) const {
  const auto it = std::lower_bound(surfaces_.begin(), surfaces_.end(), road_id,
                                   [](const auto& e, std::int64_t id) { return e.first < id; });
  if (it == surfaces_.end() || it->first != road_id) {
    throw std::out_of_range("road id not present in index");
  }
  return it->second;
}

PolygonIndex PolygonIndex::build(std::span<const Building> buildings) {
  PolygonIndex idx;
  std::vector<BBox> boxes;
  boxes.reserve(buildings.size());
  idx.entries_.reserve(buildings.size());
  for (std::size_t k = 0; k < buildings.size(); ++k) {
    const BBox& box = buildings[k].footprint.bbox();
    idx.entries_.push_back({buildings[k].building_id, k, box});
    boxes.push_back(box);
  }
  idx.tree_ = BoxTree(boxes);
  return idx;
}

std::vector<std::int64_t> PolygonIndex::candidates_for_segment(const Segment& s) const {
  std::vector<std::int64_t> ids;
  visit_candidates(s, [&](const Entry& e) { ids.push_back(e.building_id); });
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace roadaccess
