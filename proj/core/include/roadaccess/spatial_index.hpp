#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "roadaccess/features.hpp"
#include "roadaccess/geo.hpp"

namespace roadaccess {

/// Static bounding-box tree bulk-loaded with Sort-Tile-Recursive packing.
/// Items are addressed by their position in the input box list.
class BoxTree {
 public:
  static constexpr std::size_t kNodeCapacity = 16;

  BoxTree() = default;
  explicit BoxTree(std::span<const BBox> boxes);

  std::size_t size() const noexcept { return item_boxes_.size(); }
  bool empty() const noexcept { return item_boxes_.empty(); }
  const BBox& item_box(std::size_t item) const noexcept { return item_boxes_[item]; }

  /// Calls visit(item) for every item whose box passes `node_filter`, a
  /// predicate over boxes applied to nodes and items alike.
  template <class BoxFilter, class Visit>
  void query(BoxFilter&& node_filter, Visit&& visit) const;

  /// Best-first traversal in nondecreasing box distance from p. visit(item)
  /// returns the current search radius; traversal ends once every remaining
  /// box lies farther than that radius (plus a small rounding margin).
  template <class Visit>
  void visit_by_distance(const PlanePoint& p, Visit&& visit) const;

 private:
  struct Node {
    BBox box;
    std::uint32_t first = 0;  // child node index, or position in order_ for leaves
    std::uint32_t count = 0;
    bool leaf = false;
  };

  std::vector<BBox> item_boxes_;
  std::vector<std::uint32_t> order_;  // leaf slots -> item index
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

/// Nearest-road query result.
struct RoadHit {
  std::int64_t road_id = 0;
  std::size_t segment_id = 0;
  PlanePoint point;
  double distance = 0.0;
};

/// Every straight segment of every road, indexed by bounding box.
class SegmentIndex {
 public:
  struct Entry {
    std::size_t segment_id;  ///< running index over all roads in input order
    std::int64_t road_id;
    Segment segment;
  };

  /// Throws ConfigError for an empty road set.
  static SegmentIndex build(std::span<const RoadSegment> roads);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Global nearest point over all segments; exact distance ties go to the
  /// lowest road_id, then the lowest segment_id.
  RoadHit nearest(const PlanePoint& p) const;

  /// Surface of a road in the index; throws std::out_of_range otherwise.
  Surface surface_of(std::int64_t road_id) const;

 private:
  std::vector<Entry> entries_;
  std::vector<std::pair<std::int64_t, Surface>> surfaces_;  // sorted by road_id
  BoxTree tree_;
};

/// Building footprints indexed by bounding box.
class PolygonIndex {
 public:
  struct Entry {
    std::int64_t building_id;
    std::size_t position;  ///< position in the span the index was built from
    BBox box;
  };

  static PolygonIndex build(std::span<const Building> buildings);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Bounding-box candidates for s, sorted ascending. Never omits a building
  /// whose footprint intersects s.
  std::vector<std::int64_t> candidates_for_segment(const Segment& s) const;

  /// Calls visit(entry) for each candidate (unordered).
  template <class Visit>
  void visit_candidates(const Segment& s, Visit&& visit) const;

 private:
  std::vector<Entry> entries_;
  BoxTree tree_;
};

// ---------------------------------------------------------------------------

template <class BoxFilter, class Visit>
void BoxTree::query(BoxFilter&& node_filter, Visit&& visit) const {
  if (nodes_.empty()) return;
  std::vector<std::uint32_t> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (!node_filter(node.box)) continue;
    if (node.leaf) {
      for (std::uint32_t k = 0; k < node.count; ++k) {
        const std::uint32_t item = order_[node.first + k];
        if (node_filter(item_boxes_[item])) visit(static_cast<std::size_t>(item));
      }
    } else {
      for (std::uint32_t k = 0; k < node.count; ++k) stack.push_back(node.first + k);
    }
  }
}

template <class Visit>
void BoxTree::visit_by_distance(const PlanePoint& p, Visit&& visit) const {
  if (nodes_.empty()) return;
  constexpr double kMargin = 1e-6;  // meters; distances are computed differently for boxes
  struct Pending {
    double bound;
    std::uint32_t ref;
    bool is_item;
    bool operator>(const Pending& o) const noexcept { return bound > o.bound; }
  };
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
  queue.push({nodes_[root_].box.distance_to(p), root_, false});
  double radius = std::numeric_limits<double>::infinity();
  while (!queue.empty() && queue.top().bound <= radius + kMargin) {
    const Pending top = queue.top();
    queue.pop();
    if (top.is_item) {
      radius = visit(static_cast<std::size_t>(top.ref));
      continue;
    }
    const Node& node = nodes_[top.ref];
    for (std::uint32_t k = 0; k < node.count; ++k) {
      if (node.leaf) {
        const std::uint32_t item = order_[node.first + k];
        queue.push({item_boxes_[item].distance_to(p), item, true});
      } else {
        const std::uint32_t child = node.first + k;
        queue.push({nodes_[child].box.distance_to(p), child, false});
      }
    }
  }
}

template <class Visit>
void PolygonIndex::visit_candidates(const Segment& s, Visit&& visit) const {
  const BBox seg_box = BBox::of(s);
  // Inflate by a hair so rounding in the clip test cannot drop a touching box.
  tree_.query(
      [&](const BBox& box) {
        const BBox padded = box.inflated(1e-9 + 1e-12 * (std::abs(box.max_x) + std::abs(box.max_y)));
        return seg_box.intersects(padded) && segment_intersects_box(s, padded);
      },
      [&](std::size_t item) { visit(entries_[item]); });
}

}  // namespace roadaccess
