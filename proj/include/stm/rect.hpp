#ifndef STM_RECT_HPP
#define STM_RECT_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "stm/error.hpp"

namespace stm {

// Discrete rectangle [x1,x2] x [y1,y2], bounds inclusive.
struct Rect {
  int x1 = 1, x2 = 1, y1 = 1, y2 = 1;

  std::int64_t width() const noexcept { return std::int64_t{x2} - x1 + 1; }
  std::int64_t height() const noexcept { return std::int64_t{y2} - y1 + 1; }
  std::int64_t area() const noexcept { return width() * height(); }
  bool valid() const noexcept { return x1 <= x2 && y1 <= y2; }

  bool contains(int x, int y) const noexcept { return x1 <= x && x <= x2 && y1 <= y && y <= y2; }
  bool contains(const Rect& r) const noexcept {
    return x1 <= r.x1 && r.x2 <= x2 && y1 <= r.y1 && r.y2 <= y2;
  }
  bool intersects(const Rect& r) const noexcept {
    return x1 <= r.x2 && r.x1 <= x2 && y1 <= r.y2 && r.y1 <= y2;
  }

  friend auto operator<=>(const Rect&, const Rect&) = default;
};

inline std::string to_string(const Rect& r) {
  std::ostringstream os;
  os << '[' << r.x1 << ',' << r.x2 << "]x[" << r.y1 << ',' << r.y2 << ']';
  return os.str();
}

// O(m^2) check; used by property tests and debug paths.
inline bool is_laminar(std::span<const Rect> rects) {
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      const Rect& a = rects[i];
      const Rect& b = rects[j];
      if (a.intersects(b) && !a.contains(b) && !b.contains(a)) return false;
      if (a == b) return false;
    }
  }
  return true;
}

struct GridPoint {
  int x = 0, y = 0;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Dynamic orthogonal range reporting over a multiset of tagged points.
//
// A segment tree over the x-range keeps, per node, the points of its x-slab
// ordered by y. Updates touch O(log U) nodes with an O(log m) set operation
// each; a report visits O(log U) canonical nodes plus the output.
class DynamicPointSet {
 public:
  using Tag = std::uint32_t;

  struct Entry {
    GridPoint point;
    Tag tag = 0;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  DynamicPointSet(int x_lo, int x_hi) : x_lo_(x_lo), x_hi_(std::max(x_lo, x_hi)) {
    leaves_ = 1;
    while (leaves_ < static_cast<std::size_t>(x_hi_ - x_lo_ + 1)) leaves_ *= 2;
    nodes_.resize(2 * leaves_);
  }

  void insert(GridPoint p, Tag tag = 0) {
    check_x(p.x);
    for (std::size_t node = leaf_of(p.x); node >= 1; node /= 2) nodes_[node].insert(key(p, tag));
    ++size_;
  }

  // Removes one copy of (p, tag); absent points are ignored.
  void erase(GridPoint p, Tag tag = 0) {
    if (p.x < x_lo_ || p.x > x_hi_) {
      assert(false && "erasing a point outside the universe");
      return;
    }
    const auto k = key(p, tag);
    auto& leaf = nodes_[leaf_of(p.x)];
    auto it = leaf.find(k);
    if (it == leaf.end()) {
      assert(false && "erasing an absent point");
      return;
    }
    leaf.erase(it);
    for (std::size_t node = leaf_of(p.x) / 2; node >= 1; node /= 2) nodes_[node].erase(nodes_[node].find(k));
    --size_;
  }

  std::vector<Entry> report(const Rect& q) const {
    std::vector<Entry> out;
    const int lo = std::max(q.x1, x_lo_);
    const int hi = std::min(q.x2, x_hi_);
    if (lo > hi || q.y1 > q.y2) return out;
    std::size_t l = leaf_of(lo);
    std::size_t r = leaf_of(hi) + 1;
    while (l < r) {
      if (l & 1) collect(nodes_[l++], q, out);
      if (r & 1) collect(nodes_[--r], q, out);
      l /= 2;
      r /= 2;
    }
    return out;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

 private:
  using Key = std::tuple<int, int, Tag>;  // (y, x, tag)

  static Key key(GridPoint p, Tag tag) { return {p.y, p.x, tag}; }

  std::size_t leaf_of(int x) const { return leaves_ + static_cast<std::size_t>(x - x_lo_); }

  void check_x(int x) const {
    if (x < x_lo_ || x > x_hi_) throw InputError("point x=" + std::to_string(x) + " outside the point-set universe");
  }

  static void collect(const std::multiset<Key>& bucket, const Rect& q, std::vector<Entry>& out) {
    for (auto it = bucket.lower_bound({q.y1, std::numeric_limits<int>::min(), 0});
         it != bucket.end() && std::get<0>(*it) <= q.y2; ++it) {
      out.push_back({{std::get<1>(*it), std::get<0>(*it)}, std::get<2>(*it)});
    }
  }

  int x_lo_;
  int x_hi_;
  std::size_t leaves_ = 1;
  std::size_t size_ = 0;
  std::vector<std::multiset<Key>> nodes_;
};

inline constexpr std::int32_t kNoParent = -1;

struct InclusionForest {
  std::vector<std::int32_t> parent;  // kNoParent for roots
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> roots;
  std::size_t reported_points = 0;  // total size of all range reports

  std::size_t size() const noexcept { return parent.size(); }

  // Indented listing, children in ascending index order.
  std::string dump(std::span<const Rect> rects) const {
    std::ostringstream os;
    auto visit = [&](auto&& self, std::size_t node, int depth) -> void {
      os << std::string(2 * depth, ' ') << node << ' ' << to_string(rects[node]) << '\n';
      for (std::size_t c : children[node]) self(self, c, depth + 1);
    };
    for (std::size_t r : roots) visit(visit, r, 0);
    return os.str();
  }
};

// Inclusion forest of a laminar family in O(m log^2 m).
//
// Rectangles are processed by increasing area. The point set holds the lower-left
// corner of every processed rectangle whose parent is still unknown; the first
// processed rectangle that contains such a corner is its parent.
inline InclusionForest inclusion_forest(std::span<const Rect> rects) {
  const std::size_t m = rects.size();
  InclusionForest forest;
  forest.parent.assign(m, kNoParent);
  forest.children.assign(m, {});
  if (m == 0) return forest;

  int x_lo = std::numeric_limits<int>::max();
  int x_hi = std::numeric_limits<int>::min();
  for (const Rect& r : rects) {
    if (!r.valid()) throw InputError("degenerate rectangle " + to_string(r));
    x_lo = std::min(x_lo, r.x1);
    x_hi = std::max(x_hi, r.x2);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rect& ra = rects[a];
    const Rect& rb = rects[b];
    return std::tuple(ra.area(), ra.x1, ra.y1, ra.x2, ra.y2, a) < std::tuple(rb.area(), rb.x1, rb.y1, rb.x2, rb.y2, b);
  });
  for (std::size_t k = 1; k < m; ++k) {
    if (rects[order[k]] == rects[order[k - 1]]) {
      throw LaminarityError("duplicate rectangle " + to_string(rects[order[k]]));
    }
  }

  DynamicPointSet points(x_lo, x_hi);
  for (std::size_t i : order) {
    const Rect& outer = rects[i];
    for (const auto& entry : points.report(outer)) {
      const std::size_t j = entry.tag;
      if (!outer.contains(rects[j])) {
        throw LaminarityError(to_string(rects[j]) + " and " + to_string(outer) + " overlap without nesting");
      }
      forest.parent[j] = static_cast<std::int32_t>(i);
      forest.children[i].push_back(j);
      points.erase(entry.point, entry.tag);
      ++forest.reported_points;
    }
    points.insert({outer.x1, outer.y1}, static_cast<DynamicPointSet::Tag>(i));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::sort(forest.children[i].begin(), forest.children[i].end());
    if (forest.parent[i] == kNoParent) forest.roots.push_back(i);
  }
  return forest;
}

// Partition of outer minus the (pairwise disjoint) holes into at most 3h + 1
// rectangles, by a left-to-right sweep.
//
// The free part of the current column is a set of maximal y-intervals. An interval
// that survives an event column unchanged keeps extending its rectangle; every
// other interval is closed and emitted. A starting hole opens at most two new
// intervals and an ending hole at most one, which gives the count bound.
inline std::vector<Rect> complement_partition(const Rect& outer, std::span<const Rect> holes) {
  if (!outer.valid()) throw InputError("degenerate outer rectangle " + to_string(outer));
  for (const Rect& h : holes) {
    if (!h.valid()) throw InputError("degenerate hole " + to_string(h));
    if (!outer.contains(h)) throw InputError("hole " + to_string(h) + " escapes " + to_string(outer));
  }

  struct Event {
    int x;
    bool start;  // ends sort first at equal x
    std::size_t hole;
  };
  std::vector<Event> events;
  events.reserve(2 * holes.size());
  for (std::size_t i = 0; i < holes.size(); ++i) {
    events.push_back({holes[i].x1, true, i});
    events.push_back({holes[i].x2 + 1, false, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tuple(a.x, a.start, a.hole) < std::tuple(b.x, b.start, b.hole);
  });

  struct Open {
    int hi;
    int start;
  };
  std::map<int, Open> free;  // lo -> interval [lo, hi] open since column `start`
  free.emplace(outer.y1, Open{outer.y2, outer.x1});
  std::map<std::pair<int, int>, int> closing;  // intervals closed at the current column
  std::vector<Rect> out;

  auto close = [&](std::map<int, Open>::iterator it) {
    closing[{it->first, it->second.hi}] = it->second.start;
    return free.erase(it);
  };
  auto open = [&](int lo, int hi, int column) {
    if (lo > hi) return;
    auto resumed = closing.find({lo, hi});
    int start = column;
    if (resumed != closing.end()) {
      start = resumed->second;
      closing.erase(resumed);
    }
    free.emplace(lo, Open{hi, start});
  };
  auto flush = [&](int column) {
    for (const auto& [range, start] : closing) {
      if (start < column) out.push_back({start, column - 1, range.first, range.second});
    }
    closing.clear();
  };

  std::size_t k = 0;
  while (k < events.size()) {
    const int column = events[k].x;
    for (; k < events.size() && events[k].x == column; ++k) {
      const Rect& h = holes[events[k].hole];
      if (!events[k].start) {
        int lo = h.y1;
        int hi = h.y2;
        auto above = free.find(h.y2 + 1);
        if (above != free.end()) {
          hi = above->second.hi;
          close(above);
        }
        auto below = free.lower_bound(h.y1);
        if (below != free.begin()) {
          --below;
          if (below->second.hi == h.y1 - 1) {
            lo = below->first;
            close(below);
          }
        }
        open(lo, hi, column);
      } else {
        auto it = free.upper_bound(h.y1);
        if (it == free.begin() || std::prev(it)->second.hi < h.y2 || std::prev(it)->first > h.y1) {
          throw InputError("hole " + to_string(h) + " overlaps another hole");
        }
        --it;
        const int lo = it->first;
        const int hi = it->second.hi;
        close(it);
        open(lo, h.y1 - 1, column);
        open(h.y2 + 1, hi, column);
      }
    }
    flush(column);
  }
  for (const auto& [lo, interval] : free) {
    if (interval.start <= outer.x2) out.push_back({interval.start, outer.x2, lo, interval.hi});
  }
  return out;
}

}  // namespace stm

#endif  // STM_RECT_HPP
