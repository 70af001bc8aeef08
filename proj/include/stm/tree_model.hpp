#ifndef STM_TREE_MODEL_HPP
#define STM_TREE_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stm/error.hpp"
#include "stm/graph.hpp"

namespace stm {

using NodeId = std::int32_t;

enum class Sign : std::uint8_t { Negative, Positive };

inline char sign_letter(Sign s) { return s == Sign::Positive ? 'B' : 'A'; }

struct NodePair {
  NodeId x = 0;
  NodeId y = 0;
  bool is_loop() const noexcept { return x == y; }
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

struct InternalNode {
  NodeId id = 0;
  NodeId left = 0;
  NodeId right = 0;
  friend auto operator<=>(const InternalNode&, const InternalNode&) = default;
};

// Full binary tree over leaves 1..n (internal nodes n+1..2n-1) with negative
// pairs A and positive pairs B. The constructor checks the tree and that pair
// endpoints are node ids; the pair conditions are checked by validate().
class SignedTreeModel {
 public:
  SignedTreeModel() = default;

  SignedTreeModel(std::size_t n, std::vector<InternalNode> internals, std::vector<NodePair> negative = {},
                  std::vector<NodePair> positive = {})
      : n_(static_cast<NodeId>(n)) {
    if (n == 0) throw InputError("a tree model needs at least one leaf");
    build_tree(std::move(internals));
    set_pairs(std::move(negative), std::move(positive));
  }

  // Same tree, new pair sets.
  SignedTreeModel with_pairs(std::vector<NodePair> negative, std::vector<NodePair> positive) const {
    SignedTreeModel out = *this;
    out.set_pairs(std::move(negative), std::move(positive));
    return out;
  }

  std::size_t leaf_count() const noexcept { return static_cast<std::size_t>(n_); }
  std::size_t node_count() const noexcept { return n_ == 0 ? 0 : static_cast<std::size_t>(2 * n_ - 1); }
  NodeId root() const noexcept { return root_; }

  bool contains(NodeId v) const noexcept { return v >= 1 && v <= static_cast<NodeId>(node_count()); }
  bool is_leaf(NodeId v) const noexcept { return v >= 1 && v <= n_; }
  NodeId parent(NodeId v) const { return parent_[v]; }  // 0 for the root
  NodeId left(NodeId v) const { return left_[v]; }      // 0 for leaves
  NodeId right(NodeId v) const { return right_[v]; }
  int depth(NodeId v) const { return depth_[v]; }

  bool is_ancestor_or_self(NodeId a, NodeId b) const noexcept { return tin_[a] <= tin_[b] && tout_[b] <= tout_[a]; }
  bool is_strict_ancestor(NodeId a, NodeId b) const noexcept { return a != b && is_ancestor_or_self(a, b); }
  bool comparable(NodeId a, NodeId b) const noexcept { return is_ancestor_or_self(a, b) || is_ancestor_or_self(b, a); }

  // Leaf positions covered by v in the left-to-right leaf order.
  std::pair<int, int> leaf_span(NodeId v) const { return {span_lo_[v], span_hi_[v]}; }
  NodeId leaf_at(int position) const { return leaf_order_[position - 1]; }
  int position_of_leaf(NodeId leaf) const { return span_lo_[leaf]; }
  LinearOrder leaf_order() const { return LinearOrder::from_sequence(leaf_order_); }

  const std::vector<NodePair>& pairs(Sign s) const noexcept { return s == Sign::Positive ? positive_ : negative_; }
  const std::vector<NodePair>& negative() const noexcept { return negative_; }
  const std::vector<NodePair>& positive() const noexcept { return positive_; }
  std::size_t pair_count() const noexcept { return negative_.size() + positive_.size(); }

  // Internal node records in id order.
  std::vector<InternalNode> internal_nodes() const {
    std::vector<InternalNode> out;
    for (NodeId v = n_ + 1; v <= static_cast<NodeId>(node_count()); ++v) out.push_back({v, left_[v], right_[v]});
    return out;
  }

  // Earlier leaf span first; loops and comparable pairs keep a deterministic order.
  NodePair canonical(NodePair p) const {
    if (std::pair(span_lo_[p.y], p.y) < std::pair(span_lo_[p.x], p.x)) std::swap(p.x, p.y);
    return p;
  }

  friend bool operator==(const SignedTreeModel& a, const SignedTreeModel& b) {
    return a.n_ == b.n_ && a.left_ == b.left_ && a.right_ == b.right_ && a.negative_ == b.negative_ &&
           a.positive_ == b.positive_;
  }

 private:
  void build_tree(std::vector<InternalNode> internals) {
    const NodeId total = 2 * n_ - 1;
    if (internals.size() != static_cast<std::size_t>(n_ - 1)) {
      throw InputError("expected " + std::to_string(n_ - 1) + " internal nodes, got " + std::to_string(internals.size()));
    }
    parent_.assign(total + 1, 0);
    left_.assign(total + 1, 0);
    right_.assign(total + 1, 0);
    for (const auto& rec : internals) {
      if (rec.id <= n_ || rec.id > total) throw InputError("internal node id " + std::to_string(rec.id) + " out of range");
      if (left_[rec.id] != 0) throw InputError("internal node " + std::to_string(rec.id) + " listed twice");
      for (NodeId c : {rec.left, rec.right}) {
        if (c < 1 || c > total || c == rec.id) {
          throw InputError("node " + std::to_string(rec.id) + " has invalid child " + std::to_string(c));
        }
        if (parent_[c] != 0) throw InputError("node " + std::to_string(c) + " has two parents");
        parent_[c] = rec.id;
      }
      if (rec.left == rec.right) throw InputError("node " + std::to_string(rec.id) + " repeats a child");
      left_[rec.id] = rec.left;
      right_[rec.id] = rec.right;
    }
    root_ = 0;
    for (NodeId v = 1; v <= total; ++v) {
      if (parent_[v] != 0) continue;
      if (root_ != 0) throw InputError("tree has several roots (" + std::to_string(root_) + ", " + std::to_string(v) + ")");
      root_ = v;
    }
    if (root_ == 0) throw InputError("tree has no root");

    tin_.assign(total + 1, -1);
    tout_.assign(total + 1, -1);
    depth_.assign(total + 1, 0);
    span_lo_.assign(total + 1, 0);
    span_hi_.assign(total + 1, 0);
    leaf_order_.clear();
    int clock = 0;
    std::vector<std::pair<NodeId, bool>> stack{{root_, false}};
    while (!stack.empty()) {
      auto [v, done] = stack.back();
      stack.pop_back();
      if (done) {
        tout_[v] = clock++;
        span_lo_[v] = span_lo_[left_[v]];
        span_hi_[v] = span_hi_[right_[v]];
        continue;
      }
      if (tin_[v] != -1) throw InputError("tree contains a cycle");
      tin_[v] = clock++;
      if (v != root_) depth_[v] = depth_[parent_[v]] + 1;
      if (left_[v] == 0) {
        if (v > n_) throw InputError("internal node " + std::to_string(v) + " has no children");
        tout_[v] = clock++;
        leaf_order_.push_back(v);
        span_lo_[v] = span_hi_[v] = static_cast<int>(leaf_order_.size());
        continue;
      }
      stack.push_back({v, true});
      stack.push_back({right_[v], false});
      stack.push_back({left_[v], false});
    }
    if (leaf_order_.size() != static_cast<std::size_t>(n_)) throw InputError("tree does not reach every leaf");
  }

  void set_pairs(std::vector<NodePair> negative, std::vector<NodePair> positive) {
    for (auto* list : {&negative, &positive}) {
      for (auto& p : *list) {
        if (!contains(p.x) || !contains(p.y)) {
          throw InputError("pair {" + std::to_string(p.x) + "," + std::to_string(p.y) + "} names an unknown node");
        }
        p = canonical(p);
      }
    }
    negative_ = std::move(negative);
    positive_ = std::move(positive);
  }

  NodeId n_ = 0;
  NodeId root_ = 0;
  std::vector<NodeId> parent_, left_, right_;
  std::vector<int> tin_, tout_, depth_, span_lo_, span_hi_;
  std::vector<NodeId> leaf_order_;
  std::vector<NodePair> negative_, positive_;
};

struct PairRef {
  Sign sign = Sign::Negative;
  std::size_t index = 0;
  friend auto operator<=>(const PairRef&, const PairRef&) = default;
};

struct ValidationReport {
  enum class Kind { None, Loop, NotTransversal, SignConflict, DuplicatePair, Crossing };
  Kind kind = Kind::None;
  std::vector<PairRef> pairs;
  std::string message;

  bool ok() const noexcept { return kind == Kind::None; }
  explicit operator bool() const noexcept { return ok(); }
};

namespace detail {

inline std::string describe(const SignedTreeModel& stm, PairRef r) {
  const NodePair p = stm.pairs(r.sign)[r.index];
  return std::string(1, sign_letter(r.sign)) + " " + std::to_string(p.x) + " " + std::to_string(p.y);
}

inline ValidationReport violation(const SignedTreeModel& stm, ValidationReport::Kind kind, std::vector<PairRef> refs,
                                  const std::string& what) {
  std::string msg = what;
  for (std::size_t i = 0; i < refs.size(); ++i) msg += (i == 0 ? ": " : " and ") + describe(stm, refs[i]);
  return {kind, std::move(refs), std::move(msg)};
}

// Pairs indexed by endpoint.
struct Incidence {
  std::vector<std::vector<std::pair<NodeId, PairRef>>> at;

  explicit Incidence(const SignedTreeModel& stm) : at(stm.node_count() + 1) {
    for (Sign s : {Sign::Negative, Sign::Positive}) {
      const auto& list = stm.pairs(s);
      for (std::size_t i = 0; i < list.size(); ++i) {
        const NodePair p = list[i];
        if (p.is_loop()) continue;
        at[p.x].push_back({p.y, {s, i}});
        at[p.y].push_back({p.x, {s, i}});
      }
    }
  }
};

// A pair {w, z} with w a strict ancestor of `below` crosses {x, below} iff x is a
// strict ancestor of z. Returns the first such pair.
inline std::optional<PairRef> find_crossing(const SignedTreeModel& stm, const Incidence& inc, NodeId x, NodeId below) {
  for (NodeId w = stm.parent(below); w != 0; w = stm.parent(w)) {
    for (const auto& [z, ref] : inc.at[w]) {
      if (stm.is_strict_ancestor(x, z)) return ref;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Checks the model invariants. Loops are accepted unless `strict`.
inline ValidationReport validate(const SignedTreeModel& stm, bool strict = true) {
  using Kind = ValidationReport::Kind;
  std::set<std::pair<NodePair, Sign>> seen;
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    const auto& list = stm.pairs(s);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const NodePair p = list[i];
      const PairRef ref{s, i};
      if (p.is_loop()) {
        if (strict) return detail::violation(stm, Kind::Loop, {ref}, "loop pair");
      } else if (stm.comparable(p.x, p.y)) {
        return detail::violation(stm, Kind::NotTransversal, {ref}, "pair is not transversal");
      }
      if (!seen.insert({p, s}).second) return detail::violation(stm, Kind::DuplicatePair, {ref}, "duplicate pair");
    }
  }
  {
    const auto& neg = stm.negative();
    std::set<NodePair> negative_set(neg.begin(), neg.end());
    const auto& pos = stm.positive();
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (!negative_set.count(pos[i])) continue;
      const auto j = static_cast<std::size_t>(std::find(neg.begin(), neg.end(), pos[i]) - neg.begin());
      return detail::violation(stm, Kind::SignConflict, {{Sign::Negative, j}, {Sign::Positive, i}},
                               "pair is both negative and positive");
    }
  }
  const detail::Incidence inc(stm);
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    const auto& list = stm.pairs(s);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const NodePair p = list[i];
      if (p.is_loop()) continue;
      for (auto [x, y] : {std::pair(p.x, p.y), std::pair(p.y, p.x)}) {
        if (auto other = detail::find_crossing(stm, inc, x, y)) {
          std::vector<PairRef> refs{*other, PairRef{s, i}};
          std::sort(refs.begin(), refs.end());
          return detail::violation(stm, Kind::Crossing, std::move(refs), "crossing pairs");
        }
      }
    }
  }
  return {};
}

// True if adding {x, y} to the model would cross an existing pair.
inline bool would_cross(const SignedTreeModel& stm, const detail::Incidence& inc, NodePair p) {
  return detail::find_crossing(stm, inc, p.x, p.y).has_value() || detail::find_crossing(stm, inc, p.y, p.x).has_value();
}

inline void require_valid(const SignedTreeModel& stm, bool strict) {
  if (auto report = validate(stm, strict); !report) throw InputError("invalid signed tree model: " + report.message);
}

// Decoding by painting: rectangles of a valid model are laminar, so painting
// them largest first leaves every cell with the sign of its minimal cover.
// A loop at t paints L(t) x L(t), which also gives loopy models their meaning.
inline Graph decode_bruteforce(const SignedTreeModel& stm) {
  require_valid(stm, false);
  const auto n = static_cast<int>(stm.leaf_count());
  struct Paint {
    std::int64_t area;
    NodePair pair;
    Sign sign;
  };
  std::vector<Paint> paints;
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    for (NodePair p : stm.pairs(s)) {
      auto [a1, a2] = stm.leaf_span(p.x);
      auto [b1, b2] = stm.leaf_span(p.y);
      paints.push_back({std::int64_t{a2 - a1 + 1} * (b2 - b1 + 1), p, s});
    }
  }
  std::stable_sort(paints.begin(), paints.end(), [](const Paint& a, const Paint& b) { return a.area > b.area; });

  std::vector<std::int8_t> cell(static_cast<std::size_t>(n) * n, 0);  // 1 = positive
  for (const Paint& pt : paints) {
    auto [a1, a2] = stm.leaf_span(pt.pair.x);
    auto [b1, b2] = stm.leaf_span(pt.pair.y);
    const std::int8_t value = pt.sign == Sign::Positive ? 1 : 0;
    for (int i = a1; i <= a2; ++i) {
      for (int j = b1; j <= b2; ++j) {
        cell[static_cast<std::size_t>(i - 1) * n + (j - 1)] = value;
        cell[static_cast<std::size_t>(j - 1) * n + (i - 1)] = value;
      }
    }
  }
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (cell[static_cast<std::size_t>(i - 1) * n + (j - 1)]) edges.emplace_back(stm.leaf_at(i), stm.leaf_at(j));
    }
  }
  return Graph(stm.leaf_count(), edges);
}

// Replaces loops by pairs on sibling nodes. Each internal node whose children
// carry no pair inherits the sign of the nearest loop at it or above it.
inline SignedTreeModel remove_loops(const SignedTreeModel& stm) {
  require_valid(stm, false);
  const std::size_t total = stm.node_count();
  std::vector<std::optional<Sign>> loop_at(total + 1);
  bool any_loop = false;
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    for (NodePair p : stm.pairs(s)) {
      if (p.is_loop()) {
        loop_at[p.x] = s;
        any_loop = true;
      }
    }
  }
  if (!any_loop) return stm;

  std::set<NodePair> existing;
  std::vector<NodePair> neg, pos;
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    for (NodePair p : stm.pairs(s)) {
      if (p.is_loop()) continue;
      existing.insert(p);
      (s == Sign::Positive ? pos : neg).push_back(p);
    }
  }
  std::vector<std::optional<Sign>> inherited(total + 1);
  std::vector<NodeId> stack{stm.root()};
  while (!stack.empty()) {
    const NodeId t = stack.back();
    stack.pop_back();
    inherited[t] = loop_at[t] ? loop_at[t] : (t == stm.root() ? std::nullopt : inherited[stm.parent(t)]);
    if (stm.is_leaf(t)) continue;
    const NodePair sib = stm.canonical({stm.left(t), stm.right(t)});
    if (inherited[t] && !existing.count(sib)) (*inherited[t] == Sign::Positive ? pos : neg).push_back(sib);
    stack.push_back(stm.right(t));
    stack.push_back(stm.left(t));
  }
  return stm.with_pairs(std::move(neg), std::move(pos));
}

// Edits since the last rebuild, with the default threshold max(n, pairs).
struct EditLog {
  std::size_t count = 0;
  std::size_t threshold = 0;

  static EditLog for_model(const SignedTreeModel& stm) {
    return {0, std::max<std::size_t>({stm.leaf_count(), stm.pair_count(), 1})};
  }
};

struct EditResult {
  SignedTreeModel model;
  bool rebuild_required = false;
};

// Sets the sign of leaf pair {u, v}. Leaf pairs have no strict descendants and so
// never cross another pair.
inline EditResult insert_edit(const SignedTreeModel& stm, NodeId u, NodeId v, Sign sign, EditLog& log) {
  if (!stm.is_leaf(u) || !stm.is_leaf(v)) throw InputError("edits must name two leaves");
  if (u == v) throw InputError("edit pair must have distinct leaves");
  if (log.count >= log.threshold) throw InputError("edit log is full; rebuild the model first");
  const NodePair target = stm.canonical({u, v});
  std::vector<NodePair> neg, pos;
  for (NodePair p : stm.negative()) {
    if (p != target) neg.push_back(p);
  }
  for (NodePair p : stm.positive()) {
    if (p != target) pos.push_back(p);
  }
  (sign == Sign::Positive ? pos : neg).push_back(target);
  ++log.count;
  return {stm.with_pairs(std::move(neg), std::move(pos)), log.count >= log.threshold};
}

}  // namespace stm

#endif  // STM_TREE_MODEL_HPP
