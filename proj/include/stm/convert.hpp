#ifndef STM_CONVERT_HPP
#define STM_CONVERT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stm/error.hpp"
#include "stm/graph.hpp"
#include "stm/model_rects.hpp"
#include "stm/rect.hpp"
#include "stm/sequence.hpp"
#include "stm/tree_model.hpp"

namespace stm {

// [a,b] x [c,d] in order positions, a <= b < c <= d.
struct Biclique {
  int a = 0, b = 0, c = 0, d = 0;
  std::int64_t edge_count() const noexcept { return std::int64_t{b - a + 1} * (d - c + 1); }
  friend auto operator<=>(const Biclique&, const Biclique&) = default;
};

struct IntervalBicliquePartition {
  LinearOrder order;
  std::vector<Biclique> bicliques;

  std::size_t size() const noexcept { return order.size(); }
  friend bool operator==(const IntervalBicliquePartition&, const IntervalBicliquePartition&) = default;
};

inline void check_ibp_structure(const IntervalBicliquePartition& ibp) {
  const auto n = static_cast<int>(ibp.size());
  for (std::size_t i = 0; i < ibp.bicliques.size(); ++i) {
    const Biclique& q = ibp.bicliques[i];
    if (!(1 <= q.a && q.a <= q.b && q.b < q.c && q.c <= q.d && q.d <= n)) {
      throw InputError("biclique " + std::to_string(i + 1) + " is not of the form a <= b < c <= d within [1," +
                       std::to_string(n) + "]");
    }
  }
}

// Expands the bicliques; a repeated edge violates the partition property.
inline Graph ibp_to_graph(const IntervalBicliquePartition& ibp) {
  check_ibp_structure(ibp);
  std::vector<Edge> edges;
  for (const Biclique& q : ibp.bicliques) {
    for (int p = q.a; p <= q.b; ++p) {
      for (int r = q.c; r <= q.d; ++r) {
        Vertex u = ibp.order.vertex_at(p);
        Vertex v = ibp.order.vertex_at(r);
        edges.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw PartitionError("edge " + std::to_string(dup->first) + "-" + std::to_string(dup->second) +
                         " lies in two bicliques");
  }
  return Graph(ibp.size(), edges);
}

// Rectangles of the model, cleaned to alternate signs; every positive rectangle
// contributes the complement of its negative children.
inline IntervalBicliquePartition stm_to_ibp(const SignedTreeModel& stm) {
  const ModelRects mr = stm_to_rects(stm);
  const AlternatingForest af = alternating_forest(mr.rects);
  std::map<std::size_t, std::vector<Rect>> holes;
  for (std::size_t i = 0; i < mr.rects.size(); ++i) {
    if (!af.kept[i] || mr.rects[i].sign != Sign::Negative || af.kept_parent[i] == kNoParent) continue;
    holes[static_cast<std::size_t>(af.kept_parent[i])].push_back(mr.rects[i].rect);
  }
  IntervalBicliquePartition ibp{mr.order, {}};
  for (std::size_t i = 0; i < mr.rects.size(); ++i) {
    if (!af.kept[i] || mr.rects[i].sign != Sign::Positive) continue;
    auto it = holes.find(i);
    const std::vector<Rect> none;
    for (const Rect& r : complement_partition(mr.rects[i].rect, it == holes.end() ? none : it->second)) {
      ibp.bicliques.push_back({r.x1, r.x2, r.y1, r.y2});
    }
  }
  return ibp;
}

// Balanced binary tree over positions 1..n. Leaves are the positions; internal
// nodes n+1..2n-1 are numbered in post-order, so the root is 2n-1. A range of
// size s sends ceil(s/2) positions to the left child.
class BalancedTree {
 public:
  explicit BalancedTree(std::size_t n) : n_(static_cast<int>(n)) {
    if (n == 0) throw InputError("balanced tree needs at least one leaf");
    const std::size_t total = 2 * n - 1;
    left_.assign(total + 1, 0);
    right_.assign(total + 1, 0);
    lo_.assign(total + 1, 0);
    hi_.assign(total + 1, 0);
    int next = n_ + 1;
    root_ = build(1, n_, next);
  }

  std::size_t leaf_count() const noexcept { return static_cast<std::size_t>(n_); }
  int root() const noexcept { return root_; }
  int left(int t) const { return left_[t]; }
  int right(int t) const { return right_[t]; }
  bool is_leaf(int t) const noexcept { return t <= n_; }
  std::pair<int, int> span(int t) const { return {lo_[t], hi_[t]}; }

  int height() const {
    int h = 0;
    while ((std::size_t{1} << h) < static_cast<std::size_t>(n_)) ++h;
    return h;
  }

  std::vector<InternalNode> internal_nodes() const {
    std::vector<InternalNode> out;
    for (int t = n_ + 1; t <= 2 * n_ - 1; ++t) out.push_back({t, left_[t], right_[t]});
    return out;
  }

  // Maximal nodes whose leaf ranges lie inside [a,b], left to right.
  std::vector<int> cover_set(int a, int b) const {
    if (a < 1 || b > n_ || a > b) throw InputError("interval [" + std::to_string(a) + "," + std::to_string(b) + "] invalid");
    std::vector<int> out;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      if (hi_[t] < a || b < lo_[t]) continue;
      if (a <= lo_[t] && hi_[t] <= b) {
        out.push_back(t);
        continue;
      }
      stack.push_back(right_[t]);
      stack.push_back(left_[t]);
    }
    return out;
  }

 private:
  int build(int lo, int hi, int& next) {
    if (lo == hi) {
      lo_[lo] = hi_[lo] = lo;
      return lo;
    }
    const int mid = lo + (hi - lo + 2) / 2 - 1;
    const int l = build(lo, mid, next);
    const int r = build(mid + 1, hi, next);
    const int t = next++;
    left_[t] = l;
    right_[t] = r;
    lo_[t] = lo;
    hi_[t] = hi;
    return t;
  }

  int n_;
  int root_ = 0;
  std::vector<int> left_, right_, lo_, hi_;
};

// DAG on nodes 1..node_count whose sinks are exactly the vertices 1..n.
struct DagCompression {
  std::size_t vertex_count = 0;
  std::size_t node_count = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> arcs;        // parent -> child
  std::vector<std::pair<std::int32_t, std::int32_t>> compressed;  // undirected

  std::size_t size() const noexcept { return node_count + arcs.size() + compressed.size(); }
  friend bool operator==(const DagCompression&, const DagCompression&) = default;
};

// Acyclicity, sink set and id ranges. Returns a topological order (sources first).
inline std::vector<std::int32_t> check_dag(const DagCompression& dc) {
  const auto total = static_cast<std::int32_t>(dc.node_count);
  if (dc.node_count < dc.vertex_count) throw InputError("DAG has fewer nodes than vertices");
  std::vector<std::vector<std::int32_t>> out(dc.node_count + 1);
  std::vector<std::size_t> indegree(dc.node_count + 1, 0);
  for (auto [p, c] : dc.arcs) {
    if (p < 1 || p > total || c < 1 || c > total) throw InputError("DAG arc names an unknown node");
    out[p].push_back(c);
    ++indegree[c];
  }
  for (auto [x, y] : dc.compressed) {
    if (x < 1 || x > total || y < 1 || y > total) throw InputError("compressed edge names an unknown node");
  }
  for (std::int32_t v = 1; v <= total; ++v) {
    const bool sink = out[v].empty();
    if (sink != (static_cast<std::size_t>(v) <= dc.vertex_count)) {
      throw InputError("node " + std::to_string(v) + (sink ? " is a sink but not a vertex" : " is a vertex but not a sink"));
    }
  }
  std::vector<std::int32_t> order;
  order.reserve(dc.node_count);
  for (std::int32_t v = 1; v <= total; ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::int32_t c : out[order[i]]) {
      if (--indegree[c] == 0) order.push_back(c);
    }
  }
  if (order.size() != dc.node_count) throw InputError("DAG contains a cycle");
  return order;
}

// Adjacency by joint reachability from compressed edges.
inline Graph decode_dag(const DagCompression& dc) {
  const auto topo = check_dag(dc);
  const std::size_t n = dc.vertex_count;
  std::vector<std::vector<std::int32_t>> children(dc.node_count + 1);
  for (auto [p, c] : dc.arcs) children[p].push_back(c);
  // Reachable sink sets, children before parents.
  std::vector<std::vector<Vertex>> reach(dc.node_count + 1);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::int32_t v = *it;
    if (static_cast<std::size_t>(v) <= n) {
      reach[v] = {v};
      continue;
    }
    for (std::int32_t c : children[v]) reach[v].insert(reach[v].end(), reach[c].begin(), reach[c].end());
    std::sort(reach[v].begin(), reach[v].end());
    reach[v].erase(std::unique(reach[v].begin(), reach[v].end()), reach[v].end());
  }
  std::vector<Edge> edges;
  for (auto [x, y] : dc.compressed) {
    for (Vertex u : reach[x]) {
      for (Vertex v : reach[y]) {
        if (u != v) edges.emplace_back(u, v);
      }
    }
  }
  return Graph(n, edges);
}

// Balanced tree skeleton plus, per biclique I x J, nodes v_I and v_J pointing
// to the cover sets of I and J, joined by one compressed edge.
inline DagCompression ibp_to_dag(const IntervalBicliquePartition& ibp) {
  check_ibp_structure(ibp);
  const std::size_t n = ibp.size();
  DagCompression dc;
  dc.vertex_count = n;
  if (n == 0) return dc;
  const BalancedTree tree(n);
  auto node = [&](int t) -> std::int32_t { return tree.is_leaf(t) ? ibp.order.vertex_at(t) : t; };
  for (const auto& rec : tree.internal_nodes()) {
    dc.arcs.emplace_back(rec.id, node(rec.left));
    dc.arcs.emplace_back(rec.id, node(rec.right));
  }
  auto next = static_cast<std::int32_t>(2 * n);
  for (const Biclique& q : ibp.bicliques) {
    const std::int32_t vi = next++;
    const std::int32_t vj = next++;
    for (int t : tree.cover_set(q.a, q.b)) dc.arcs.emplace_back(vi, node(t));
    for (int t : tree.cover_set(q.c, q.d)) dc.arcs.emplace_back(vj, node(t));
    dc.compressed.emplace_back(vi, vj);
  }
  dc.node_count = static_cast<std::size_t>(next - 1);
  return dc;
}

// Positive model on the balanced tree: every biclique I x J becomes S_I x S_J.
inline SignedTreeModel ibp_to_positive_model(const IntervalBicliquePartition& ibp) {
  check_ibp_structure(ibp);
  const std::size_t n = ibp.size();
  const BalancedTree tree(n);
  auto node = [&](int t) -> NodeId { return tree.is_leaf(t) ? ibp.order.vertex_at(t) : t; };
  std::vector<InternalNode> internals;
  for (const auto& rec : tree.internal_nodes()) internals.push_back({rec.id, node(rec.left), node(rec.right)});
  std::vector<NodePair> positive;
  for (const Biclique& q : ibp.bicliques) {
    const auto si = tree.cover_set(q.a, q.b);
    const auto sj = tree.cover_set(q.c, q.d);
    for (int s : si) {
      for (int t : sj) positive.push_back({node(s), node(t)});
    }
  }
  return SignedTreeModel(n, std::move(internals), {}, std::move(positive));
}

// Replays the sequence: pairs from u to the vertices distinguishing it from v,
// then {u, v} itself, then a fresh parent standing for v.
inline SignedTreeModel sdseq_to_stm(const Graph& g, const SdDegenSequence& seq) {
  const std::size_t n = g.size();
  check_sd_sequence(n, seq);
  std::vector<std::set<Vertex>> adj(n + 1);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<NodeId> current(n + 1);
  for (std::size_t v = 1; v <= n; ++v) current[v] = static_cast<NodeId>(v);
  std::vector<InternalNode> internals;
  std::vector<NodePair> neg, pos;
  for (std::size_t i = 0; i < seq.pairs.size(); ++i) {
    const auto [u, v] = seq.pairs[i];
    const auto& nu = adj[u];
    const auto& nv = adj[v];
    for (Vertex a : nv) {
      if (a != u && !nu.count(a)) neg.push_back({current[u], current[a]});
    }
    for (Vertex b : nu) {
      if (b != v && !nv.count(b)) pos.push_back({current[u], current[b]});
    }
    (nu.count(v) ? pos : neg).push_back({current[u], current[v]});
    const auto parent = static_cast<NodeId>(n + i + 1);
    internals.push_back({parent, current[u], current[v]});
    current[v] = parent;
    for (Vertex w : nu) adj[w].erase(u);
    adj[u].clear();
  }
  return SignedTreeModel(n, std::move(internals), std::move(neg), std::move(pos));
}

// Parts become tree nodes and resolves become pairs; the first resolve between
// two parts decides all of their pairs, so later repeats are dropped. Loops
// from self-resolves are then removed.
inline SignedTreeModel cseq_to_stm(const ConstructionSequence& seq, std::size_t n) {
  if (n == 0) throw InputError("construction sequences need at least one vertex");
  const ConstructionSequence full = complete_merges(n, seq);
  std::vector<InternalNode> internals;
  std::vector<NodePair> neg, pos;
  std::set<std::pair<std::int32_t, std::int32_t>> resolved;
  auto next = static_cast<NodeId>(n + 1);
  for (const CsOp& op : full.ops) {
    if (!op.is_resolve()) {
      internals.push_back({next++, op.a, op.b});
      continue;
    }
    if (!resolved.insert({std::min(op.a, op.b), std::max(op.a, op.b)}).second) continue;
    (op.kind == CsKind::ResolvePositive ? pos : neg).push_back({op.a, op.b});
  }
  return remove_loops(SignedTreeModel(n, std::move(internals), std::move(neg), std::move(pos)));
}

// Moves each resolve to just before the merge that destroys one of its parts
// (or to the end), keeping relative order, and drops repeated resolves.
inline ConstructionSequence cseq_shorten(const ConstructionSequence& seq, std::size_t n) {
  const std::size_t parts = check_construction_sequence(n, seq);
  const std::size_t merges = seq.merge_count();
  std::vector<std::size_t> destroyed(parts + 1, merges);  // 0-based merge index, `merges` = never
  {
    std::size_t k = 0;
    for (const CsOp& op : seq.ops) {
      if (op.is_resolve()) continue;
      destroyed[op.a] = destroyed[op.b] = k++;
    }
  }
  std::vector<std::vector<CsOp>> before(merges + 1);
  std::vector<CsOp> merge_ops;
  for (const CsOp& op : seq.ops) {
    if (op.is_resolve()) {
      before[std::min(destroyed[op.a], destroyed[op.b])].push_back(op);
    } else {
      merge_ops.push_back(op);
    }
  }
  ConstructionSequence out;
  out.ops.reserve(seq.ops.size());
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (std::size_t k = 0; k <= merges; ++k) {
    for (const CsOp& op : before[k]) {
      if (seen.insert({std::min(op.a, op.b), std::max(op.a, op.b)}).second) out.ops.push_back(op);
    }
    if (k < merges) out.ops.push_back(merge_ops[k]);
  }
  return out;
}

}  // namespace stm

#endif  // STM_CONVERT_HPP
