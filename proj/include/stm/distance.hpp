#ifndef STM_DISTANCE_HPP
#define STM_DISTANCE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "stm/convert.hpp"
#include "stm/error.hpp"
#include "stm/graph.hpp"
#include "stm/sequence.hpp"
#include "stm/tree_model.hpp"

namespace stm {

// Work done by the 0-1 BFS: deque pops and arc inspections.
struct OpCounter {
  std::uint64_t pops = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t total() const noexcept { return pops + relaxations; }
  OpCounter& operator+=(const OpCounter& o) noexcept {
    pops += o.pops;
    relaxations += o.relaxations;
    return *this;
  }
};

// Two copies of a DAG compression glued on the vertices. Node v - 1 is vertex v;
// the top copy points toward the vertices, the bottom copy away from them, and
// each compressed edge xy adds weight-1 arcs bottom(x) -> top(y) and back.
class DistanceModel {
 public:
  struct Arc {
    std::int32_t to;
    std::uint8_t weight;
  };

  DistanceModel() = default;

  explicit DistanceModel(const DagCompression& dc) : n_(dc.vertex_count) {
    check_dag(dc);
    const std::size_t inner = dc.node_count - dc.vertex_count;
    nodes_ = n_ + 2 * inner;
    auto top = [&](std::int32_t x) -> std::int32_t {
      return static_cast<std::size_t>(x) <= n_ ? x - 1 : static_cast<std::int32_t>(n_ + (x - n_ - 1));
    };
    auto bottom = [&](std::int32_t x) -> std::int32_t {
      return static_cast<std::size_t>(x) <= n_ ? x - 1 : static_cast<std::int32_t>(n_ + inner + (x - n_ - 1));
    };
    std::vector<std::pair<std::int32_t, Arc>> arcs;
    arcs.reserve(2 * dc.arcs.size() + 2 * dc.compressed.size());
    for (auto [p, c] : dc.arcs) {
      arcs.push_back({top(p), {top(c), 0}});
      arcs.push_back({bottom(c), {bottom(p), 0}});
    }
    for (auto [x, y] : dc.compressed) {
      arcs.push_back({bottom(x), {top(y), 1}});
      if (x != y) arcs.push_back({bottom(y), {top(x), 1}});
    }
    build_arcs(std::move(arcs));
  }

  // Arbitrary 0-1 digraph on `nodes` nodes whose first `shared` nodes are the vertices.
  static DistanceModel from_arcs(std::size_t nodes, std::size_t shared,
                                 std::vector<std::pair<std::int32_t, Arc>> arcs) {
    if (shared > nodes) throw InputError("more shared vertices than nodes");
    for (const auto& [from, arc] : arcs) {
      if (from < 0 || arc.to < 0 || static_cast<std::size_t>(std::max(from, arc.to)) >= nodes || arc.weight > 1) {
        throw InputError("arc outside the node range or with weight above 1");
      }
    }
    DistanceModel dm;
    dm.n_ = shared;
    dm.nodes_ = nodes;
    dm.build_arcs(std::move(arcs));
    return dm;
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return nodes_; }
  std::size_t arc_count() const noexcept { return out_.size(); }
  std::size_t size() const noexcept { return nodes_ + out_.size(); }
  bool is_shared(std::int32_t node) const noexcept { return static_cast<std::size_t>(node) < n_; }

  std::span<const Arc> out_arcs(std::int32_t node) const {
    return {out_.data() + out_start_[node], out_.data() + out_start_[node + 1]};
  }
  std::span<const Arc> in_arcs(std::int32_t node) const {
    return {in_.data() + in_start_[node], in_.data() + in_start_[node + 1]};
  }

 private:
  void build_arcs(std::vector<std::pair<std::int32_t, Arc>> arcs) {
    build_csr(arcs, out_start_, out_);
    for (auto& [from, arc] : arcs) std::swap(from, arc.to);
    build_csr(arcs, in_start_, in_);
  }

  void build_csr(const std::vector<std::pair<std::int32_t, Arc>>& arcs, std::vector<std::size_t>& start,
                 std::vector<Arc>& list) const {
    start.assign(nodes_ + 1, 0);
    for (const auto& [from, arc] : arcs) ++start[from + 1];
    for (std::size_t i = 0; i < nodes_; ++i) start[i + 1] += start[i];
    list.assign(arcs.size(), {});
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [from, arc] : arcs) list[fill[from]++] = arc;
  }

  std::size_t n_ = 0;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> out_start_, in_start_;
  std::vector<Arc> out_, in_;
};

inline DistanceModel dag_to_distance_model(const DagCompression& dc) { return DistanceModel(dc); }

enum class Direction : std::uint8_t { Forward, Backward };

struct ZeroOneResult {
  std::vector<Dist> dist;      // per model node
  std::vector<Vertex> via;     // last vertex strictly before the node on its path, 0 if none
};

// Deque BFS for 0-1 weights. Nodes farther than `radius` are left unreached.
inline ZeroOneResult zero_one_bfs(const DistanceModel& dm, std::int32_t source, Direction dir = Direction::Forward,
                                  Dist radius = kUnreachable, OpCounter* ops = nullptr) {
  if (source < 0 || static_cast<std::size_t>(source) >= dm.node_count()) throw InputError("source node out of range");
  ZeroOneResult r{std::vector<Dist>(dm.node_count(), kUnreachable), std::vector<Vertex>(dm.node_count(), 0)};
  std::vector<char> done(dm.node_count(), 0);
  std::deque<std::int32_t> queue{source};
  r.dist[source] = 0;
  OpCounter local;
  while (!queue.empty()) {
    const std::int32_t u = queue.front();
    queue.pop_front();
    ++local.pops;
    if (done[u]) continue;
    done[u] = 1;
    if (r.dist[u] > radius) break;
    const Vertex carried = dm.is_shared(u) ? u + 1 : r.via[u];
    for (const auto& arc : dir == Direction::Forward ? dm.out_arcs(u) : dm.in_arcs(u)) {
      ++local.relaxations;
      const Dist nd = r.dist[u] + arc.weight;
      if (nd > radius || nd >= r.dist[arc.to]) continue;
      r.dist[arc.to] = nd;
      r.via[arc.to] = carried;
      if (arc.weight == 0) {
        queue.push_front(arc.to);
      } else {
        queue.push_back(arc.to);
      }
    }
  }
  if (ops) *ops += local;
  return r;
}

struct ShortestPathTree {
  std::vector<Dist> dist;      // entry v - 1, kUnreachable if none
  std::vector<Vertex> parent;  // entry v - 1, 0 for the source and unreachable vertices
};

inline ShortestPathTree sssp(const DistanceModel& dm, Vertex source, OpCounter* ops = nullptr) {
  if (source < 1 || static_cast<std::size_t>(source) > dm.vertex_count()) {
    throw InputError("source " + std::to_string(source) + " outside [1," + std::to_string(dm.vertex_count()) + "]");
  }
  auto r = zero_one_bfs(dm, source - 1, Direction::Forward, kUnreachable, ops);
  ShortestPathTree t;
  t.dist.assign(r.dist.begin(), r.dist.begin() + static_cast<std::ptrdiff_t>(dm.vertex_count()));
  t.parent.assign(r.via.begin(), r.via.begin() + static_cast<std::ptrdiff_t>(dm.vertex_count()));
  t.parent[source - 1] = 0;
  return t;
}

inline ShortestPathTree sssp(const DagCompression& dc, Vertex source, OpCounter* ops = nullptr) {
  return sssp(DistanceModel(dc), source, ops);
}
inline ShortestPathTree sssp(const IntervalBicliquePartition& ibp, Vertex source, OpCounter* ops = nullptr) {
  return sssp(ibp_to_dag(ibp), source, ops);
}
inline ShortestPathTree sssp(const SignedTreeModel& stm, Vertex source, OpCounter* ops = nullptr) {
  return sssp(stm_to_ibp(stm), source, ops);
}

using DistanceMatrix = std::vector<std::vector<Dist>>;

// One BFS per source; rows are split round-robin over `threads` workers.
inline DistanceMatrix apsp(const DistanceModel& dm, unsigned threads = 1, OpCounter* ops = nullptr) {
  const std::size_t n = dm.vertex_count();
  DistanceMatrix out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<OpCounter> counters(threads);
  auto work = [&](unsigned w) {
    for (std::size_t s = w; s < n; s += threads) {
      out[s] = sssp(dm, static_cast<Vertex>(s + 1), &counters[w]).dist;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (ops) {
    for (const auto& c : counters) *ops += c;
  }
  return out;
}

inline DistanceMatrix apsp(const DagCompression& dc, unsigned threads = 1) { return apsp(DistanceModel(dc), threads); }
inline DistanceMatrix apsp(const IntervalBicliquePartition& ibp, unsigned threads = 1) {
  return apsp(ibp_to_dag(ibp), threads);
}
inline DistanceMatrix apsp(const SignedTreeModel& stm, unsigned threads = 1) { return apsp(stm_to_ibp(stm), threads); }

// Greedy maximal r-scattered subset of X with at most c vertices: take the
// smallest remaining vertex, then discard everything within distance r of it in
// either direction.
inline std::vector<Vertex> scattered_maximal_subset(const DistanceModel& dm, const std::vector<Vertex>& x, std::size_t c,
                                                    Dist r, OpCounter* ops = nullptr) {
  if (c < 1 || r < 1) throw InputError("scattered subsets need c >= 1 and r >= 1");
  std::set<Vertex> remaining;
  for (Vertex v : x) {
    if (v < 1 || static_cast<std::size_t>(v) > dm.vertex_count()) throw InputError("X contains an unknown vertex");
    remaining.insert(v);
  }
  std::vector<Vertex> s;
  while (s.size() < c && !remaining.empty()) {
    const Vertex v = *remaining.begin();
    s.push_back(v);
    for (Direction dir : {Direction::Forward, Direction::Backward}) {
      const auto ball = zero_one_bfs(dm, v - 1, dir, r, ops);
      for (std::size_t u = 0; u < dm.vertex_count(); ++u) {
        if (ball.dist[u] <= r) remaining.erase(static_cast<Vertex>(u + 1));
      }
    }
  }
  return s;
}

// A positive tree model read as a DAG compression: tree arcs plus one
// compressed edge per pair. Loops are allowed and cover their own leaf set.
inline DagCompression positive_model_to_dag(const SignedTreeModel& stm) {
  if (!stm.negative().empty()) throw InputError("positive_model_to_dag needs a model without negative pairs");
  DagCompression dc;
  dc.vertex_count = stm.leaf_count();
  dc.node_count = stm.node_count();
  for (const auto& rec : stm.internal_nodes()) {
    dc.arcs.emplace_back(rec.id, rec.left);
    dc.arcs.emplace_back(rec.id, rec.right);
  }
  for (NodePair p : stm.positive()) dc.compressed.emplace_back(p.x, p.y);
  return dc;
}

// Distance model of the graph of pairs resolved by the first `steps` operations,
// via the positive sequence that resolves the same part pairs.
inline DistanceModel resolved_pairs_distance_model(const ConstructionSequence& seq, std::size_t n, std::size_t steps) {
  steps = std::min(steps, seq.ops.size());
  ConstructionSequence prefix{std::vector<CsOp>(seq.ops.begin(), seq.ops.begin() + static_cast<std::ptrdiff_t>(steps))};
  const std::size_t parts = check_construction_sequence(n, prefix);
  DagCompression dc;
  dc.vertex_count = n;
  dc.node_count = parts;
  auto next = static_cast<std::int32_t>(n + 1);
  for (const CsOp& op : prefix.ops) {
    if (op.is_resolve()) {
      dc.compressed.emplace_back(op.a, op.b);
    } else {
      dc.arcs.emplace_back(next, op.a);
      dc.arcs.emplace_back(next, op.b);
      ++next;
    }
  }
  return DistanceModel(dc);
}

// Maximum over all states (including the initial one) and vertices v of the
// number of parts meeting the radius-r ball of v in the resolved-pairs graph.
inline std::size_t radius_r_width(const ConstructionSequence& seq, std::size_t n, Dist r) {
  check_construction_sequence(n, seq);
  if (n == 0) return 0;
  std::vector<std::vector<Vertex>> members(n + 1);
  std::vector<std::int32_t> part_of(n + 1);
  for (std::size_t v = 1; v <= n; ++v) {
    members[v] = {static_cast<Vertex>(v)};
    part_of[v] = static_cast<std::int32_t>(v);
  }
  std::vector<std::vector<char>> resolved(n + 1, std::vector<char>(n + 1, 0));
  std::vector<std::vector<Vertex>> adj(n + 1);

  auto measure = [&]() {
    std::size_t best = 0;
    std::vector<Dist> dist(n + 1);
    std::vector<char> counted(members.size(), 0);
    for (std::size_t s = 1; s <= n; ++s) {
      std::fill(dist.begin(), dist.end(), kUnreachable);
      std::fill(counted.begin(), counted.end(), 0);
      std::deque<Vertex> queue{static_cast<Vertex>(s)};
      dist[s] = 0;
      std::size_t parts = 0;
      while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (!counted[part_of[u]]) {
          counted[part_of[u]] = 1;
          ++parts;
        }
        if (dist[u] == r) continue;
        for (Vertex w : adj[u]) {
          if (dist[w] == kUnreachable) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
        }
      }
      best = std::max(best, parts);
    }
    return best;
  };

  std::size_t width = measure();
  for (const CsOp& op : seq.ops) {
    if (op.is_resolve()) {
      for (Vertex u : members[op.a]) {
        for (Vertex v : members[op.b]) {
          if (u == v || resolved[u][v]) continue;
          resolved[u][v] = resolved[v][u] = 1;
          adj[u].push_back(v);
          adj[v].push_back(u);
        }
      }
    } else {
      auto merged = members[op.a];
      merged.insert(merged.end(), members[op.b].begin(), members[op.b].end());
      members[op.a].clear();
      members[op.b].clear();
      for (Vertex v : merged) part_of[v] = static_cast<std::int32_t>(members.size());
      members.push_back(std::move(merged));
    }
    width = std::max(width, measure());
  }
  return width;
}

}  // namespace stm

#endif  // STM_DISTANCE_HPP
