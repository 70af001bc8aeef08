#ifndef STM_GRAPH_HPP
#define STM_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stm/error.hpp"

namespace stm {

// Vertices are dense 1-based ids.
using Vertex = std::int32_t;
using Dist = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

// Undirected simple graph on vertices 1..n with sorted adjacency arrays.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : adj_(n) {}

  Graph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
    for (auto [u, v] : edges) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
      adj_[u - 1].push_back(v);
      adj_[v - 1].push_back(u);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  std::size_t size() const noexcept { return adj_.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t total = 0;
    for (const auto& list : adj_) total += list.size();
    return total / 2;
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v - 1];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& list = adj_[u - 1];
    return std::binary_search(list.begin(), list.end(), v);
  }

  // Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      const auto u = static_cast<Vertex>(i + 1);
      for (Vertex v : adj_[i]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool contains(Vertex v) const noexcept { return v >= 1 && static_cast<std::size_t>(v) <= adj_.size(); }

  void check_vertex(Vertex v) const {
    if (!contains(v)) {
      throw InputError("vertex " + std::to_string(v) + " outside [1," + std::to_string(adj_.size()) + "]");
    }
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
};

// A bijection between vertices and positions 1..n.
class LinearOrder {
 public:
  LinearOrder() = default;

  static LinearOrder identity(std::size_t n) {
    std::vector<Vertex> seq(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = static_cast<Vertex>(i + 1);
    return from_sequence(std::move(seq));
  }

  // `sequence[i]` is the vertex placed at position i + 1.
  static LinearOrder from_sequence(std::vector<Vertex> sequence) {
    LinearOrder order;
    const std::size_t n = sequence.size();
    order.position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex v = sequence[i];
      if (v < 1 || static_cast<std::size_t>(v) > n || order.position_[v - 1] != 0) {
        throw InputError("order is not a permutation of [1," + std::to_string(n) + "]");
      }
      order.position_[v - 1] = static_cast<int>(i + 1);
    }
    order.vertex_ = std::move(sequence);
    return order;
  }

  std::size_t size() const noexcept { return vertex_.size(); }
  Vertex vertex_at(int position) const { return vertex_[position - 1]; }
  int position_of(Vertex v) const { return position_[v - 1]; }
  const std::vector<Vertex>& sequence() const noexcept { return vertex_; }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;

 private:
  std::vector<Vertex> vertex_;
  std::vector<int> position_;
};

// Textbook BFS. Entry v - 1 holds dist(source, v), kUnreachable if none.
inline std::vector<Dist> bfs_sssp_oracle(const Graph& g, Vertex source) {
  g.check_vertex(source);
  std::vector<Dist> dist(g.size(), kUnreachable);
  std::deque<Vertex> queue{source};
  dist[source - 1] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w - 1] == kUnreachable) {
        dist[w - 1] = dist[u - 1] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// |(N(u) \ {v}) xor (N(v) \ {u})|
inline std::size_t symmetric_difference(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw InputError("symmetric difference needs two distinct vertices");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      if (a[i] != v) ++count;
      ++i;
    } else if (i == a.size() || b[j] < a[i]) {
      if (b[j] != u) ++count;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return count;
}

inline bool graphs_equal(const Graph& g1, const Graph& g2) { return g1 == g2; }

}  // namespace stm

#endif  // STM_GRAPH_HPP
