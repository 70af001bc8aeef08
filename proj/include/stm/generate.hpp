#ifndef STM_GENERATE_HPP
#define STM_GENERATE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "stm/error.hpp"
#include "stm/graph.hpp"
#include "stm/sequence.hpp"
#include "stm/tree_model.hpp"

namespace stm::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Random full binary tree: repeatedly join two random roots under a new node.
inline std::vector<InternalNode> random_tree(std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("random_tree needs n >= 1");
  std::vector<NodeId> roots(n);
  std::iota(roots.begin(), roots.end(), NodeId{1});
  std::vector<InternalNode> internals;
  auto next = static_cast<NodeId>(n + 1);
  while (roots.size() > 1) {
    const std::size_t i = uniform_index(rng, roots.size());
    std::swap(roots[i], roots.back());
    const NodeId a = roots.back();
    roots.pop_back();
    const std::size_t j = uniform_index(rng, roots.size());
    const NodeId b = roots[j];
    roots[j] = next;
    internals.push_back({next++, a, b});
  }
  return internals;
}

struct StmSpec {
  std::size_t n = 8;
  std::size_t pairs = 8;           // target; rejection may end with fewer
  double positive_fraction = 0.5;
  double loop_probability = 0.0;   // chance that an accepted candidate is a loop
  std::size_t attempts_per_pair = 64;
};

// Random tree plus pairs drawn uniformly over node pairs, rejecting anything
// that is comparable, repeated or crossing.
inline SignedTreeModel random_stm(const StmSpec& spec, Rng& rng) {
  const SignedTreeModel tree(spec.n, random_tree(spec.n, rng));
  const std::size_t total = tree.node_count();
  std::vector<NodePair> neg, pos;
  std::set<NodePair> used;
  detail::Incidence inc(tree);
  const std::size_t budget = spec.pairs * spec.attempts_per_pair;
  for (std::size_t attempt = 0; attempt < budget && neg.size() + pos.size() < spec.pairs; ++attempt) {
    const Sign sign = coin(rng, spec.positive_fraction) ? Sign::Positive : Sign::Negative;
    NodePair p;
    if (spec.loop_probability > 0 && coin(rng, spec.loop_probability)) {
      const auto t = static_cast<NodeId>(1 + uniform_index(rng, total));
      p = {t, t};
    } else {
      p = tree.canonical({static_cast<NodeId>(1 + uniform_index(rng, total)), static_cast<NodeId>(1 + uniform_index(rng, total))});
      if (tree.comparable(p.x, p.y) || would_cross(tree, inc, p)) continue;
    }
    if (!used.insert(p).second) continue;
    auto& list = sign == Sign::Positive ? pos : neg;
    if (!p.is_loop()) {
      inc.at[p.x].push_back({p.y, {sign, list.size()}});
      inc.at[p.y].push_back({p.x, {sign, list.size()}});
    }
    list.push_back(p);
  }
  return tree.with_pairs(std::move(neg), std::move(pos));
}

struct PlantedInstance {
  Graph graph;
  SdDegenSequence sequence;
};

// Grows a graph vertex by vertex: each newcomer copies the neighbourhood of an
// earlier vertex with at most `width` flips, so eliminating newcomers in reverse
// order against their templates has width <= `width`. Labels are shuffled.
inline PlantedInstance planted_sdseq(std::size_t n, std::size_t width, Rng& rng) {
  if (n < 2) throw InputError("planted instances need n >= 2");
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  std::vector<Vertex> template_of(n + 1, 0);
  for (std::size_t k = 2; k <= n; ++k) {
    const auto v = static_cast<std::size_t>(1 + uniform_index(rng, k - 1));
    template_of[k] = static_cast<Vertex>(v);
    for (std::size_t w = 1; w < k; ++w) {
      if (w != v) adj[k][w] = adj[w][k] = adj[v][w];
    }
    const std::size_t flips = std::uniform_int_distribution<std::size_t>(0, width)(rng);
    for (std::size_t f = 0; f < flips && k > 2; ++f) {
      auto w = static_cast<std::size_t>(1 + uniform_index(rng, k - 1));
      if (w == v) continue;
      adj[k][w] = adj[w][k] = static_cast<char>(!adj[k][w]);
    }
    adj[k][v] = adj[v][k] = static_cast<char>(coin(rng));
  }
  std::vector<Vertex> label(n + 1);
  std::iota(label.begin(), label.end(), Vertex{0});
  std::shuffle(label.begin() + 1, label.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t w = u + 1; w <= n; ++w) {
      if (adj[u][w]) edges.emplace_back(label[u], label[w]);
    }
  }
  PlantedInstance out{Graph(n, edges), {}};
  for (std::size_t k = n; k >= 2; --k) out.sequence.pairs.push_back({label[k], label[template_of[k]]});
  return out;
}

// n - 1 merges with `resolves` resolves interleaved at random positions.
inline ConstructionSequence random_cseq(std::size_t n, std::size_t resolves, Rng& rng, double positive_fraction = 0.5) {
  if (n == 0) throw InputError("random_cseq needs n >= 1");
  std::vector<char> plan(n - 1, 1);
  plan.insert(plan.end(), resolves, 0);
  std::shuffle(plan.begin(), plan.end(), rng);
  std::vector<std::int32_t> alive(n);
  std::iota(alive.begin(), alive.end(), 1);
  auto next = static_cast<std::int32_t>(n + 1);
  ConstructionSequence seq;
  for (char merge : plan) {
    if (merge) {
      const std::size_t i = uniform_index(rng, alive.size());
      std::swap(alive[i], alive.back());
      const std::int32_t a = alive.back();
      alive.pop_back();
      const std::size_t j = uniform_index(rng, alive.size());
      seq.ops.push_back({CsKind::Merge, a, alive[j]});
      alive[j] = next++;
    } else {
      const std::int32_t a = alive[uniform_index(rng, alive.size())];
      const std::int32_t b = alive[uniform_index(rng, alive.size())];
      seq.ops.push_back({coin(rng, positive_fraction) ? CsKind::ResolvePositive : CsKind::ResolveNegative, a, b});
    }
  }
  return seq;
}

inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      if (coin(rng, p)) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph(n, edges);
}

}  // namespace stm::gen

#endif  // STM_GENERATE_HPP
