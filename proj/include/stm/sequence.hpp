#ifndef STM_SEQUENCE_HPP
#define STM_SEQUENCE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stm/error.hpp"
#include "stm/graph.hpp"

namespace stm {

struct SdPair {
  Vertex first = 0;   // removed
  Vertex second = 0;  // kept
  friend auto operator<=>(const SdPair&, const SdPair&) = default;
};

struct SdDegenSequence {
  std::vector<SdPair> pairs;
  friend bool operator==(const SdDegenSequence&, const SdDegenSequence&) = default;
};

// Structural check: n - 1 pairs, distinct entries, every first element fresh
// and never seen again. Throws SequenceError naming the 1-based step.
inline void check_sd_sequence(std::size_t n, const SdDegenSequence& seq) {
  if (n < 1) throw InputError("sd-degeneracy sequences need at least one vertex");
  if (seq.pairs.size() != n - 1) {
    throw SequenceError(0, "expected " + std::to_string(n - 1) + " pairs, got " + std::to_string(seq.pairs.size()));
  }
  std::vector<char> removed(n + 1, 0);
  for (std::size_t i = 0; i < seq.pairs.size(); ++i) {
    const auto [u, v] = seq.pairs[i];
    const std::size_t step = i + 1;
    for (Vertex w : {u, v}) {
      if (w < 1 || static_cast<std::size_t>(w) > n) throw SequenceError(step, "vertex " + std::to_string(w) + " out of range");
      if (removed[w]) throw SequenceError(step, "vertex " + std::to_string(w) + " was already removed");
    }
    if (u == v) throw SequenceError(step, "pair repeats vertex " + std::to_string(u));
    removed[u] = 1;
  }
}

enum class CsKind : std::uint8_t { Merge, ResolvePositive, ResolveNegative };

struct CsOp {
  CsKind kind = CsKind::Merge;
  std::int32_t a = 0;
  std::int32_t b = 0;
  bool is_resolve() const noexcept { return kind != CsKind::Merge; }
  friend auto operator<=>(const CsOp&, const CsOp&) = default;
};

// Parts are numbered by creation: singletons 1..n, then n + k for the k-th merge.
struct ConstructionSequence {
  std::vector<CsOp> ops;

  std::size_t merge_count() const {
    return static_cast<std::size_t>(std::count_if(ops.begin(), ops.end(), [](const CsOp& op) { return !op.is_resolve(); }));
  }
  std::size_t resolve_count() const { return ops.size() - merge_count(); }

  friend bool operator==(const ConstructionSequence&, const ConstructionSequence&) = default;
};

// Checks that every operation names live parts. Returns the total part count.
inline std::size_t check_construction_sequence(std::size_t n, const ConstructionSequence& seq) {
  std::vector<char> alive(n + 1, 1);
  alive[0] = 0;
  for (std::size_t i = 0; i < seq.ops.size(); ++i) {
    const CsOp& op = seq.ops[i];
    const std::size_t step = i + 1;
    for (auto id : {op.a, op.b}) {
      if (id < 1 || static_cast<std::size_t>(id) >= alive.size() || !alive[id]) {
        throw SequenceError(step, "part " + std::to_string(id) + " is not alive");
      }
    }
    if (!op.is_resolve()) {
      if (op.a == op.b) throw SequenceError(step, "cannot merge part " + std::to_string(op.a) + " with itself");
      alive[op.a] = alive[op.b] = 0;
      alive.push_back(1);
    }
  }
  return alive.size() - 1;
}

// Appends merges of the remaining parts in id order so the final partition is trivial.
inline ConstructionSequence complete_merges(std::size_t n, const ConstructionSequence& seq) {
  const std::size_t parts = check_construction_sequence(n, seq);
  std::vector<char> alive(parts + 1, 1);
  alive[0] = 0;
  for (const CsOp& op : seq.ops) {
    if (!op.is_resolve()) alive[op.a] = alive[op.b] = 0;
  }
  ConstructionSequence out = seq;
  std::int32_t current = 0;
  std::int32_t next = static_cast<std::int32_t>(parts) + 1;
  for (std::size_t id = 1; id <= parts; ++id) {
    if (!alive[id]) continue;
    if (current == 0) {
      current = static_cast<std::int32_t>(id);
    } else {
      out.ops.push_back({CsKind::Merge, current, static_cast<std::int32_t>(id)});
      current = next++;
    }
  }
  return out;
}

// Graph built by a construction sequence, replayed pair by pair. Quadratic per
// resolve; meant for moderate n.
inline Graph construct_graph(std::size_t n, const ConstructionSequence& seq) {
  check_construction_sequence(n, seq);
  std::vector<std::vector<Vertex>> members(n + 1);
  for (std::size_t v = 1; v <= n; ++v) members[v] = {static_cast<Vertex>(v)};
  std::vector<std::int8_t> state(n * n, 0);  // 0 unresolved, 1 edge, -1 non-edge
  auto resolve = [&](Vertex u, Vertex v, std::int8_t value) {
    if (u == v) return;
    auto& s = state[static_cast<std::size_t>(u - 1) * n + (v - 1)];
    if (s == 0) {
      s = value;
      state[static_cast<std::size_t>(v - 1) * n + (u - 1)] = value;
    }
  };
  for (const CsOp& op : seq.ops) {
    if (op.is_resolve()) {
      const std::int8_t value = op.kind == CsKind::ResolvePositive ? 1 : -1;
      for (Vertex u : members[op.a]) {
        for (Vertex v : members[op.b]) resolve(u, v, value);
      }
    } else {
      auto merged = members[op.a];
      merged.insert(merged.end(), members[op.b].begin(), members[op.b].end());
      members[op.a].clear();
      members[op.b].clear();
      members.push_back(std::move(merged));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      if (state[(u - 1) * n + (v - 1)] == 1) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph(n, edges);
}

}  // namespace stm

#endif  // STM_SEQUENCE_HPP
