#ifndef STM_SD_DEGENERACY_HPP
#define STM_SD_DEGENERACY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "stm/error.hpp"
#include "stm/graph.hpp"
#include "stm/sequence.hpp"

namespace stm {

struct SdConfig {
  std::int64_t good = 1;         // g; the main loop runs while more than 2g vertices remain
  std::int64_t good_enough = 1;  // gamma; pairs above it are rejected
  double sample_prob = 0.5;      // p
  std::int64_t cap = 1;          // iteration limit of the main loop
  std::uint64_t seed = 0;

  void check() const {
    if (!(sample_prob > 0.0 && sample_prob <= 1.0)) throw InputError("sampling probability must lie in (0,1]");
    if (good < 0 || good > good_enough) throw InputError("thresholds must satisfy 0 <= g <= gamma");
    if (cap < 1) throw InputError("iteration cap must be positive");
  }
};

namespace detail {
// Round up, forgiving floating noise just above an integer.
inline std::int64_t ceil_loose(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }
}  // namespace detail

// g = f, gamma = 2f(c+3) ln n, p = 1/(2f), cap = 32(c+3) f ln n.
inline SdConfig preset_twinwidth(std::int64_t f_d, double c, double n, std::uint64_t seed = 0) {
  if (f_d < 1 || !(c > 0) || !(n >= 2)) throw InputError("twin-width preset needs f_d >= 1, c > 0, n >= 2");
  const double f = static_cast<double>(f_d);
  const double ln = std::log(n);
  return {f_d, detail::ceil_loose(2 * f * (c + 3) * ln), 1 / (2 * f), detail::ceil_loose(32 * (c + 3) * f * ln), seed};
}

// s = beta n^(1/3), g = s + 2n^(1/3), gamma = 2(c+3) g ln n, p = 1/(2g), cap = 64 n^(2/3).
inline SdConfig preset_symdiff(double beta, double c, double n, std::uint64_t seed = 0) {
  if (!(beta >= 1) || !(c > 0) || !(n >= 2)) throw InputError("symmetric-difference preset needs beta >= 1, c > 0, n >= 2");
  const double root = std::cbrt(n);
  const double g = beta * root + 2 * root;
  return {detail::ceil_loose(g), detail::ceil_loose(2 * (c + 3) * g * std::log(n)), 1 / (2 * g),
          detail::ceil_loose(64 * root * root), seed};
}

struct WidthReport {
  std::vector<std::size_t> step_sd;  // sd of each pair when it is applied
  std::size_t width = 0;
  std::size_t loop_steps = 0;  // leading steps produced by the sampling loop
  std::size_t loop_width = 0;
  std::size_t tail_width = 0;
};

// Incrementally shrinking induced subgraph over the original adjacency lists.
class InducedView {
 public:
  explicit InducedView(const Graph& g) : g_(g), alive_(g.size() + 1, 1), remaining_(g.size()) { alive_[0] = 0; }

  bool alive(Vertex v) const { return alive_[v] != 0; }
  std::size_t remaining() const noexcept { return remaining_; }

  void remove(Vertex v) {
    if (alive_[v]) {
      alive_[v] = 0;
      --remaining_;
    }
  }

  std::size_t sd(Vertex u, Vertex v) const {
    auto a = g_.neighbors(u);
    auto b = g_.neighbors(v);
    std::size_t i = 0, j = 0, count = 0;
    auto counts = [&](Vertex w) { return w != u && w != v && alive_[w]; };
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        count += counts(a[i++]);
      } else if (i == a.size() || b[j] < a[i]) {
        count += counts(b[j++]);
      } else {
        ++i;
        ++j;
      }
    }
    return count;
  }

  const Graph& graph() const noexcept { return g_; }

 private:
  const Graph& g_;
  std::vector<char> alive_;
  std::size_t remaining_;
};

// Replays the sequence and reports the sd of every pair at its step.
inline WidthReport validate_sequence(const Graph& g, const SdDegenSequence& seq) {
  check_sd_sequence(g.size(), seq);
  InducedView view(g);
  WidthReport report;
  for (const auto& [u, v] : seq.pairs) {
    const std::size_t s = view.sd(u, v);
    report.step_sd.push_back(s);
    report.width = std::max(report.width, s);
    view.remove(u);
  }
  report.loop_steps = report.step_sd.size();
  report.loop_width = report.width;
  return report;
}

struct SdOutcome {
  enum class Status { Ok, CapExceeded };
  Status status = Status::Ok;
  SdDegenSequence sequence;  // partial when the cap was hit
  WidthReport report;
  std::size_t iterations = 0;

  bool ok() const noexcept { return status == Status::Ok; }
};

namespace detail {

struct Fingerprint {
  std::uint64_t lo = 0, hi = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const noexcept { return static_cast<std::size_t>(f.lo ^ (f.hi * 31)); }
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Fingerprint fingerprint(const std::vector<Vertex>& key, std::uint64_t salt_lo, std::uint64_t salt_hi) {
  Fingerprint f{salt_lo, salt_hi};
  for (Vertex v : key) {
    f.lo = mix64(f.lo ^ static_cast<std::uint64_t>(v));
    f.hi = mix64(f.hi + static_cast<std::uint64_t>(v) * 0x632be59bd9b4e019ULL);
  }
  f.lo = mix64(f.lo ^ key.size());
  return f;
}

}  // namespace detail

// Sampling-based sd-degeneracy sequence (Las Vegas). Each round samples X,
// groups the remaining vertices by their neighbours in X, pairs up members of
// each group and keeps the pairs whose sd does not exceed gamma.
inline SdOutcome sd_sequence_randomized(const Graph& g, const SdConfig& cfg) {
  cfg.check();
  const std::size_t n = g.size();
  if (n < 2) throw InputError("sd-degeneracy sequences need at least two vertices");
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution sample(cfg.sample_prob);
  const std::uint64_t salt_lo = rng();
  const std::uint64_t salt_hi = rng();

  InducedView view(g);
  SdOutcome out;
  std::vector<char> in_x(n + 1, 0);
  const auto threshold = static_cast<std::size_t>(std::max<std::int64_t>(cfg.good, 0)) * 2;

  while (view.remaining() > threshold) {
    if (out.iterations >= static_cast<std::size_t>(cfg.cap)) {
      out.status = SdOutcome::Status::CapExceeded;
      break;
    }
    ++out.iterations;
    for (std::size_t v = 1; v <= n; ++v) in_x[v] = view.alive(static_cast<Vertex>(v)) && sample(rng);

    // Buckets in order of first appearance; members in increasing id.
    std::vector<std::vector<Vertex>> keys;
    std::vector<std::vector<Vertex>> members;
    std::unordered_map<detail::Fingerprint, std::vector<std::size_t>, detail::FingerprintHash> index;
    std::vector<Vertex> key;
    for (std::size_t i = 1; i <= n; ++i) {
      const auto v = static_cast<Vertex>(i);
      if (!view.alive(v)) continue;
      key.clear();
      for (Vertex w : g.neighbors(v)) {
        if (in_x[w] && view.alive(w)) key.push_back(w);
      }
      auto& slot = index[detail::fingerprint(key, salt_lo, salt_hi)];
      auto hit = std::find_if(slot.begin(), slot.end(), [&](std::size_t b) { return keys[b] == key; });
      if (hit == slot.end()) {
        slot.push_back(keys.size());
        keys.push_back(key);
        members.push_back({v});
      } else {
        members[*hit].push_back(v);
      }
    }

    std::vector<Vertex> removed;
    for (const auto& bucket : members) {
      for (std::size_t k = 0; k + 1 < bucket.size(); k += 2) {
        const Vertex u = bucket[k];
        const Vertex v = bucket[k + 1];
        if (view.sd(u, v) <= static_cast<std::size_t>(cfg.good_enough)) {
          out.sequence.pairs.push_back({u, v});
          removed.push_back(u);
        }
      }
    }
    for (Vertex u : removed) view.remove(u);
  }

  const std::size_t loop_steps = out.sequence.pairs.size();
  if (out.ok()) {
    std::vector<Vertex> rest;
    for (std::size_t v = 1; v <= n; ++v) {
      if (view.alive(static_cast<Vertex>(v))) rest.push_back(static_cast<Vertex>(v));
    }
    for (std::size_t k = 0; k + 1 < rest.size(); ++k) out.sequence.pairs.push_back({rest[k], rest[k + 1]});
    out.report = validate_sequence(g, out.sequence);
  } else {
    InducedView replay(g);
    for (const auto& [u, v] : out.sequence.pairs) {
      const std::size_t s = replay.sd(u, v);
      out.report.step_sd.push_back(s);
      out.report.width = std::max(out.report.width, s);
      replay.remove(u);
    }
  }
  out.report.loop_steps = loop_steps;
  out.report.loop_width = 0;
  out.report.tail_width = 0;
  for (std::size_t i = 0; i < out.report.step_sd.size(); ++i) {
    auto& w = i < loop_steps ? out.report.loop_width : out.report.tail_width;
    w = std::max(w, out.report.step_sd[i]);
  }
  return out;
}

// Exact greedy baseline: always eliminate the lexicographically first pair of
// minimum current sd, removing its smaller vertex. O(n^3) with an sd matrix
// that is updated as vertices disappear.
inline SdOutcome sd_sequence_greedy(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) throw InputError("sd-degeneracy sequences need at least two vertices");
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<std::vector<std::int32_t>> sd(n + 1, std::vector<std::int32_t>(n + 1, 0));
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      std::int32_t s = 0;
      for (std::size_t w = 1; w <= n; ++w) {
        if (w != u && w != v && adj[u][w] != adj[v][w]) ++s;
      }
      sd[u][v] = sd[v][u] = s;
    }
  }
  std::vector<char> alive(n + 1, 1);
  SdOutcome out;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bu = 0, bv = 0;
    for (std::size_t u = 1; u <= n; ++u) {
      if (!alive[u]) continue;
      for (std::size_t v = u + 1; v <= n; ++v) {
        if (alive[v] && (bu == 0 || sd[u][v] < sd[bu][bv])) {
          bu = u;
          bv = v;
        }
      }
    }
    out.sequence.pairs.push_back({static_cast<Vertex>(bu), static_cast<Vertex>(bv)});
    alive[bu] = 0;
    for (std::size_t a = 1; a <= n; ++a) {
      if (!alive[a] || !adj[a][bu]) continue;
      // bu distinguishes a from every b that is not adjacent to it.
      for (std::size_t b = 1; b <= n; ++b) {
        if (b != a && alive[b] && !adj[b][bu]) {
          --sd[a][b];
          --sd[b][a];
        }
      }
    }
  }
  out.iterations = n - 1;
  out.report = validate_sequence(g, out.sequence);
  return out;
}

}  // namespace stm

#endif  // STM_SD_DEGENERACY_HPP
