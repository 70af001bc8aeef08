#ifndef STM_MATMUL_HPP
#define STM_MATMUL_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "stm/convert.hpp"
#include "stm/error.hpp"
#include "stm/graph.hpp"

namespace stm {

// Additive group with wrap-around: overflow is ordinary group arithmetic.
struct WrappingInt64 {
  using value_type = std::int64_t;
  static value_type zero() noexcept { return 0; }
  static value_type add(value_type a, value_type b) noexcept {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
  }
  static value_type sub(value_type a, value_type b) noexcept {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
  }
};

template <class G>
concept AdditiveGroup = requires(typename G::value_type a) {
  { G::zero() } -> std::convertible_to<typename G::value_type>;
  { G::add(a, a) } -> std::convertible_to<typename G::value_type>;
  { G::sub(a, a) } -> std::convertible_to<typename G::value_type>;
};

// Square matrix, row-major, 0-based access.
template <class T>
struct GroupMatrix {
  std::size_t n = 0;
  std::vector<T> data;

  GroupMatrix() = default;
  GroupMatrix(std::size_t size, T fill) : n(size), data(size * size, fill) {}

  T& at(std::size_t r, std::size_t c) { return data[r * n + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * n + c]; }

  friend bool operator==(const GroupMatrix&, const GroupMatrix&) = default;
};

// y = adj(G) x in the order of the partition, with prefix sums of x and a
// difference array over the rows. Entry i - 1 of x and y is position i.
template <AdditiveGroup G = WrappingInt64>
std::vector<typename G::value_type> ibp_matvec(const IntervalBicliquePartition& ibp,
                                               std::span<const typename G::value_type> x,
                                               std::uint64_t* group_ops = nullptr) {
  using T = typename G::value_type;
  const std::size_t n = ibp.size();
  if (x.size() != n) throw InputError("vector length " + std::to_string(x.size()) + " does not match n = " + std::to_string(n));
  std::uint64_t ops = 0;
  std::vector<T> prefix(n + 1, G::zero());
  for (std::size_t i = 1; i <= n; ++i) {
    prefix[i] = G::add(prefix[i - 1], x[i - 1]);
    ++ops;
  }
  std::vector<T> diff(n + 2, G::zero());
  auto apply = [&](int r1, int r2, int c1, int c2) {
    const T block = G::sub(prefix[c2], prefix[c1 - 1]);
    diff[r1] = G::add(diff[r1], block);
    ops += 2;
    if (static_cast<std::size_t>(r2) < n) {
      diff[r2 + 1] = G::sub(diff[r2 + 1], block);
      ++ops;
    }
  };
  for (const Biclique& q : ibp.bicliques) {
    apply(q.a, q.b, q.c, q.d);
    apply(q.c, q.d, q.a, q.b);
  }
  std::vector<T> y(n);
  T running = G::zero();
  for (std::size_t i = 1; i <= n; ++i) {
    running = G::add(running, diff[i]);
    y[i - 1] = running;
    ++ops;
  }
  if (group_ops) *group_ops += ops;
  return y;
}

template <AdditiveGroup G = WrappingInt64>
std::vector<typename G::value_type> ibp_matvec(const IntervalBicliquePartition& ibp,
                                               const std::vector<typename G::value_type>& x,
                                               std::uint64_t* group_ops = nullptr) {
  return ibp_matvec<G>(ibp, std::span<const typename G::value_type>(x), group_ops);
}

// adj(G) N with rows and columns of both matrices in `order`. Each column is
// permuted into the partition's own order, multiplied there, and permuted back.
template <AdditiveGroup G = WrappingInt64>
GroupMatrix<typename G::value_type> adjacency_matmul(const Graph& g, const LinearOrder& order,
                                                     const GroupMatrix<typename G::value_type>& m,
                                                     const IntervalBicliquePartition& ibp, bool verify = false,
                                                     unsigned threads = 1) {
  using T = typename G::value_type;
  const std::size_t n = g.size();
  if (order.size() != n || m.n != n || ibp.size() != n) throw InputError("matrix, order and partition sizes differ");
  if (verify && !(ibp_to_graph(ibp) == g)) throw InputError("interval biclique partition does not represent the graph");
  // to_inner[p] = position in the partition's order of the vertex at position p + 1 of `order`.
  std::vector<std::size_t> to_inner(n);
  for (std::size_t p = 0; p < n; ++p) {
    to_inner[p] = static_cast<std::size_t>(ibp.order.position_of(order.vertex_at(static_cast<int>(p + 1))) - 1);
  }
  GroupMatrix<T> out(n, G::zero());
  auto column = [&](std::size_t c) {
    std::vector<T> inner(n);
    for (std::size_t p = 0; p < n; ++p) inner[to_inner[p]] = m.at(p, c);
    const auto y = ibp_matvec<G>(ibp, std::span<const T>(inner));
    for (std::size_t p = 0; p < n; ++p) out.at(p, c) = y[to_inner[p]];
  };
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t c = 0; c < n; ++c) column(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < n; c += threads) column(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace stm

#endif  // STM_MATMUL_HPP
