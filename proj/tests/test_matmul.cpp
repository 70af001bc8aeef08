#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace stm;

namespace {

IntervalBicliquePartition random_ibp(gen::Rng& rng, std::size_t max_n) {
  gen::StmSpec spec{2 + gen::uniform_index(rng, max_n - 1), 0, 0.6, 0.0};
  spec.pairs = gen::uniform_index(rng, 3 * spec.n);
  return stm_to_ibp(gen::random_stm(spec, rng));
}

}  // namespace

TEST(Matvec, P3) {
  IntervalBicliquePartition ibp{LinearOrder::identity(3), {{1, 1, 2, 2}, {2, 2, 3, 3}}};
  EXPECT_EQ(ibp_matvec(ibp, std::vector<std::int64_t>{1, 2, 3}), (std::vector<std::int64_t>{2, 4, 2}));
}

TEST(Matvec, EmptyPartitionAndZeroVector) {
  IntervalBicliquePartition empty{LinearOrder::identity(4), {}};
  EXPECT_EQ(ibp_matvec(empty, std::vector<std::int64_t>{1, 2, 3, 4}), (std::vector<std::int64_t>(4, 0)));
  IntervalBicliquePartition ibp{LinearOrder::identity(4), {{1, 2, 3, 4}}};
  EXPECT_EQ(ibp_matvec(ibp, std::vector<std::int64_t>(4, 0)), (std::vector<std::int64_t>(4, 0)));
}

TEST(Matvec, LengthMismatch) {
  IntervalBicliquePartition ibp{LinearOrder::identity(3), {}};
  EXPECT_THROW(ibp_matvec(ibp, std::vector<std::int64_t>{1, 2}), InputError);
}

TEST(Matvec, LinearityAndOperationCount) {
  gen::Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto ibp = random_ibp(rng, 64);
    const std::size_t n = ibp.size();
    std::vector<std::int64_t> x(n), y(n), sum(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<std::int64_t>(rng());
      y[i] = static_cast<std::int64_t>(rng());
      sum[i] = WrappingInt64::add(x[i], y[i]);
    }
    std::uint64_t ops = 0;
    auto ax = ibp_matvec(ibp, x, &ops);
    auto ay = ibp_matvec(ibp, y);
    auto as = ibp_matvec(ibp, sum);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(as[i], WrappingInt64::add(ax[i], ay[i]));
    ASSERT_LE(ops, 8 * (n + ibp.bicliques.size()));
  }
}

TEST(Matmul, IdentityGivesAdjacency) {
  auto g = oracle::path_graph(5);
  IntervalBicliquePartition ibp{LinearOrder::identity(5), {{1, 1, 2, 2}, {2, 2, 3, 3}, {3, 3, 4, 4}, {4, 4, 5, 5}}};
  GroupMatrix<std::int64_t> id(5, 0);
  for (std::size_t i = 0; i < 5; ++i) id.at(i, i) = 1;
  auto order = LinearOrder::identity(5);
  EXPECT_EQ(adjacency_matmul(g, order, id, ibp, true), oracle::adjacency_in_order(g, order));
}

TEST(Matmul, MismatchedPartitionIsRejected) {
  IntervalBicliquePartition ibp{LinearOrder::identity(3), {{1, 1, 2, 2}}};
  EXPECT_THROW(adjacency_matmul(oracle::path_graph(3), LinearOrder::identity(3), GroupMatrix<std::int64_t>(3, 0), ibp, true),
               InputError);
}

TEST(Matmul, MatchesDenseProduct) {
  gen::Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    auto ibp = random_ibp(rng, 60);
    auto g = ibp_to_graph(ibp);
    const std::size_t n = g.size();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto order = LinearOrder::from_sequence(perm);
    auto m = oracle::random_matrix(rng, n);
    auto expected = oracle::dense_multiply(oracle::adjacency_in_order(g, order), m);
    ASSERT_EQ(adjacency_matmul(g, order, m, ibp), expected);
    ASSERT_EQ(adjacency_matmul(g, order, m, ibp, false, 3), expected);
  }
}

TEST(Matmul, ChainedProduct) {
  gen::Rng rng(53);
  const std::size_t n = 24;
  gen::StmSpec spec{n, 2 * n, 0.6, 0.0};
  auto ibp1 = stm_to_ibp(gen::random_stm(spec, rng));
  auto ibp2 = stm_to_ibp(gen::random_stm(spec, rng));
  auto g1 = ibp_to_graph(ibp1), g2 = ibp_to_graph(ibp2);
  auto order = LinearOrder::identity(n);
  auto m = oracle::random_matrix(rng, n);
  auto chained = adjacency_matmul(g1, order, adjacency_matmul(g2, order, m, ibp2), ibp1);
  auto dense = oracle::dense_multiply(oracle::adjacency_in_order(g1, order),
                                      oracle::dense_multiply(oracle::adjacency_in_order(g2, order), m));
  EXPECT_EQ(chained, dense);
}

TEST(Matmul, UnitColumnsAreAdjacencyColumns) {
  gen::Rng rng(54);
  auto ibp = random_ibp(rng, 30);
  auto g = ibp_to_graph(ibp);
  const std::size_t n = g.size();
  auto order = LinearOrder::identity(n);
  auto adj = oracle::adjacency_in_order(g, order);
  for (std::size_t i = 0; i < n; ++i) {
    GroupMatrix<std::int64_t> e(n, 0);
    e.at(i, 0) = 1;
    auto out = adjacency_matmul(g, order, e, ibp);
    for (std::size_t r = 0; r < n; ++r) ASSERT_EQ(out.at(r, 0), adj.at(r, i));
  }
}
