#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace stm;
namespace fig1 = oracle::fig1;

TEST(TreeModel, RejectsMalformedTrees) {
  EXPECT_THROW(SignedTreeModel(2, {{3, 1, 1}}), InputError);
  EXPECT_THROW(SignedTreeModel(3, {{4, 1, 2}}), InputError);
  EXPECT_THROW(SignedTreeModel(2, {{3, 1, 5}}), InputError);
  EXPECT_NO_THROW(SignedTreeModel(1, {}));
}

TEST(TreeModel, AncestorQueries) {
  auto m = fig1::model();
  EXPECT_EQ(m.root(), fig1::root);
  EXPECT_TRUE(m.is_strict_ancestor(fig1::a, 1));
  EXPECT_TRUE(m.is_ancestor_or_self(fig1::a, fig1::a));
  EXPECT_FALSE(m.is_strict_ancestor(fig1::a, fig1::a));
  EXPECT_FALSE(m.comparable(fig1::a, fig1::h));
  EXPECT_EQ(m.depth(fig1::root), 0);
  EXPECT_EQ(m.depth(1), 4);
}

TEST(TreeModel, PairsAreCanonical) {
  auto m = oracle::p3_model();
  // leaf order is 2, 1, 3 so node 2 comes before node 4
  EXPECT_EQ(m.leaf_at(1), 2);
  EXPECT_EQ(m.positive().front(), (NodePair{2, 4}));
  auto flipped = SignedTreeModel(3, {{4, 1, 3}, {5, 2, 4}}, {{3, 1}}, {{4, 2}});
  EXPECT_EQ(flipped, m);
}

TEST(Validate, FigureModelIsValid) {
  auto report = validate(fig1::model());
  EXPECT_TRUE(report.ok()) << report.message;
}

TEST(Validate, DashedPairCrossesAmberPair) {
  auto m = fig1::with_dashed();
  auto report = validate(m);
  ASSERT_EQ(report.kind, ValidationReport::Kind::Crossing);
  ASSERT_EQ(report.pairs.size(), 2u);
  std::set<NodePair> named;
  for (PairRef r : report.pairs) named.insert(m.pairs(r.sign)[r.index]);
  EXPECT_TRUE(named.count(m.canonical({fig1::a, fig1::n})));
  EXPECT_TRUE(named.count(m.canonical({fig1::b, fig1::h})));
}

TEST(Validate, SingleEdgeModel) { EXPECT_TRUE(validate(SignedTreeModel(2, {{3, 1, 2}}, {}, {{1, 2}})).ok()); }

TEST(Validate, Violations) {
  using Kind = ValidationReport::Kind;
  const std::vector<InternalNode> tree{{4, 1, 2}, {5, 4, 3}};
  EXPECT_EQ(validate(SignedTreeModel(3, tree, {}, {{4, 4}})).kind, Kind::Loop);
  EXPECT_TRUE(validate(SignedTreeModel(3, tree, {}, {{4, 4}}), false).ok());
  EXPECT_EQ(validate(SignedTreeModel(3, tree, {}, {{4, 1}})).kind, Kind::NotTransversal);
  EXPECT_EQ(validate(SignedTreeModel(3, tree, {{1, 2}}, {{2, 1}})).kind, Kind::SignConflict);
  EXPECT_EQ(validate(SignedTreeModel(3, tree, {}, {{1, 2}, {2, 1}})).kind, Kind::DuplicatePair);
  // 4 is a strict ancestor of 1, 5 is not below 3... {4,3} and {1,2}: nested, fine
  EXPECT_TRUE(validate(SignedTreeModel(3, tree, {{1, 2}}, {{4, 3}})).ok());
}

TEST(Validate, CrossingOnSmallTree) {
  // leaves 1..4, x = (1,2), y = (3,4); {x,3} and {1,y} cross
  const std::vector<InternalNode> tree{{5, 1, 2}, {6, 3, 4}, {7, 5, 6}};
  auto report = validate(SignedTreeModel(4, tree, {}, {{5, 3}, {1, 6}}));
  EXPECT_EQ(report.kind, ValidationReport::Kind::Crossing);
  EXPECT_TRUE(validate(SignedTreeModel(4, tree, {{5, 3}}, {{5, 6}})).ok());
}

TEST(Decode, FigureCaption) {
  auto g = decode_bruteforce(fig1::model());
  EXPECT_TRUE(g.has_edge(8, 4));
  EXPECT_TRUE(g.has_edge(8, 2));
  EXPECT_FALSE(g.has_edge(8, 7));
  EXPECT_EQ(g, oracle::decode_by_cover(fig1::model()));
}

TEST(Decode, P3ModelIsPath) { EXPECT_EQ(decode_bruteforce(oracle::p3_model()), oracle::path_graph(3)); }

TEST(Decode, NoPairsIsEdgeless) {
  gen::Rng rng(3);
  SignedTreeModel m(10, gen::random_tree(10, rng));
  EXPECT_EQ(decode_bruteforce(m).edge_count(), 0u);
}

TEST(Decode, RootChildrenPairIsCompleteBipartite) {
  const std::vector<InternalNode> tree{{5, 1, 2}, {6, 3, 4}, {7, 5, 6}};
  auto g = decode_bruteforce(SignedTreeModel(4, tree, {}, {{5, 6}}));
  EXPECT_EQ(g, Graph(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
}

TEST(Decode, InvalidModelThrows) { EXPECT_THROW(decode_bruteforce(oracle::fig1::with_dashed()), InputError); }

TEST(Decode, MatchesCoveringOracle) {
  gen::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    gen::StmSpec spec{1 + gen::uniform_index(rng, 24), 0, 0.5, 0.0};
    spec.pairs = gen::uniform_index(rng, 4 * spec.n + 1);
    auto m = gen::random_stm(spec, rng);
    ASSERT_EQ(decode_bruteforce(m), oracle::decode_by_cover(m)) << "trial " << trial;
  }
}

TEST(RemoveLoops, LooplessIsIdentity) {
  auto m = fig1::model();
  EXPECT_EQ(remove_loops(m), m);
}

TEST(RemoveLoops, RootLoopOverTwoLeaves) {
  auto out = remove_loops(SignedTreeModel(2, {{3, 1, 2}}, {}, {{3, 3}}));
  EXPECT_TRUE(out.negative().empty());
  EXPECT_EQ(out.positive(), (std::vector<NodePair>{{1, 2}}));
  EXPECT_EQ(decode_bruteforce(out), Graph(2, {{1, 2}}));
}

TEST(RemoveLoops, NestedOppositeSigns) {
  // positive loop at the root, negative loop at 5 = (1,2): 1-2 off, everything else on
  const std::vector<InternalNode> tree{{5, 1, 2}, {6, 3, 4}, {7, 5, 6}};
  SignedTreeModel m(4, tree, {{5, 5}}, {{7, 7}});
  auto out = remove_loops(m);
  EXPECT_TRUE(validate(out).ok());
  EXPECT_EQ(decode_bruteforce(out), Graph(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  EXPECT_EQ(decode_bruteforce(out), decode_bruteforce(m));
}

TEST(RemoveLoops, PreservesDecodeOnRandomLoopyModels) {
  gen::Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    gen::StmSpec spec{2 + gen::uniform_index(rng, 15), 0, 0.5, 0.3};
    spec.pairs = gen::uniform_index(rng, 3 * spec.n);
    auto m = gen::random_stm(spec, rng);
    auto out = remove_loops(m);
    ASSERT_TRUE(validate(out).ok());
    ASSERT_LE(out.pair_count(), m.pair_count() + m.leaf_count());
    ASSERT_EQ(decode_bruteforce(out), decode_bruteforce(m)) << "trial " << trial;
  }
}

TEST(CleanSameSign, FigureModelUnchanged) {
  auto m = fig1::model();
  auto cleaned = clean_same_sign(m);
  EXPECT_EQ(cleaned.pair_count(), m.pair_count());
}

TEST(CleanSameSign, NestedPositivePairsDropInner) {
  const std::vector<InternalNode> tree{{5, 1, 2}, {6, 3, 4}, {7, 5, 6}};
  auto out = clean_same_sign(SignedTreeModel(4, tree, {}, {{5, 6}, {1, 3}}));
  EXPECT_EQ(out.positive(), (std::vector<NodePair>{{5, 6}}));
}

TEST(CleanSameSign, PreservesDecodeAndAlternates) {
  gen::Rng rng(303);
  for (int trial = 0; trial < 500; ++trial) {
    gen::StmSpec spec{1 + gen::uniform_index(rng, 32), 0, 0.5, 0.0};
    spec.pairs = gen::uniform_index(rng, 4 * spec.n + 1);
    auto m = gen::random_stm(spec, rng);
    auto out = clean_same_sign(m);
    ASSERT_LE(out.pair_count(), m.pair_count());
    ASSERT_TRUE(graphs_equal(decode_bruteforce(out), decode_bruteforce(m)));
    auto mr = stm_to_rects(out);
    auto parents = oracle::containment_parents(mr.plain());
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (parents[i] >= 0) {
        ASSERT_NE(mr.rects[i].sign, mr.rects[parents[i]].sign);
      }
    }
  }
}

TEST(Rectangles, ValidModelsAreLaminar) {
  gen::Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    gen::StmSpec spec{2 + gen::uniform_index(rng, 30), 0, 0.5, 0.0};
    spec.pairs = gen::uniform_index(rng, 4 * spec.n);
    auto rects = stm_to_rects(gen::random_stm(spec, rng)).plain();
    ASSERT_TRUE(is_laminar(rects));
  }
}

TEST(InsertEdit, AddsEdgeToP3) {
  auto m = oracle::p3_model();
  auto log = EditLog::for_model(m);
  auto r = insert_edit(m, 1, 3, Sign::Positive, log);
  EXPECT_TRUE(decode_bruteforce(r.model).has_edge(1, 3));
  EXPECT_EQ(log.count, 1u);
}

TEST(InsertEdit, NegativeRemovesCoveredEdge) {
  const std::vector<InternalNode> tree{{5, 1, 2}, {6, 3, 4}, {7, 5, 6}};
  SignedTreeModel m(4, tree, {}, {{5, 6}});
  auto log = EditLog::for_model(m);
  auto r = insert_edit(m, 2, 4, Sign::Negative, log);
  auto g = decode_bruteforce(r.model);
  EXPECT_FALSE(g.has_edge(2, 4));
  EXPECT_TRUE(g.has_edge(1, 4));
}

TEST(InsertEdit, SecondEditOverrides) {
  auto m = oracle::p3_model();
  auto log = EditLog::for_model(m);
  auto once = insert_edit(m, 1, 2, Sign::Negative, log).model;
  auto twice = insert_edit(once, 1, 2, Sign::Positive, log).model;
  auto log2 = EditLog::for_model(m);
  EXPECT_EQ(decode_bruteforce(twice), decode_bruteforce(insert_edit(m, 1, 2, Sign::Positive, log2).model));
  EXPECT_TRUE(validate(twice).ok());
}

TEST(InsertEdit, RejectsNonLeavesAndFullLog) {
  auto m = oracle::p3_model();
  auto log = EditLog::for_model(m);
  EXPECT_THROW(insert_edit(m, 1, 4, Sign::Positive, log), InputError);
  EXPECT_THROW(insert_edit(m, 2, 2, Sign::Positive, log), InputError);
  EXPECT_EQ(log.threshold, 3u);
  auto cur = m;
  bool rebuild = false;
  for (int i = 0; i < 3; ++i) {
    auto r = insert_edit(cur, 1, 2, i % 2 ? Sign::Positive : Sign::Negative, log);
    cur = r.model;
    rebuild = r.rebuild_required;
  }
  EXPECT_TRUE(rebuild);
  EXPECT_THROW(insert_edit(cur, 1, 2, Sign::Positive, log), InputError);
}

TEST(InsertEdit, RandomEditsNeverCross) {
  gen::Rng rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    gen::StmSpec spec{3 + gen::uniform_index(rng, 20), 0, 0.5, 0.0};
    spec.pairs = gen::uniform_index(rng, 3 * spec.n);
    auto m = gen::random_stm(spec, rng);
    auto log = EditLog::for_model(m);
    const auto n = static_cast<NodeId>(m.leaf_count());
    NodeId u = 1 + static_cast<NodeId>(gen::uniform_index(rng, n));
    NodeId v = 1 + static_cast<NodeId>(gen::uniform_index(rng, n));
    if (u == v) continue;
    const Sign s = gen::coin(rng) ? Sign::Positive : Sign::Negative;
    auto out = insert_edit(m, u, v, s, log).model;
    ASSERT_TRUE(validate(out).ok());
    ASSERT_EQ(decode_bruteforce(out).has_edge(u, v), s == Sign::Positive);
  }
}
