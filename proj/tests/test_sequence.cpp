#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace stm;

TEST(SdSequence, StructuralChecks) {
  EXPECT_NO_THROW(check_sd_sequence(3, SdDegenSequence{{{1, 3}, {2, 3}}}));
  EXPECT_THROW(check_sd_sequence(3, SdDegenSequence{{{1, 3}}}), SequenceError);
  EXPECT_THROW(check_sd_sequence(3, SdDegenSequence{{{1, 1}, {2, 3}}}), SequenceError);
  EXPECT_THROW(check_sd_sequence(3, SdDegenSequence{{{1, 4}, {2, 3}}}), SequenceError);
  try {
    check_sd_sequence(3, SdDegenSequence{{{1, 3}, {2, 1}}});
    FAIL();
  } catch (const SequenceError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
}

TEST(ConstructionSequence, Counts) {
  ConstructionSequence seq{{{CsKind::ResolvePositive, 1, 2}, {CsKind::Merge, 1, 2}, {CsKind::ResolveNegative, 3, 3}}};
  EXPECT_EQ(seq.merge_count(), 1u);
  EXPECT_EQ(seq.resolve_count(), 2u);
  EXPECT_EQ(check_construction_sequence(2, seq), 3u);
}

TEST(ConstructionSequence, RejectsSelfMergeAndUnknownParts) {
  EXPECT_THROW(check_construction_sequence(2, ConstructionSequence{{{CsKind::Merge, 1, 1}}}), SequenceError);
  EXPECT_THROW(check_construction_sequence(2, ConstructionSequence{{{CsKind::Merge, 1, 5}}}), SequenceError);
}

TEST(ConstructionSequence, CompleteMergesFoldsRemainingParts) {
  auto full = complete_merges(4, ConstructionSequence{{{CsKind::Merge, 1, 2}}});
  EXPECT_EQ(full.merge_count(), 3u);
  EXPECT_EQ(check_construction_sequence(4, full), 7u);
}

TEST(ConstructionSequence, FirstResolveWins) {
  ConstructionSequence seq{{{CsKind::ResolveNegative, 1, 2}, {CsKind::Merge, 1, 2}, {CsKind::ResolvePositive, 4, 3}}};
  EXPECT_EQ(construct_graph(3, seq), Graph(3, {{1, 3}, {2, 3}}));
  EXPECT_EQ(oracle::replay_cseq(3, seq), construct_graph(3, seq));
}

TEST(ConstructionSequence, ReplayAgreesWithOracle) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen::uniform_index(rng, 24);
    auto seq = gen::random_cseq(n, gen::uniform_index(rng, 3 * n), rng);
    ASSERT_EQ(construct_graph(n, seq), oracle::replay_cseq(n, seq));
  }
}
