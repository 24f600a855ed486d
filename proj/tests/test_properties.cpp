#include <gtest/gtest.h>

#include "properties.hpp"

using namespace sf_test;

#define EXPECT_PROPERTY(result)                                                  \
  do {                                                                           \
    const auto r_ = (result);                                                    \
    EXPECT_GT(r_.cases, 0);                                                      \
    EXPECT_EQ(r_.failures, 0) << r_.failures << "/" << r_.cases << " failed\n"   \
                              << r_.first_failure;                               \
  } while (0)

TEST(ScoreCriticalAgreement, ScoreMatchesCritical) { EXPECT_PROPERTY(agreement_suite(120)); }

TEST(ScoreCriticalAgreement, ScoreMatchesCriticalWithVariablePredicates) {
  EXPECT_PROPERTY(agreement_suite(60, 0.3));
}

TEST(EnumerationOracle, InclusionsHoldByEnumeration) { EXPECT_PROPERTY(enumeration_suite(60)); }

TEST(ShaclCorpus, RoundTrip) {
  const auto corpus = shacl_corpus();
  EXPECT_GE(corpus.size(), 30u);
  EXPECT_PROPERTY(shacl_round_trip(corpus));
}

TEST(Engine, BgpOracle) { EXPECT_PROPERTY(bgp_oracle_suite(300)); }
TEST(Engine, ClosureStrategies) { EXPECT_PROPERTY(closure_suite(100)); }
TEST(Engine, ChaseFixpoint) { EXPECT_PROPERTY(chase_suite(100)); }
