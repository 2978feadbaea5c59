#include "adjorder/distribution.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "testing.h"

namespace adjorder {
namespace {

// Four-vector universe: probabilities 0.1, 0.3, 0.2, 0.4. f1 is in m1..m3,
// f2 in m1 and m2.
Distribution FourVectors() {
  Distribution d;
  d.Add({"f0", "m0"}, 1);
  d.Add({"f0", "f1", "f2", "m1"}, 3);
  d.Add({"f1", "f2", "m2"}, 2);
  d.Add({"f1", "m3"}, 4);
  return d;
}

double P(const Distribution& d, const FeatureKey& k) { return d.Probability(k); }

TEST(Distribution, BuildFromOccurrences) {
  std::vector<NpOccurrence> occ = {
      {"room", {"best"}, "a"}, {"room", {"best"}, "b"}, {"room", {"available"}, "c"}};
  const Distribution d = BuildDistribution(occ);
  EXPECT_EQ(d.Count({"best", "room"}), 2u);
  EXPECT_EQ(d.Count({"available", "room"}), 1u);
  EXPECT_EQ(d.total_tokens(), 3u);
  EXPECT_EQ(d.support_size(), 2u);
  EXPECT_TRUE(BuildDistribution(std::vector<NpOccurrence>{}).empty());
}

TEST(Distribution, ShortKeysSkipped) {
  std::uint64_t skipped = 0;
  const Distribution d = BuildDistribution(
      std::vector<NpOccurrence>{{"red", {"red"}, "a"}, {"red", {"dark", "red"}, "b"}}, &skipped);
  EXPECT_EQ(skipped, 1u);
  EXPECT_EQ(d.Count({"dark", "red"}), 1u);
}

TEST(Distribution, MakeFeatureKeyMergesNoun) {
  EXPECT_EQ(MakeFeatureKey("room", {"best", "available"}),
            (FeatureKey{"available", "best", "room"}));
  EXPECT_EQ(MakeFeatureKey("red", {"red", "dark"}), (FeatureKey{"dark", "red"}));
  EXPECT_TRUE(KeyHasFeature({"a", "c", "e"}, "c"));
  EXPECT_FALSE(KeyHasFeature({"a", "c", "e"}, "d"));
}

TEST(Distribution, ShardedBuildEqualsSequential) {
  std::mt19937_64 rng(11);
  std::vector<NpOccurrence> occ;
  std::uniform_int_distribution<int> pick(0, 49);
  for (int i = 0; i < 10000; ++i) {
    const int k = pick(rng);
    occ.push_back({"n" + std::to_string(k % 7), {"a" + std::to_string(k)}, ""});
  }
  std::map<FeatureKey, std::uint64_t> counted;
  for (const NpOccurrence& o : occ) counted[MakeFeatureKey(o.noun, o.adjectives)] += 1;
  std::shuffle(occ.begin(), occ.end(), rng);
  Distribution merged;
  for (int shard = 0; shard < 3; ++shard) {
    std::vector<NpOccurrence> part;
    for (std::size_t i = shard; i < occ.size(); i += 3) part.push_back(occ[i]);
    merged.Merge(BuildDistribution(part));
  }
  EXPECT_EQ(merged.counts(), counted);
  EXPECT_EQ(merged.total_tokens(), 10000u);
  EXPECT_EQ(merged, BuildDistribution(occ));
}

TEST(Partition, FourVectorsOnF2) {
  const Distribution d = FourVectors();
  const Partition p = PartitionOn(d, "f2", WeightMode::kSupportCount);
  EXPECT_NEAR(P(p.positive, {"f0", "f1", "f2", "m1"}), 0.6, 1e-12);
  EXPECT_NEAR(P(p.positive, {"f1", "f2", "m2"}), 0.4, 1e-12);
  EXPECT_NEAR(P(p.negative, {"f0", "m0"}), 0.2, 1e-12);
  EXPECT_NEAR(P(p.negative, {"f1", "m3"}), 0.8, 1e-12);
  EXPECT_EQ(p.weight_positive, 0.5);
  EXPECT_EQ(p.weight_negative, 0.5);
}

TEST(Partition, FourVectorsOnF1) {
  const Partition p = PartitionOn(FourVectors(), "f1", WeightMode::kSupportCount);
  EXPECT_NEAR(P(p.positive, {"f0", "f1", "f2", "m1"}), 1.0 / 3, 1e-12);
  EXPECT_NEAR(P(p.positive, {"f1", "f2", "m2"}), 2.0 / 9, 1e-12);
  EXPECT_NEAR(P(p.positive, {"f1", "m3"}), 4.0 / 9, 1e-12);
  EXPECT_NEAR(P(p.negative, {"f0", "m0"}), 1.0, 1e-12);
  EXPECT_NEAR(p.weight_positive, 0.75, 1e-12);
  EXPECT_NEAR(p.weight_negative, 0.25, 1e-12);
  const Partition mass = PartitionOn(FourVectors(), "f1", WeightMode::kProbabilityMass);
  EXPECT_NEAR(mass.weight_positive, 0.9, 1e-12);
  EXPECT_NEAR(mass.weight_negative, 0.1, 1e-12);
}

TEST(Partition, UniversalAndAbsentFeatures) {
  Distribution d;
  d.Add({"a", "x"}, 2);
  d.Add({"b", "x"}, 5);
  const Partition all = PartitionOn(d, "x");
  EXPECT_EQ(all.positive, d);
  EXPECT_TRUE(all.negative.empty());
  EXPECT_EQ(all.weight_positive, 1.0);
  const Partition none = PartitionOn(d, "zz");
  EXPECT_TRUE(none.positive.empty());
  EXPECT_EQ(none.negative, d);
  EXPECT_EQ(none.weight_positive, 0.0);
  EXPECT_THROW(PartitionOn(Distribution(), "x"), std::invalid_argument);
}

TEST(Partition, ConservationOverRandomUniverses) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Distribution d = testing::RandomUniverse(rng, 8, 6);
    for (int f = 0; f < 6; ++f) {
      for (WeightMode mode : {WeightMode::kSupportCount, WeightMode::kProbabilityMass}) {
        const Partition p = PartitionOn(d, "f" + std::to_string(f), mode);
        EXPECT_EQ(p.positive.total_tokens() + p.negative.total_tokens(), d.total_tokens());
        EXPECT_EQ(p.positive.support_size() + p.negative.support_size(), d.support_size());
        EXPECT_NEAR(p.weight_positive + p.weight_negative, 1.0, 1e-15);
        for (const Distribution* side : {&p.positive, &p.negative}) {
          if (side->empty()) continue;
          double sum = 0;
          for (const auto& [k, c] : side->counts()) sum += side->Probability(k);
          EXPECT_NEAR(sum, 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(Distribution, TsvRoundTrip) {
  const Distribution d = FourVectors();
  std::ostringstream out;
  d.WriteTsv(out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "#total=10\tsupport=4");
  std::istringstream in(out.str());
  EXPECT_EQ(Distribution::ReadTsv(in), d);
}

TEST(WeightMode, Names) {
  WeightMode m;
  ASSERT_TRUE(ParseWeightMode("probability-mass", &m));
  EXPECT_EQ(m, WeightMode::kProbabilityMass);
  EXPECT_EQ(WeightModeName(WeightMode::kSupportCount), "support-count");
  EXPECT_FALSE(ParseWeightMode("types", &m));
}

}  // namespace
}  // namespace adjorder
