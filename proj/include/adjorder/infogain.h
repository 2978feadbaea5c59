// KL divergence, information gain of a feature over a distribution, and the
// template-specific scoring of triples.

#ifndef ADJORDER_INFOGAIN_H_
#define ADJORDER_INFOGAIN_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adjorder/distribution.h"
#include "adjorder/extraction.h"

namespace adjorder {

// All quantities in nats.
struct IgBundle {
  double kl_positive = 0.0;  // D_KL[L' || L]
  double kl_negative = 0.0;  // D_KL[L-bar' || L]
  double weight_positive = 0.0;
  double weight_negative = 0.0;
  double ig = 0.0;
};

// sum_m p_sub(m) ln(p_sub(m) / p_base(m)), iterating keys in sorted order.
// An empty `sub` gives 0. Throws std::domain_error if a key of `sub` has no
// mass in `base`.
double KlDivergence(const Distribution& sub, const Distribution& base);

// Partitions `dist` on `feature` and combines both KL terms with the partition
// weights. An empty side contributes nothing. Requires a non-empty `dist`.
IgBundle InformationGain(const Distribution& dist, std::string_view feature,
                         WeightMode mode = WeightMode::kSupportCount);

enum class Conditioning { kUnconditioned, kNounConditioned };

struct TripleScore {
  Triple triple;
  IgBundle first;   // adj_first
  IgBundle second;  // adj_second
  Conditioning conditioning = Conditioning::kUnconditioned;
  bool usable = false;
};

// Scores triples against one distribution. AAN and ANA adjectives are scored
// on the whole distribution; NAA adjectives on the part of it that contains
// the noun.
//
// A score is unusable when the NAA base is empty, when either adjective has no
// support in its base, or when both gains are zero.
//
// Gains are computed from an inverted lemma index: the KL divergence of a
// restriction R of a base B is ln(tokens(B) / tokens(R)), so only side sizes
// are needed. Results are memoized per feature and per (noun, feature); Score
// may be called concurrently.
class TripleScorer {
 public:
  TripleScorer(const Distribution& dist, WeightMode mode = WeightMode::kSupportCount);

  TripleScore Score(const Triple& triple) const;

  // Gain of `feature` over the whole distribution.
  IgBundle Gain(std::string_view feature) const;
  // Gain of `feature` over the keys containing `noun`. `base_empty` reports
  // whether that restriction holds no keys.
  IgBundle ConditionedGain(std::string_view noun, std::string_view feature,
                           bool* base_empty = nullptr) const;

  WeightMode weight_mode() const { return mode_; }

 private:
  struct Side {
    std::uint64_t support = 0;
    std::uint64_t tokens = 0;
  };

  const std::vector<std::uint32_t>* Postings(std::string_view lemma) const;
  IgBundle Combine(Side base, Side positive) const;
  Side Intersect(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const;

  WeightMode mode_;
  std::vector<std::uint64_t> counts_;  // by key id, keys in sorted order
  Side all_;
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> postings_;

  mutable std::mutex mu_;
  mutable std::map<std::string, IgBundle, std::less<>> gain_memo_;
  mutable std::map<std::pair<std::string, std::string>, IgBundle> conditioned_memo_;
  mutable std::map<std::string, Side, std::less<>> noun_base_memo_;
};

std::vector<TripleScore> ScoreTriples(const TripleScorer& scorer,
                                      const std::vector<Triple>& triples);

// Tab-separated: template noun adj_first adj_second count ig_first ig_second
// kl_pos_first kl_neg_first kl_pos_second kl_neg_second usable. Values are
// multiplied by `unit_scale` (1 for nats, 1/ln 2 for bits).
void WriteScoredTsv(std::ostream& out, const std::vector<TripleScore>& scores,
                    double unit_scale = 1.0);

}  // namespace adjorder

#endif  // ADJORDER_INFOGAIN_H_
