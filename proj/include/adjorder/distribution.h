// The listener distribution: exact counts over feature vectors, where a
// feature vector is the set of lemmas of one noun phrase.

#ifndef ADJORDER_DISTRIBUTION_H_
#define ADJORDER_DISTRIBUTION_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "adjorder/extraction.h"

namespace adjorder {

// Sorted ascending, no duplicates.
using FeatureKey = std::vector<std::string>;

// Noun and adjective lemmas merged into a canonical key.
FeatureKey MakeFeatureKey(const std::string& noun, const std::vector<std::string>& adjectives);
bool KeyHasFeature(const FeatureKey& key, std::string_view feature);

// How a partition side is weighted against its parent.
enum class WeightMode {
  kSupportCount,     // distinct keys on the side / distinct keys in the parent
  kProbabilityMass,  // tokens on the side / tokens in the parent
};

std::string_view WeightModeName(WeightMode mode);
bool ParseWeightMode(std::string_view name, WeightMode* mode);

class Distribution {
 public:
  using Counts = std::map<FeatureKey, std::uint64_t>;

  Distribution() = default;

  // `key` must be canonical; `count` must be positive.
  void Add(const FeatureKey& key, std::uint64_t count = 1);
  void Merge(const Distribution& other);

  std::uint64_t total_tokens() const { return total_; }
  std::size_t support_size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  const Counts& counts() const { return counts_; }

  std::uint64_t Count(const FeatureKey& key) const;
  double Probability(const FeatureKey& key) const;

  // Header "#total=<n>\tsupport=<k>", then lemma1,lemma2,...<TAB>count rows
  // in key order.
  void WriteTsv(std::ostream& out) const;
  static Distribution ReadTsv(std::istream& in, const std::string& source = "<tsv>");

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Counts counts_;
  std::uint64_t total_ = 0;
};

// Keys of length < 2 (a noun whose only adjective shares its lemma) are not
// valid feature vectors; they are skipped and tallied in `skipped`.
Distribution BuildDistribution(const std::vector<NpOccurrence>& occurrences,
                               std::uint64_t* skipped = nullptr);
Distribution BuildDistribution(const NpTable& nps, std::uint64_t* skipped = nullptr);

struct Partition {
  Distribution positive;  // keys containing the feature
  Distribution negative;  // keys lacking it
  double weight_positive = 0.0;
  double weight_negative = 0.0;
};

// Splits `dist` on `feature`. Requires a non-empty distribution.
Partition PartitionOn(const Distribution& dist, std::string_view feature,
                      WeightMode mode = WeightMode::kSupportCount);

}  // namespace adjorder

#endif  // ADJORDER_DISTRIBUTION_H_
