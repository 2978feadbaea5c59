#include "adjorder/distribution.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "adjorder/io.h"

namespace adjorder {

FeatureKey MakeFeatureKey(const std::string& noun, const std::vector<std::string>& adjectives) {
  FeatureKey key = adjectives;
  key.push_back(noun);
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

bool KeyHasFeature(const FeatureKey& key, std::string_view feature) {
  return std::binary_search(key.begin(), key.end(), feature, std::less<>());
}

std::string_view WeightModeName(WeightMode mode) {
  return mode == WeightMode::kSupportCount ? "support-count" : "probability-mass";
}

bool ParseWeightMode(std::string_view name, WeightMode* mode) {
  if (name == "support-count") {
    *mode = WeightMode::kSupportCount;
  } else if (name == "probability-mass") {
    *mode = WeightMode::kProbabilityMass;
  } else {
    return false;
  }
  return true;
}

void Distribution::Add(const FeatureKey& key, std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("feature vector count must be positive");
  counts_[key] += count;
  total_ += count;
}

void Distribution::Merge(const Distribution& other) {
  for (const auto& [key, count] : other.counts_) Add(key, count);
}

std::uint64_t Distribution::Count(const FeatureKey& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

double Distribution::Probability(const FeatureKey& key) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(Count(key)) / static_cast<double>(total_);
}

void Distribution::WriteTsv(std::ostream& out) const {
  out << "#total=" << total_ << "\tsupport=" << counts_.size() << '\n';
  for (const auto& [key, count] : counts_) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i > 0) out << ',';
      out << key[i];
    }
    out << '\t' << count << '\n';
  }
}

Distribution Distribution::ReadTsv(std::istream& in, const std::string& source) {
  Distribution dist;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw InputError(source + ":" + std::to_string(line_number) + ": malformed row");
    }
    FeatureKey key;
    std::string_view lemmas(line.data(), tab);
    std::size_t start = 0;
    while (true) {
      std::size_t comma = lemmas.find(',', start);
      key.emplace_back(lemmas.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    std::uint64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || count == 0) {
      throw InputError(source + ":" + std::to_string(line_number) + ": bad count");
    }
    dist.Add(key, count);
  }
  return dist;
}

Distribution BuildDistribution(const std::vector<NpOccurrence>& occurrences,
                               std::uint64_t* skipped) {
  Distribution dist;
  std::uint64_t dropped = 0;
  for (const NpOccurrence& np : occurrences) {
    FeatureKey key = MakeFeatureKey(np.noun, np.adjectives);
    if (key.size() < 2) {
      ++dropped;
      continue;
    }
    dist.Add(key);
  }
  if (skipped != nullptr) *skipped = dropped;
  return dist;
}

Distribution BuildDistribution(const NpTable& nps, std::uint64_t* skipped) {
  Distribution dist;
  std::uint64_t dropped = 0;
  for (const auto& [np, count] : nps.counts()) {
    FeatureKey key = MakeFeatureKey(np.first, np.second);
    if (key.size() < 2) {
      dropped += count;
      continue;
    }
    dist.Add(key, count);
  }
  if (skipped != nullptr) *skipped = dropped;
  return dist;
}

Partition PartitionOn(const Distribution& dist, std::string_view feature, WeightMode mode) {
  if (dist.empty()) throw std::invalid_argument("cannot partition an empty distribution");
  Partition part;
  for (const auto& [key, count] : dist.counts()) {
    (KeyHasFeature(key, feature) ? part.positive : part.negative).Add(key, count);
  }
  if (mode == WeightMode::kSupportCount) {
    const double n = static_cast<double>(dist.support_size());
    part.weight_positive = static_cast<double>(part.positive.support_size()) / n;
    part.weight_negative = static_cast<double>(part.negative.support_size()) / n;
  } else {
    const double n = static_cast<double>(dist.total_tokens());
    part.weight_positive = static_cast<double>(part.positive.total_tokens()) / n;
    part.weight_negative = static_cast<double>(part.negative.total_tokens()) / n;
  }
  return part;
}

}  // namespace adjorder
