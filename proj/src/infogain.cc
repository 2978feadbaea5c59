#include "adjorder/infogain.h"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace adjorder {

namespace {

double RestrictionKl(std::uint64_t base_tokens, std::uint64_t side_tokens) {
  if (side_tokens == 0) return 0.0;
  return std::log(static_cast<double>(base_tokens) / static_cast<double>(side_tokens));
}

}  // namespace

double KlDivergence(const Distribution& sub, const Distribution& base) {
  if (sub.empty()) return 0.0;
  const double sub_total = static_cast<double>(sub.total_tokens());
  const double base_total = static_cast<double>(base.total_tokens());
  double kl = 0.0;
  for (const auto& [key, count] : sub.counts()) {
    const std::uint64_t base_count = base.Count(key);
    if (base_count == 0) {
      throw std::domain_error("sub-distribution support is not contained in its base");
    }
    const double p = static_cast<double>(count) / sub_total;
    const double q = static_cast<double>(base_count) / base_total;
    kl += p * std::log(p / q);
  }
  return kl;
}

IgBundle InformationGain(const Distribution& dist, std::string_view feature, WeightMode mode) {
  Partition part = PartitionOn(dist, feature, mode);
  IgBundle b;
  b.weight_positive = part.weight_positive;
  b.weight_negative = part.weight_negative;
  b.kl_positive = KlDivergence(part.positive, dist);
  b.kl_negative = KlDivergence(part.negative, dist);
  b.ig = b.weight_positive * b.kl_positive + b.weight_negative * b.kl_negative;
  return b;
}

TripleScorer::TripleScorer(const Distribution& dist, WeightMode mode) : mode_(mode) {
  counts_.reserve(dist.support_size());
  std::uint32_t id = 0;
  for (const auto& [key, count] : dist.counts()) {
    counts_.push_back(count);
    for (const std::string& lemma : key) {
      auto it = postings_.find(lemma);
      if (it == postings_.end()) it = postings_.emplace(lemma, std::vector<std::uint32_t>{}).first;
      it->second.push_back(id);
    }
    ++id;
  }
  all_ = {dist.support_size(), dist.total_tokens()};
}

const std::vector<std::uint32_t>* TripleScorer::Postings(std::string_view lemma) const {
  auto it = postings_.find(lemma);
  return it == postings_.end() ? nullptr : &it->second;
}

TripleScorer::Side TripleScorer::Intersect(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) const {
  Side s;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++s.support;
      s.tokens += counts_[*i];
      ++i;
      ++j;
    }
  }
  return s;
}

IgBundle TripleScorer::Combine(Side base, Side positive) const {
  IgBundle b;
  if (base.support == 0) return b;
  const Side negative{base.support - positive.support, base.tokens - positive.tokens};
  if (mode_ == WeightMode::kSupportCount) {
    b.weight_positive = static_cast<double>(positive.support) / static_cast<double>(base.support);
    b.weight_negative = static_cast<double>(negative.support) / static_cast<double>(base.support);
  } else {
    b.weight_positive = static_cast<double>(positive.tokens) / static_cast<double>(base.tokens);
    b.weight_negative = static_cast<double>(negative.tokens) / static_cast<double>(base.tokens);
  }
  b.kl_positive = RestrictionKl(base.tokens, positive.tokens);
  b.kl_negative = RestrictionKl(base.tokens, negative.tokens);
  b.ig = b.weight_positive * b.kl_positive + b.weight_negative * b.kl_negative;
  return b;
}

IgBundle TripleScorer::Gain(std::string_view feature) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = gain_memo_.find(feature);
    if (it != gain_memo_.end()) return it->second;
  }
  Side positive;
  if (const auto* p = Postings(feature)) {
    positive.support = p->size();
    for (std::uint32_t id : *p) positive.tokens += counts_[id];
  }
  IgBundle b = Combine(all_, positive);
  std::lock_guard<std::mutex> lock(mu_);
  gain_memo_.emplace(std::string(feature), b);
  return b;
}

IgBundle TripleScorer::ConditionedGain(std::string_view noun, std::string_view feature,
                                       bool* base_empty) const {
  const auto* noun_postings = Postings(noun);
  if (base_empty != nullptr) *base_empty = noun_postings == nullptr;
  if (noun_postings == nullptr) return IgBundle{};
  std::pair<std::string, std::string> memo_key{std::string(noun), std::string(feature)};
  Side base;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = conditioned_memo_.find(memo_key);
    if (it != conditioned_memo_.end()) return it->second;
    auto bit = noun_base_memo_.find(noun);
    if (bit != noun_base_memo_.end()) {
      base = bit->second;
    }
  }
  if (base.support == 0) {
    base.support = noun_postings->size();
    for (std::uint32_t id : *noun_postings) base.tokens += counts_[id];
    std::lock_guard<std::mutex> lock(mu_);
    noun_base_memo_.emplace(std::string(noun), base);
  }
  Side positive;
  if (const auto* f = Postings(feature)) positive = Intersect(*noun_postings, *f);
  IgBundle b = Combine(base, positive);
  std::lock_guard<std::mutex> lock(mu_);
  conditioned_memo_.emplace(std::move(memo_key), b);
  return b;
}

TripleScore TripleScorer::Score(const Triple& triple) const {
  TripleScore s;
  s.triple = triple;
  bool base_empty = false;
  if (triple.tmpl == Template::kNAA) {
    s.conditioning = Conditioning::kNounConditioned;
    s.first = ConditionedGain(triple.noun, triple.adj_first, &base_empty);
    s.second = ConditionedGain(triple.noun, triple.adj_second, &base_empty);
  } else {
    s.conditioning = Conditioning::kUnconditioned;
    s.first = Gain(triple.adj_first);
    s.second = Gain(triple.adj_second);
  }
  const bool oov = s.first.weight_positive == 0.0 || s.second.weight_positive == 0.0;
  const bool flat = s.first.ig == 0.0 && s.second.ig == 0.0;
  s.usable = !base_empty && !oov && !flat;
  return s;
}

std::vector<TripleScore> ScoreTriples(const TripleScorer& scorer,
                                      const std::vector<Triple>& triples) {
  std::vector<TripleScore> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back(scorer.Score(t));
  return out;
}

void WriteScoredTsv(std::ostream& out, const std::vector<TripleScore>& scores,
                    double unit_scale) {
  for (const TripleScore& s : scores) {
    const Triple& t = s.triple;
    out << fmt::format("{}\t{}\t{}\t{}\t{}\t{:.12f}\t{:.12f}\t{:.12f}\t{:.12f}\t{:.12f}\t{:.12f}\t{}\n",
                       TemplateName(t.tmpl), t.noun, t.adj_first, t.adj_second, t.count,
                       s.first.ig * unit_scale, s.second.ig * unit_scale,
                       s.first.kl_positive * unit_scale, s.first.kl_negative * unit_scale,
                       s.second.kl_positive * unit_scale, s.second.kl_negative * unit_scale,
                       s.usable ? 1 : 0);
  }
}

}  // namespace adjorder
