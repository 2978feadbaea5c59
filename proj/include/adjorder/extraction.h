// Noun-phrase feature-vector occurrences and adjective-adjective-noun triples.

#ifndef ADJORDER_EXTRACTION_H_
#define ADJORDER_EXTRACTION_H_

#include <array>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adjorder/conllu.h"
#include "adjorder/lexicon.h"

namespace adjorder {

// Linear configuration of a noun and its two adjectives.
enum class Template { kAAN, kANA, kNAA };

inline constexpr std::array<Template, 3> kTemplates = {Template::kAAN, Template::kANA,
                                                       Template::kNAA};

std::string_view TemplateName(Template t);
std::optional<Template> ParseTemplate(std::string_view name);

struct ExtractOptions {
  // Dependency relations that attach a modifying adjective. A relation with a
  // subtype ("amod:x") matches its base relation.
  std::set<std::string> modifier_deprels = {"amod"};
  // Accept an ADJ dependent under any relation.
  bool any_deprel = false;
  // Exclude `punct` dependents when counting "other dependents".
  bool ignore_punct_deps = false;

  bool IsModifier(const Token& dependent) const;
};

struct NpOccurrence {
  std::string noun;
  std::vector<std::string> adjectives;  // sorted, unique, non-empty
  std::string source_id;
};

struct Triple {
  Template tmpl = Template::kAAN;
  std::string noun;
  std::string adj_first;   // linearly first adjective
  std::string adj_second;  // linearly second adjective
  std::uint64_t count = 1;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Template of three consecutive positions. Throws std::invalid_argument when
// the positions are not distinct and consecutive.
Template ClassifyTemplate(int noun_pos, int adj_pos_a, int adj_pos_b);

std::vector<NpOccurrence> ExtractNps(const Sentence& sentence, const Lexicon& lexicon,
                                     const ExtractOptions& options = {});

// Each NOUN with exactly two modifying ADJ dependents, the three tokens
// contiguous, neither adjective having dependents of its own, all lemmas in
// the lexicon and the adjective lemmas distinct.
std::vector<Triple> ExtractTriples(const Sentence& sentence, const Lexicon& lexicon,
                                   const ExtractOptions& options = {});

// (template, noun, adj_first, adj_second) -> total count.
class TripleTable {
 public:
  using Key = std::tuple<Template, std::string, std::string, std::string>;

  void Add(const Triple& triple);
  void Merge(const TripleTable& other);

  // Sorted by key.
  std::vector<Triple> Triples() const;
  std::size_t size() const { return counts_.size(); }
  std::uint64_t TotalCount() const;
  bool empty() const { return counts_.empty(); }

  // template<TAB>noun<TAB>adj_first<TAB>adj_second<TAB>count, sorted.
  void WriteTsv(std::ostream& out) const;
  static TripleTable ReadTsv(std::istream& in, const std::string& source = "<tsv>");

  friend bool operator==(const TripleTable&, const TripleTable&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

// (noun, sorted adjective set) -> count.
class NpTable {
 public:
  using Key = std::pair<std::string, std::vector<std::string>>;

  void Add(const NpOccurrence& np, std::uint64_t count = 1);
  void Merge(const NpTable& other);

  const std::map<Key, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t TotalCount() const;
  bool empty() const { return counts_.empty(); }

  // noun<TAB>adj1,adj2,...<TAB>count, sorted.
  void WriteTsv(std::ostream& out) const;
  static NpTable ReadTsv(std::istream& in, const std::string& source = "<tsv>");

  friend bool operator==(const NpTable&, const NpTable&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

}  // namespace adjorder

#endif  // ADJORDER_EXTRACTION_H_
