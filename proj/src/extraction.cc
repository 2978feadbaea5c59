#include "adjorder/extraction.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "adjorder/io.h"

namespace adjorder {

namespace {

std::string_view BaseRelation(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::uint64_t ParseCount(std::string_view s, const std::string& source, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    throw InputError(source + ":" + std::to_string(line) + ": bad count '" +
                     std::string(s) + "'");
  }
  return value;
}

// dependents[i] lists the 0-based indices of the tokens headed by token i+1.
std::vector<std::vector<int>> Dependents(const Sentence& sentence) {
  std::vector<std::vector<int>> deps(sentence.tokens.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    int head = sentence.tokens[i].head;
    if (head > 0) deps[head - 1].push_back(static_cast<int>(i));
  }
  return deps;
}

}  // namespace

std::string_view TemplateName(Template t) {
  switch (t) {
    case Template::kAAN:
      return "AAN";
    case Template::kANA:
      return "ANA";
    case Template::kNAA:
      return "NAA";
  }
  return "?";
}

std::optional<Template> ParseTemplate(std::string_view name) {
  for (Template t : kTemplates) {
    if (TemplateName(t) == name) return t;
  }
  return std::nullopt;
}

bool ExtractOptions::IsModifier(const Token& dependent) const {
  if (dependent.upos != "ADJ") return false;
  if (any_deprel) return true;
  return modifier_deprels.count(dependent.deprel) > 0 ||
         modifier_deprels.count(std::string(BaseRelation(dependent.deprel))) > 0;
}

Template ClassifyTemplate(int noun_pos, int adj_pos_a, int adj_pos_b) {
  std::array<int, 3> p = {noun_pos, adj_pos_a, adj_pos_b};
  std::sort(p.begin(), p.end());
  if (p[1] != p[0] + 1 || p[2] != p[1] + 1) {
    throw std::invalid_argument("triple positions are not consecutive");
  }
  if (noun_pos == p[2]) return Template::kAAN;
  if (noun_pos == p[0]) return Template::kNAA;
  return Template::kANA;
}

std::vector<NpOccurrence> ExtractNps(const Sentence& sentence, const Lexicon& lexicon,
                                     const ExtractOptions& options) {
  std::vector<NpOccurrence> out;
  const auto deps = Dependents(sentence);
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& noun = sentence.tokens[i];
    if (noun.upos != "NOUN") continue;
    std::vector<std::string> adjectives;
    bool all_known = true;
    for (int d : deps[i]) {
      const Token& dep = sentence.tokens[d];
      if (!options.IsModifier(dep)) continue;
      std::string lemma = Normalize(dep.lemma);
      if (!lexicon.ContainsAdjective(lemma)) all_known = false;
      adjectives.push_back(std::move(lemma));
    }
    if (adjectives.empty() || !all_known) continue;
    std::string noun_lemma = Normalize(noun.lemma);
    if (!lexicon.ContainsNoun(noun_lemma)) continue;
    std::sort(adjectives.begin(), adjectives.end());
    adjectives.erase(std::unique(adjectives.begin(), adjectives.end()), adjectives.end());
    out.push_back({std::move(noun_lemma), std::move(adjectives), sentence.source_id});
  }
  return out;
}

std::vector<Triple> ExtractTriples(const Sentence& sentence, const Lexicon& lexicon,
                                   const ExtractOptions& options) {
  std::vector<Triple> out;
  const auto& tokens = sentence.tokens;
  const auto deps = Dependents(sentence);
  auto counted = [&](int i) {
    if (!options.ignore_punct_deps) return deps[i];
    std::vector<int> kept;
    for (int d : deps[i]) {
      if (BaseRelation(tokens[d].deprel) != "punct") kept.push_back(d);
    }
    return kept;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].upos != "NOUN") continue;
    const std::vector<int> noun_deps = counted(static_cast<int>(i));
    if (noun_deps.size() != 2) continue;
    int a = noun_deps[0], b = noun_deps[1];
    if (!options.IsModifier(tokens[a]) || !options.IsModifier(tokens[b])) continue;
    if (!counted(a).empty() || !counted(b).empty()) continue;
    const int n = static_cast<int>(i);
    if (std::max({n, a, b}) - std::min({n, a, b}) != 2) continue;
    if (a > b) std::swap(a, b);
    std::string noun = Normalize(tokens[i].lemma);
    std::string first = Normalize(tokens[a].lemma);
    std::string second = Normalize(tokens[b].lemma);
    if (first == second) continue;
    if (!lexicon.ContainsNoun(noun) || !lexicon.ContainsAdjective(first) ||
        !lexicon.ContainsAdjective(second)) {
      continue;
    }
    out.push_back({ClassifyTemplate(n, a, b), std::move(noun), std::move(first),
                   std::move(second), 1});
  }
  return out;
}

void TripleTable::Add(const Triple& triple) {
  counts_[Key{triple.tmpl, triple.noun, triple.adj_first, triple.adj_second}] += triple.count;
}

void TripleTable::Merge(const TripleTable& other) {
  for (const auto& [key, count] : other.counts_) counts_[key] += count;
}

std::vector<Triple> TripleTable::Triples() const {
  std::vector<Triple> out;
  out.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    const auto& [tmpl, noun, first, second] = key;
    out.push_back({tmpl, noun, first, second, count});
  }
  return out;
}

std::uint64_t TripleTable::TotalCount() const {
  std::uint64_t total = 0;
  for (const auto& [key, count] : counts_) total += count;
  return total;
}

void TripleTable::WriteTsv(std::ostream& out) const {
  for (const auto& [key, count] : counts_) {
    const auto& [tmpl, noun, first, second] = key;
    out << TemplateName(tmpl) << '\t' << noun << '\t' << first << '\t' << second << '\t'
        << count << '\n';
  }
}

TripleTable TripleTable::ReadTsv(std::istream& in, const std::string& source) {
  TripleTable table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto fields = Split(line, '\t');
    auto tmpl = fields.size() == 5 ? ParseTemplate(fields[0]) : std::nullopt;
    if (!tmpl) {
      throw InputError(source + ":" + std::to_string(line_number) + ": malformed triple row");
    }
    table.Add({*tmpl, std::string(fields[1]), std::string(fields[2]), std::string(fields[3]),
               ParseCount(fields[4], source, line_number)});
  }
  return table;
}

void NpTable::Add(const NpOccurrence& np, std::uint64_t count) {
  counts_[Key{np.noun, np.adjectives}] += count;
}

void NpTable::Merge(const NpTable& other) {
  for (const auto& [key, count] : other.counts_) counts_[key] += count;
}

std::uint64_t NpTable::TotalCount() const {
  std::uint64_t total = 0;
  for (const auto& [key, count] : counts_) total += count;
  return total;
}

void NpTable::WriteTsv(std::ostream& out) const {
  for (const auto& [key, count] : counts_) {
    out << key.first << '\t';
    for (std::size_t i = 0; i < key.second.size(); ++i) {
      if (i > 0) out << ',';
      out << key.second[i];
    }
    out << '\t' << count << '\n';
  }
}

NpTable NpTable::ReadTsv(std::istream& in, const std::string& source) {
  NpTable table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw InputError(source + ":" + std::to_string(line_number) + ": malformed NP row");
    }
    NpOccurrence np;
    np.noun = std::string(fields[0]);
    for (std::string_view a : Split(fields[1], ',')) np.adjectives.emplace_back(a);
    std::sort(np.adjectives.begin(), np.adjectives.end());
    np.adjectives.erase(std::unique(np.adjectives.begin(), np.adjectives.end()),
                        np.adjectives.end());
    table.Add(np, ParseCount(fields[2], source, line_number));
  }
  return table;
}

}  // namespace adjorder
