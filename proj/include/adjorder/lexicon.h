// ADJ and NOUN lemma whitelists harvested from curated treebanks.

#ifndef ADJORDER_LEXICON_H_
#define ADJORDER_LEXICON_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adjorder/conllu.h"

namespace adjorder {

// Locale-independent simple lowercase mapping, one codepoint at a time.
// Bytes that are not valid UTF-8 are copied through unchanged.
std::string Normalize(std::string_view text);

using LemmaSet = std::set<std::string, std::less<>>;

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string language) : language_(std::move(language)) {}

  const std::string& language() const { return language_; }
  const LemmaSet& adjectives() const { return adjectives_; }
  const LemmaSet& nouns() const { return nouns_; }

  // Both Add* and Contains* normalize their argument first.
  void AddAdjective(std::string_view lemma);
  void AddNoun(std::string_view lemma);
  bool ContainsAdjective(std::string_view lemma) const;
  bool ContainsNoun(std::string_view lemma) const;

  // Collects the lemmas of every ADJ and NOUN token.
  void AddSentence(const Sentence& sentence);
  void Merge(const Lexicon& other);

  bool empty() const { return adjectives_.empty() && nouns_.empty(); }

  // <dir>/<lang>.adj.txt and <dir>/<lang>.noun.txt: sorted, unique, one lemma
  // per LF-terminated line.
  void Save(const std::string& dir) const;
  static Lexicon Load(const std::string& dir, const std::string& language);

  static std::string AdjectivePath(const std::string& dir, const std::string& language);
  static std::string NounPath(const std::string& dir, const std::string& language);

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  std::string language_;
  LemmaSet adjectives_;
  LemmaSet nouns_;
};

Lexicon BuildLexicon(const std::vector<Sentence>& sentences, const std::string& language);

}  // namespace adjorder

#endif  // ADJORDER_LEXICON_H_
