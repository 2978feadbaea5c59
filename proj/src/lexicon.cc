#include "adjorder/lexicon.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <filesystem>
#include <sstream>

#include "adjorder/io.h"

namespace adjorder {

namespace {

void AppendUtf8(UChar32 c, std::string* out) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  [[maybe_unused]] UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  out->append(buf, static_cast<std::size_t>(len));
}

std::string Serialize(const LemmaSet& lemmas) {
  std::string out;
  for (const std::string& l : lemmas) {
    out += l;
    out += '\n';
  }
  return out;
}

LemmaSet LoadLemmas(const std::string& path) {
  LemmaSet lemmas;
  std::istringstream in(ReadFile(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lemmas.insert(Normalize(line));
  }
  return lemmas;
}

}  // namespace

std::string Normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      out.append(text.substr(start, i - start));
      continue;
    }
    AppendUtf8(u_tolower(c), &out);
  }
  return out;
}

void Lexicon::AddAdjective(std::string_view lemma) { adjectives_.insert(Normalize(lemma)); }

void Lexicon::AddNoun(std::string_view lemma) { nouns_.insert(Normalize(lemma)); }

bool Lexicon::ContainsAdjective(std::string_view lemma) const {
  return adjectives_.find(Normalize(lemma)) != adjectives_.end();
}

bool Lexicon::ContainsNoun(std::string_view lemma) const {
  return nouns_.find(Normalize(lemma)) != nouns_.end();
}

void Lexicon::AddSentence(const Sentence& sentence) {
  for (const Token& t : sentence.tokens) {
    if (t.upos == "ADJ") {
      AddAdjective(t.lemma);
    } else if (t.upos == "NOUN") {
      AddNoun(t.lemma);
    }
  }
}

void Lexicon::Merge(const Lexicon& other) {
  adjectives_.insert(other.adjectives_.begin(), other.adjectives_.end());
  nouns_.insert(other.nouns_.begin(), other.nouns_.end());
}

std::string Lexicon::AdjectivePath(const std::string& dir, const std::string& language) {
  return (std::filesystem::path(dir) / (language + ".adj.txt")).string();
}

std::string Lexicon::NounPath(const std::string& dir, const std::string& language) {
  return (std::filesystem::path(dir) / (language + ".noun.txt")).string();
}

void Lexicon::Save(const std::string& dir) const {
  WriteFile(AdjectivePath(dir, language_), Serialize(adjectives_));
  WriteFile(NounPath(dir, language_), Serialize(nouns_));
}

Lexicon Lexicon::Load(const std::string& dir, const std::string& language) {
  Lexicon lex(language);
  const std::string adj = AdjectivePath(dir, language);
  const std::string noun = NounPath(dir, language);
  if (!std::filesystem::is_regular_file(adj) || !std::filesystem::is_regular_file(noun)) {
    throw InputError("missing lexicon files for '" + language + "' in " + dir);
  }
  lex.adjectives_ = LoadLemmas(adj);
  lex.nouns_ = LoadLemmas(noun);
  return lex;
}

Lexicon BuildLexicon(const std::vector<Sentence>& sentences, const std::string& language) {
  Lexicon lex(language);
  for (const Sentence& s : sentences) lex.AddSentence(s);
  return lex;
}

}  // namespace adjorder
