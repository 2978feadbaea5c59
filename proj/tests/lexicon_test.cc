#include "adjorder/lexicon.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "testing.h"

namespace adjorder {
namespace {

Sentence MakeSentence(std::vector<std::pair<std::string, std::string>> lemma_upos) {
  Sentence s;
  int i = 1;
  for (auto& [lemma, upos] : lemma_upos) {
    s.tokens.push_back({i, lemma, lemma, upos, i == 1 ? 0 : 1, "dep"});
    ++i;
  }
  return s;
}

TEST(Normalize, Examples) {
  EXPECT_EQ(Normalize("Big"), "big");
  EXPECT_EQ(Normalize("ÉCOLE"), "école");
  EXPECT_EQ(Normalize("big"), "big");
  EXPECT_EQ(Normalize("ΣΟΦΊΑ"), "σοφία");
  EXPECT_EQ(Normalize("ЗЕЛЁНЫЙ"), "зелёный");
}

TEST(Normalize, NoTurkishSpecialCasing) {
  EXPECT_EQ(Normalize("I"), "i");
  // U+0130 maps to plain i under simple case mapping.
  EXPECT_EQ(Normalize("\xC4\xB0"), "i");
}

TEST(Normalize, IdempotentAndPassesBadBytes) {
  for (const char* s : {"MiXeD", "Ärger", "ṠṪ", "日本", "a\xFF" "B"}) {
    EXPECT_EQ(Normalize(Normalize(s)), Normalize(s)) << s;
  }
  EXPECT_EQ(Normalize("a\xFF" "B"), "a\xFF" "b");
}

TEST(Lexicon, BuildFromTokens) {
  auto lex = BuildLexicon({MakeSentence({{"Blue", "ADJ"}, {"box", "NOUN"}})}, "en");
  EXPECT_EQ(lex.adjectives(), (LemmaSet{"blue"}));
  EXPECT_EQ(lex.nouns(), (LemmaSet{"box"}));
  EXPECT_EQ(lex.language(), "en");
}

TEST(Lexicon, OnlyVerbs) {
  auto lex = BuildLexicon({MakeSentence({{"run", "VERB"}, {"go", "VERB"}})}, "en");
  EXPECT_TRUE(lex.empty());
  EXPECT_TRUE(BuildLexicon({}, "en").empty());
}

TEST(Lexicon, LemmaInBothSets) {
  auto lex = BuildLexicon({MakeSentence({{"red", "ADJ"}, {"Red", "NOUN"}})}, "en");
  EXPECT_TRUE(lex.ContainsAdjective("red"));
  EXPECT_TRUE(lex.ContainsNoun("RED"));
}

TEST(Lexicon, MembershipInvariantUnderNormalization) {
  Lexicon lex("fr");
  lex.AddAdjective("ÉLÉGANT");
  lex.AddNoun("école");
  for (const char* q : {"élégant", "Élégant", "ÉLÉGANT"}) {
    EXPECT_EQ(lex.ContainsAdjective(q), lex.ContainsAdjective(Normalize(q)));
    EXPECT_TRUE(lex.ContainsAdjective(q));
  }
  EXPECT_TRUE(lex.ContainsNoun("ÉCOLE"));
  EXPECT_FALSE(lex.ContainsNoun("élégant"));
  for (const std::string& l : lex.adjectives()) EXPECT_EQ(l, Normalize(l));
}

// Flat scan-and-sort over the raw files, sharing nothing with the reader.
std::pair<std::set<std::string>, std::set<std::string>> FlatScan(
    const std::vector<std::string>& paths) {
  std::set<std::string> adj, noun;
  for (const std::string& p : paths) {
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, '\t')) f.push_back(cell);
      if (f[0].find_first_of("-.") != std::string::npos) continue;
      if (f[3] == "ADJ") adj.insert(testing::OracleLower(f[2]));
      if (f[3] == "NOUN") noun.insert(testing::OracleLower(f[2]));
    }
  }
  return {adj, noun};
}

TEST(Lexicon, UnionMatchesFlatScan) {
  std::vector<std::string> paths;
  for (const char* n : {"lexicon_a.conllu", "lexicon_b.conllu", "lexicon_c.conllu",
                        "extraction_fixture.conllu"}) {
    paths.push_back(testing::DataPath(n));
  }
  Lexicon merged("xx");
  for (const std::string& p : paths) merged.Merge(BuildLexicon(ReadConlluFile(p, ParseMode::kStrict), "xx"));
  auto [adj, noun] = FlatScan(paths);
  EXPECT_EQ(std::set<std::string>(merged.adjectives().begin(), merged.adjectives().end()), adj);
  EXPECT_EQ(std::set<std::string>(merged.nouns().begin(), merged.nouns().end()), noun);
  EXPECT_TRUE(merged.ContainsAdjective("élégant"));
  EXPECT_TRUE(merged.ContainsNoun("école"));
}

TEST(Lexicon, UnionHomomorphism) {
  std::vector<Sentence> a = ReadConlluFile(testing::DataPath("lexicon_a.conllu"), ParseMode::kStrict);
  std::vector<Sentence> b = ReadConlluFile(testing::DataPath("lexicon_b.conllu"), ParseMode::kStrict);
  std::vector<Sentence> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  Lexicon merged = BuildLexicon(b, "xx");
  merged.Merge(BuildLexicon(a, "xx"));
  EXPECT_EQ(BuildLexicon(ab, "xx"), merged);
}

TEST(Lexicon, SaveLoadRoundTrip) {
  testing::TempDir dir;
  Lexicon lex("xx");
  for (const char* a : {"zeta", "alpha", "Élan", "beta"}) lex.AddAdjective(a);
  lex.AddNoun("box");
  lex.Save(dir.path());
  std::ifstream in(Lexicon::AdjectivePath(dir.path(), "xx"), std::ios::binary);
  std::stringstream raw;
  raw << in.rdbuf();
  EXPECT_EQ(raw.str(), "alpha\nbeta\nzeta\n\xC3\xA9lan\n");
  EXPECT_EQ(Lexicon::Load(dir.path(), "xx"), lex);
}

TEST(Lexicon, EmptySavesEmptyFiles) {
  testing::TempDir dir;
  Lexicon("xx").Save(dir.path());
  EXPECT_TRUE(Lexicon::Load(dir.path(), "xx").empty());
  EXPECT_THROW(Lexicon::Load(dir.path(), "yy"), InputError);
}

}  // namespace
}  // namespace adjorder
