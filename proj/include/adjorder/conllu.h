// Streaming CoNLL-U reader producing validated sentences with basic
// dependency links.

#ifndef ADJORDER_CONLLU_H_
#define ADJORDER_CONLLU_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjorder/io.h"

namespace adjorder {

struct Token {
  int index = 0;  // 1-based surface position
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source_id;  // "<source>#<block number>"
};

enum class ParseMode { kStrict, kRobust };

// Malformed input in strict mode.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseStats {
  std::size_t sentences = 0;  // emitted
  std::size_t malformed = 0;  // dropped in robust mode
};

// Yields one Sentence per blank-line separated block. Comment lines, multiword
// ranges ("3-4") and empty nodes ("5.1") are skipped. Blocks holding no basic
// tokens produce nothing.
class ConlluReader {
 public:
  ConlluReader(LineReader& lines, std::string source, ParseMode mode);

  // Returns false once the input is exhausted.
  bool Next(Sentence* sentence);

  const ParseStats& stats() const { return stats_; }

 private:
  // Parses one token line into `token`; on failure returns false and sets
  // `error`. Sets `skip` for range and empty-node lines.
  bool ParseTokenLine(const std::string& line, Token* token, bool* skip,
                      std::string* error) const;
  bool ValidateBlock(const std::vector<Token>& tokens, std::string* error) const;
  void Fail(const std::string& error);

  LineReader& lines_;
  std::string source_;
  ParseMode mode_;
  ParseStats stats_;
  std::size_t line_number_ = 0;
  std::size_t block_number_ = 0;
};

// Reads every sentence of one file.
std::vector<Sentence> ReadConlluFile(const std::string& path, ParseMode mode,
                                     ParseStats* stats = nullptr);

// Reads every sentence from in-memory text.
std::vector<Sentence> ParseConlluText(const std::string& text, ParseMode mode,
                                      ParseStats* stats = nullptr,
                                      const std::string& source = "<text>");

}  // namespace adjorder

#endif  // ADJORDER_CONLLU_H_
