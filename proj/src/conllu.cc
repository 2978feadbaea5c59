#include "adjorder/conllu.h"

#include <charconv>
#include <sstream>
#include <string_view>

namespace adjorder {

namespace {

constexpr std::size_t kFieldCount = 10;

bool ParseNonNegative(std::string_view s, int* value) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line,
                       const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

ConlluReader::ConlluReader(LineReader& lines, std::string source, ParseMode mode)
    : lines_(lines), source_(std::move(source)), mode_(mode) {}

bool ConlluReader::ParseTokenLine(const std::string& line, Token* token,
                                  bool* skip, std::string* error) const {
  *skip = false;
  std::vector<std::string_view> fields = SplitTabs(line);
  if (fields.size() != kFieldCount) {
    *error = "expected 10 tab-separated fields, got " + std::to_string(fields.size());
    return false;
  }
  std::string_view id = fields[0];
  std::size_t dash = id.find('-');
  std::size_t dot = id.find('.');
  if (dash != std::string_view::npos || dot != std::string_view::npos) {
    std::size_t sep = dash != std::string_view::npos ? dash : dot;
    int lo = 0, hi = 0;
    if (!ParseNonNegative(id.substr(0, sep), &lo) ||
        !ParseNonNegative(id.substr(sep + 1), &hi)) {
      *error = "bad token id '" + std::string(id) + "'";
      return false;
    }
    *skip = true;
    return true;
  }
  if (!ParseNonNegative(id, &token->index) || token->index < 1) {
    *error = "bad token id '" + std::string(id) + "'";
    return false;
  }
  if (!ParseNonNegative(fields[6], &token->head)) {
    *error = "bad head '" + std::string(fields[6]) + "'";
    return false;
  }
  if (token->head == token->index) {
    *error = "token " + std::to_string(token->index) + " is its own head";
    return false;
  }
  if (IsBlank(fields[1]) || IsBlank(fields[2])) {
    *error = "empty form or lemma";
    return false;
  }
  token->form.assign(fields[1]);
  token->lemma.assign(fields[2]);
  token->upos.assign(fields[3]);
  token->deprel.assign(fields[7]);
  return true;
}

bool ConlluReader::ValidateBlock(const std::vector<Token>& tokens,
                                 std::string* error) const {
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n; ++i) {
    if (tokens[i].index != i + 1) {
      *error = "token ids are not 1.." + std::to_string(n);
      return false;
    }
    if (tokens[i].head > n) {
      *error = "head " + std::to_string(tokens[i].head) + " out of range";
      return false;
    }
  }
  return true;
}

void ConlluReader::Fail(const std::string& error) {
  if (mode_ == ParseMode::kStrict) throw ParseError(source_, line_number_, error);
  ++stats_.malformed;
}

bool ConlluReader::Next(Sentence* sentence) {
  std::string line;
  std::vector<Token> tokens;
  bool in_block = false;
  bool bad = false;
  std::string error;
  std::size_t error_line = 0;

  auto finish_block = [&]() -> bool {
    in_block = false;
    if (bad) {
      std::size_t saved = line_number_;
      line_number_ = error_line;
      Fail(error);
      line_number_ = saved;
      bad = false;
      tokens.clear();
      return false;
    }
    if (tokens.empty()) return false;
    std::string err;
    if (!ValidateBlock(tokens, &err)) {
      Fail(err);
      tokens.clear();
      return false;
    }
    sentence->tokens = std::move(tokens);
    sentence->source_id = source_ + "#" + std::to_string(block_number_);
    tokens.clear();
    ++stats_.sentences;
    return true;
  };

  while (lines_.ReadLine(&line)) {
    ++line_number_;
    if (IsBlank(line)) {
      if (in_block && finish_block()) return true;
      continue;
    }
    if (!in_block) {
      in_block = true;
      ++block_number_;
    }
    if (bad || line[0] == '#') continue;
    Token token;
    bool skip = false;
    if (!ParseTokenLine(line, &token, &skip, &error)) {
      bad = true;
      error_line = line_number_;
      if (mode_ == ParseMode::kStrict) Fail(error);
      continue;
    }
    if (!skip) tokens.push_back(std::move(token));
  }
  if (in_block && finish_block()) return true;
  return false;
}

std::vector<Sentence> ReadConlluFile(const std::string& path, ParseMode mode,
                                     ParseStats* stats) {
  FileLineReader lines(path);
  ConlluReader reader(lines, path, mode);
  std::vector<Sentence> out;
  Sentence s;
  while (reader.Next(&s)) out.push_back(std::move(s));
  if (stats != nullptr) *stats = reader.stats();
  return out;
}

std::vector<Sentence> ParseConlluText(const std::string& text, ParseMode mode,
                                      ParseStats* stats, const std::string& source) {
  std::istringstream in(text);
  StreamLineReader lines(in);
  ConlluReader reader(lines, source, mode);
  std::vector<Sentence> out;
  Sentence s;
  while (reader.Next(&s)) out.push_back(std::move(s));
  if (stats != nullptr) *stats = reader.stats();
  return out;
}

}  // namespace adjorder
