// Line-oriented input over plain or gzip-compressed files, and input path
// expansion.

#ifndef ADJORDER_IO_H_
#define ADJORDER_IO_H_

#include <istream>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adjorder {

// Raised for unreadable inputs and bad configuration. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LineReader {
 public:
  virtual ~LineReader() = default;
  // Reads the next line without its terminator (LF or CRLF). Returns false
  // at end of input.
  virtual bool ReadLine(std::string* line) = 0;
};

// Reads from an std::istream the caller keeps alive.
class StreamLineReader : public LineReader {
 public:
  explicit StreamLineReader(std::istream& in) : in_(in) {}
  bool ReadLine(std::string* line) override;

 private:
  std::istream& in_;
};

// Reads a file through zlib, which decompresses gzip input and passes plain
// text through unchanged.
class FileLineReader : public LineReader {
 public:
  explicit FileLineReader(const std::string& path);
  ~FileLineReader() override;
  FileLineReader(const FileLineReader&) = delete;
  FileLineReader& operator=(const FileLineReader&) = delete;

  bool ReadLine(std::string* line) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Expands each entry into a sorted list of files. A directory contributes its
// *.conllu and *.conllu.gz files; an entry whose last component contains
// shell wildcards is matched against its parent directory; anything else must
// name an existing file. Throws InputError for entries that match nothing
// that exists.
std::vector<std::string> ExpandInputPaths(const std::vector<std::string>& entries);

// Writes `contents` to `path`, replacing any existing file.
void WriteFile(const std::string& path, std::string_view contents);
std::string ReadFile(const std::string& path);

}  // namespace adjorder

#endif  // ADJORDER_IO_H_
