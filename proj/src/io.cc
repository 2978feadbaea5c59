#include "adjorder/io.h"

#include <fnmatch.h>
#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace adjorder {

namespace fs = std::filesystem;

namespace {

void StripCarriageReturn(std::string* line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

bool HasWildcard(std::string_view s) {
  return s.find_first_of("*?[") != std::string_view::npos;
}

bool IsCorpusFile(const fs::path& p) {
  const std::string name = p.filename().string();
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".conllu") || ends_with(".conllu.gz");
}

}  // namespace

bool StreamLineReader::ReadLine(std::string* line) {
  if (!std::getline(in_, *line)) return false;
  StripCarriageReturn(line);
  return true;
}

struct FileLineReader::Impl {
  gzFile file = nullptr;
  std::string path;
};

FileLineReader::FileLineReader(const std::string& path) : impl_(new Impl) {
  impl_->path = path;
  if (fs::is_directory(path)) throw InputError("not a file: " + path);
  impl_->file = gzopen(path.c_str(), "rb");
  if (impl_->file == nullptr) throw InputError("cannot open " + path);
  gzbuffer(impl_->file, 1 << 17);
}

FileLineReader::~FileLineReader() {
  if (impl_->file != nullptr) gzclose(impl_->file);
}

bool FileLineReader::ReadLine(std::string* line) {
  line->clear();
  char buf[8192];
  bool any = false;
  while (gzgets(impl_->file, buf, sizeof(buf)) != nullptr) {
    any = true;
    line->append(buf);
    if (!line->empty() && line->back() == '\n') {
      line->pop_back();
      StripCarriageReturn(line);
      return true;
    }
  }
  int err = 0;
  gzerror(impl_->file, &err);
  if (err != Z_OK && err != Z_STREAM_END) {
    throw InputError("read error in " + impl_->path);
  }
  StripCarriageReturn(line);
  return any;
}

std::vector<std::string> ExpandInputPaths(const std::vector<std::string>& entries) {
  std::vector<std::string> out;
  for (const std::string& entry : entries) {
    fs::path p(entry);
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& de : fs::directory_iterator(p)) {
        if (de.is_regular_file() && IsCorpusFile(de.path())) {
          found.push_back(de.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (HasWildcard(p.filename().string())) {
      fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
      if (!fs::is_directory(dir)) throw InputError("no such directory: " + dir.string());
      const std::string pattern = p.filename().string();
      std::vector<std::string> found;
      for (const auto& de : fs::directory_iterator(dir)) {
        if (!de.is_regular_file()) continue;
        if (fnmatch(pattern.c_str(), de.path().filename().c_str(), 0) == 0) {
          found.push_back((p.parent_path() / de.path().filename()).string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.push_back(entry);
    } else {
      throw InputError("no such file or directory: " + entry);
    }
  }
  return out;
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InputError("write failed: " + path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace adjorder
