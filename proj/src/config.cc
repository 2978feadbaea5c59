#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <sstream>

#include "adjorder/pipeline.h"

namespace adjorder {

namespace {

const std::string& Single(const std::vector<std::string>& v, const char* key) {
  if (v.size() != 1) throw InputError(std::string("key '") + key + "' takes one value");
  return v[0];
}

bool ParseBool(const std::string& s, const char* key) {
  if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "off" || s == "no") return false;
  throw InputError(std::string("key '") + key + "': expected true or false, got '" + s + "'");
}

double ParseDouble(const std::string& s, const char* key) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("key '") + key + "': expected a number, got '" + s + "'");
}

std::uint64_t ParseUnsigned(const std::string& s, const char* key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError(std::string("key '") + key + "': expected a non-negative integer, got '" +
                     s + "'");
  }
  return v;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatDouble(double v) { return fmt::format("{}", v); }

#define ADJ_STRING_KEY(key, field, help_text)                                          \
  ConfigKey {                                                                          \
    key, help_text, false,                                                             \
        [](RunConfig& c, const std::vector<std::string>& v) { c.field = Single(v, key); }, \
        [](const RunConfig& c) { return std::vector<std::string>{c.field}; }           \
  }

#define ADJ_LIST_KEY(key, field, help_text)                                              \
  ConfigKey {                                                                            \
    key, help_text, true, [](RunConfig& c, const std::vector<std::string>& v) { c.field = v; }, \
        [](const RunConfig& c) { return c.field; }                                       \
  }

const ConfigKey kKeys[] = {
    ADJ_STRING_KEY("language", language, "Language code; names the lexicon files."),
    ADJ_LIST_KEY("lexicon-corpora", lexicon_corpora,
                 "CoNLL-U files, directories or globs for the ADJ/NOUN whitelists."),
    ADJ_LIST_KEY("train-corpora", train_corpora,
                 "CoNLL-U inputs for NP feature vectors and regression training."),
    ADJ_LIST_KEY("test-corpora", test_corpora, "CoNLL-U inputs for held-out triples."),
    ADJ_STRING_KEY("output-dir", output_dir, "Directory receiving every output file."),
    ADJ_STRING_KEY("lexicon-dir", lexicon_dir,
                   "Directory holding <lang>.adj.txt and <lang>.noun.txt (default: output-dir)."),
    ADJ_LIST_KEY("modifier-deprels", modifier_deprels,
                 "Relations attaching a modifying ADJ; \"*\" accepts any relation."),
    ConfigKey{"ignore-punct-deps",
              "Do not count punct dependents as other dependents of a triple.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                c.ignore_punct_deps = ParseBool(Single(v, "ignore-punct-deps"), "ignore-punct-deps");
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{c.ignore_punct_deps ? "true" : "false"};
              }},
    ConfigKey{"weight-mode", "Partition weights: support-count or probability-mass.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                if (!ParseWeightMode(Single(v, "weight-mode"), &c.weight_mode)) {
                  throw InputError("key 'weight-mode': expected support-count or probability-mass");
                }
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{std::string(WeightModeName(c.weight_mode))};
              }},
    ConfigKey{"train-weighting", "Regression weights: token or type.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                if (!ParseTrainWeighting(Single(v, "train-weighting"), &c.train_weighting)) {
                  throw InputError("key 'train-weighting': expected token or type");
                }
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{std::string(TrainWeightingName(c.train_weighting))};
              }},
    ConfigKey{"ridge", "L2 penalty on both logistic coefficients.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                c.ridge = ParseDouble(Single(v, "ridge"), "ridge");
              },
              [](const RunConfig& c) { return std::vector<std::string>{FormatDouble(c.ridge)}; }},
    ConfigKey{"min-triples", "Minimum analyzable training triples for a language.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                c.min_triples = ParseUnsigned(Single(v, "min-triples"), "min-triples");
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{std::to_string(c.min_triples)};
              }},
    ConfigKey{"min-template-share", "Minimum share of a language's triples for a template.",
              false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                c.min_template_share =
                    ParseDouble(Single(v, "min-template-share"), "min-template-share");
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{FormatDouble(c.min_template_share)};
              }},
    ConfigKey{"units", "Units for scores and coefficients: nats or bits.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                const std::string& s = Single(v, "units");
                if (s == "nats") {
                  c.units = Units::kNats;
                } else if (s == "bits") {
                  c.units = Units::kBits;
                } else {
                  throw InputError("key 'units': expected nats or bits");
                }
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{c.units == Units::kNats ? "nats" : "bits"};
              }},
    ConfigKey{"parse-mode", "CoNLL-U error handling: robust (drop sentence) or strict (abort).",
              false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                const std::string& s = Single(v, "parse-mode");
                if (s == "robust") {
                  c.parse_mode = ParseMode::kRobust;
                } else if (s == "strict") {
                  c.parse_mode = ParseMode::kStrict;
                } else {
                  throw InputError("key 'parse-mode': expected robust or strict");
                }
              },
              [](const RunConfig& c) {
                return std::vector<std::string>{c.parse_mode == ParseMode::kRobust ? "robust"
                                                                                    : "strict"};
              }},
    ConfigKey{"threads", "Worker threads for file-level parallelism.", false,
              [](RunConfig& c, const std::vector<std::string>& v) {
                c.threads = static_cast<int>(ParseUnsigned(Single(v, "threads"), "threads"));
              },
              [](const RunConfig& c) { return std::vector<std::string>{std::to_string(c.threads)}; }},
};

#undef ADJ_STRING_KEY
#undef ADJ_LIST_KEY

}  // namespace

ExtractOptions RunConfig::MakeExtractOptions() const {
  ExtractOptions o;
  o.modifier_deprels.clear();
  for (const std::string& d : modifier_deprels) {
    if (d == "*") {
      o.any_deprel = true;
    } else {
      o.modifier_deprels.insert(d);
    }
  }
  o.ignore_punct_deps = ignore_punct_deps;
  return o;
}

double RunConfig::UnitScale() const { return units == Units::kBits ? 1.0 / std::log(2.0) : 1.0; }

std::span<const ConfigKey> ConfigKeys() { return kKeys; }

std::string FormatConfig(const RunConfig& config) {
  std::string out;
  for (const ConfigKey& key : kKeys) {
    const std::vector<std::string> values = key.get(config);
    out += key.name;
    out += " = ";
    if (key.is_list) {
      out += '[';
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += Quote(values[i]);
      }
      out += ']';
    } else {
      out += Quote(values.at(0));
    }
    out += '\n';
  }
  return out;
}

void SetConfigValue(RunConfig& config, const std::string& key,
                    const std::vector<std::string>& values) {
  for (const ConfigKey& k : kKeys) {
    if (key == k.name) {
      k.set(config, values);
      return;
    }
  }
  throw InputError("unknown configuration key '" + key + "'");
}

RunConfig ParseConfig(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigBase{}.from_config(in);
  } catch (const CLI::Error& e) {
    throw InputError(source + ": " + e.what());
  }
  RunConfig config;
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty() || item.name == "++" || item.name == "--") {
      throw InputError(source + ": sections are not supported");
    }
    std::vector<std::string> values = item.inputs;
    // An empty list is read back as a single empty element.
    if (values.size() == 1 && values[0].empty()) {
      for (const ConfigKey& k : kKeys) {
        if (item.name == k.name && k.is_list) values.clear();
      }
    }
    try {
      SetConfigValue(config, item.name, values);
    } catch (const InputError& e) {
      throw InputError(source + ": " + e.what());
    }
  }
  return config;
}

RunConfig LoadConfig(const std::string& path) { return ParseConfig(ReadFile(path), path); }

void ValidateConfig(const RunConfig& config, bool check_paths) {
  if (config.language.empty()) throw InputError("language is not set");
  if (config.language.find_first_of("/\\") != std::string::npos) {
    throw InputError("language code may not contain path separators");
  }
  if (config.output_dir.empty()) throw InputError("output-dir is not set");
  if (config.ridge < 0) throw InputError("ridge must be non-negative");
  if (config.min_template_share < 0 || config.min_template_share > 1) {
    throw InputError("min-template-share must lie in [0, 1]");
  }
  if (config.threads < 1) throw InputError("threads must be at least 1");
  if (config.modifier_deprels.empty()) throw InputError("modifier-deprels is empty");
  if (check_paths) {
    ExpandInputPaths(config.lexicon_corpora);
    ExpandInputPaths(config.train_corpora);
    ExpandInputPaths(config.test_corpora);
  }
}

void WriteResolvedConfig(const RunConfig& config, const std::string& dir) {
  WriteFile(dir + "/run.cfg", FormatConfig(config));
}

}  // namespace adjorder
