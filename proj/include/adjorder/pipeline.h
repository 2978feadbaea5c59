// Run configuration and the end-to-end commands behind the command-line tool.

#ifndef ADJORDER_PIPELINE_H_
#define ADJORDER_PIPELINE_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjorder/conllu.h"
#include "adjorder/distribution.h"
#include "adjorder/extraction.h"
#include "adjorder/io.h"
#include "adjorder/model_eval.h"

namespace adjorder {

// No template of any language produced an analyzable result. Exit code 3.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Units { kNats, kBits };

struct RunConfig {
  std::string language;
  std::vector<std::string> lexicon_corpora;
  std::vector<std::string> train_corpora;
  std::vector<std::string> test_corpora;
  std::string output_dir = "out";
  std::string lexicon_dir;  // empty: output_dir
  std::vector<std::string> modifier_deprels = {"amod"};  // "*": any relation
  bool ignore_punct_deps = false;
  WeightMode weight_mode = WeightMode::kSupportCount;
  TrainWeighting train_weighting = TrainWeighting::kToken;
  double ridge = 1e-9;
  std::uint64_t min_triples = 5000;
  double min_template_share = 0.10;
  Units units = Units::kNats;
  ParseMode parse_mode = ParseMode::kRobust;
  int threads = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  std::string ResolvedLexiconDir() const { return lexicon_dir.empty() ? output_dir : lexicon_dir; }
  ExtractOptions MakeExtractOptions() const;
  double UnitScale() const;
};

// One configuration key: its name, help text and text conversions.
struct ConfigKey {
  const char* name;
  const char* help;
  bool is_list;
  void (*set)(RunConfig&, const std::vector<std::string>&);
  std::vector<std::string> (*get)(const RunConfig&);
};

std::span<const ConfigKey> ConfigKeys();

// Flat "key = value" text, one line per key in ConfigKeys() order; lists
// are written as ["a", "b"].
std::string FormatConfig(const RunConfig& config);
// Throws InputError on unknown keys or bad values.
RunConfig ParseConfig(const std::string& text, const std::string& source = "<config>");
RunConfig LoadConfig(const std::string& path);
// Sets one key from its textual values. Throws InputError.
void SetConfigValue(RunConfig& config, const std::string& key,
                    const std::vector<std::string>& values);

// Checks option ranges. With `check_paths`, every corpus entry must exist.
void ValidateConfig(const RunConfig& config, bool check_paths);

struct CorpusStats {
  std::size_t files = 0;
  std::size_t sentences = 0;
  std::size_t malformed = 0;
};

struct LexiconResult {
  Lexicon lexicon;
  CorpusStats stats;
};

// Builds and saves <lang>.adj.txt and <lang>.noun.txt.
LexiconResult RunLexicon(const RunConfig& config, std::ostream& log);

struct ExtractionRole {
  NpTable nps;
  TripleTable triples;
  CorpusStats stats;
};

ExtractionRole ExtractCorpus(const std::vector<std::string>& files, const Lexicon& lexicon,
                             const ExtractOptions& options, ParseMode mode, int threads);

struct ExtractResult {
  ExtractionRole train;
  ExtractionRole test;
};

// Writes train/test NP and triple tables plus extract.stats.tsv.
ExtractResult RunExtract(const RunConfig& config, std::ostream& log);

struct TemplateReport {
  std::string language;
  Template tmpl = Template::kAAN;
  std::uint64_t n_triples = 0;  // usable training tokens
  double beta1 = 0.0;
  double p_value = 1.0;
  double token_accuracy = 0.0;
  double type_accuracy = 0.0;
  double coverage = 0.0;  // usable share of the template's training tokens
  CellResult cell;
};

struct LanguageAnalysis {
  std::string language;
  std::uint64_t analyzable_tokens = 0;  // usable training triple tokens
  std::vector<TemplateReport> reports;  // successful cells
  std::vector<std::string> omitted;     // "<template>: <reason>"
  LanguageScores scores;                // training/test scores, eligible templates
  std::vector<Triple> train_triples;
  EvalOptions eval;
};

// Scores extraction artifacts in config.output_dir and fits each eligible
// template. Writes distribution.tsv and the scored triple tables.
LanguageAnalysis AnalyzeLanguage(const RunConfig& config, std::ostream& log);

// Result, reversed-pair, ablation and scatter reports for one or more
// languages, written as TSV, aligned text and JSON into `dir`.
void WriteResultReports(std::span<const LanguageAnalysis> languages, const std::string& dir);
void WriteReversedReport(std::span<const LanguageAnalysis> languages, const std::string& dir);
void WriteAblationReport(std::span<const LanguageAnalysis> languages, const std::string& dir);

// Full analysis for one language: AnalyzeLanguage plus every report in the
// output directory. Throws NoDataError when nothing could be analyzed, after
// writing the diagnostic reports.
LanguageAnalysis RunAnalyze(const RunConfig& config, std::ostream& log);

// Loads the training distribution from config.output_dir.
Distribution LoadTrainingDistribution(const RunConfig& config);

// Writes the resolved config as <dir>/run.cfg.
void WriteResolvedConfig(const RunConfig& config, const std::string& dir);

}  // namespace adjorder

#endif  // ADJORDER_PIPELINE_H_
