#include "adjorder/pipeline.h"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "adjorder/infogain.h"

namespace adjorder {

namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create directory " + dir);
}

std::string Path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

template <typename Table>
void WriteTable(const Table& table, const std::string& path) {
  std::ostringstream out;
  table.WriteTsv(out);
  WriteFile(path, out.str());
}

template <typename Table>
Table ReadTable(const std::string& path) {
  if (!fs::is_regular_file(path)) {
    throw InputError("missing extraction artifact " + path + " (run `extract` first)");
  }
  std::istringstream in(ReadFile(path));
  return Table::ReadTsv(in, path);
}

void AddStats(CorpusStats* total, const ParseStats& s) {
  total->sentences += s.sentences;
  total->malformed += s.malformed;
}

}  // namespace

LexiconResult RunLexicon(const RunConfig& config, std::ostream& log) {
  ValidateConfig(config, true);
  const std::vector<std::string> files = ExpandInputPaths(config.lexicon_corpora);
  std::vector<Lexicon> parts(files.size(), Lexicon(config.language));
  std::vector<ParseStats> stats(files.size());
  ParallelFor(files.size(), config.threads, [&](std::size_t i) {
    FileLineReader lines(files[i]);
    ConlluReader reader(lines, files[i], config.parse_mode);
    Sentence s;
    while (reader.Next(&s)) parts[i].AddSentence(s);
    stats[i] = reader.stats();
  });
  LexiconResult result;
  result.lexicon = Lexicon(config.language);
  result.stats.files = files.size();
  for (std::size_t i = 0; i < files.size(); ++i) {
    result.lexicon.Merge(parts[i]);
    AddStats(&result.stats, stats[i]);
  }
  const std::string dir = config.ResolvedLexiconDir();
  EnsureDir(dir);
  EnsureDir(config.output_dir);
  result.lexicon.Save(dir);
  WriteResolvedConfig(config, config.output_dir);
  if (result.lexicon.empty()) {
    log << "warning: lexicon for '" << config.language << "' is empty\n";
  }
  log << "lexicon: " << result.lexicon.adjectives().size() << " adjectives, "
      << result.lexicon.nouns().size() << " nouns from " << result.stats.sentences
      << " sentences (" << result.stats.malformed << " malformed)\n";
  return result;
}

ExtractionRole ExtractCorpus(const std::vector<std::string>& files, const Lexicon& lexicon,
                             const ExtractOptions& options, ParseMode mode, int threads) {
  std::vector<ExtractionRole> parts(files.size());
  std::vector<ParseStats> stats(files.size());
  ParallelFor(files.size(), threads, [&](std::size_t i) {
    FileLineReader lines(files[i]);
    ConlluReader reader(lines, files[i], mode);
    Sentence s;
    while (reader.Next(&s)) {
      for (const NpOccurrence& np : ExtractNps(s, lexicon, options)) parts[i].nps.Add(np);
      for (const Triple& t : ExtractTriples(s, lexicon, options)) parts[i].triples.Add(t);
    }
    stats[i] = reader.stats();
  });
  ExtractionRole role;
  role.stats.files = files.size();
  for (std::size_t i = 0; i < files.size(); ++i) {
    role.nps.Merge(parts[i].nps);
    role.triples.Merge(parts[i].triples);
    AddStats(&role.stats, stats[i]);
  }
  return role;
}

namespace {

void AppendRoleStats(const std::string& role, const ExtractionRole& r, std::string* out) {
  auto line = [&](const std::string& key, std::uint64_t value) {
    *out += role + "." + key + "\t" + std::to_string(value) + "\n";
  };
  line("files", r.stats.files);
  line("sentences", r.stats.sentences);
  line("malformed_sentences", r.stats.malformed);
  line("np_types", r.nps.counts().size());
  line("np_tokens", r.nps.TotalCount());
  std::uint64_t types[3] = {0, 0, 0}, tokens[3] = {0, 0, 0};
  for (const Triple& t : r.triples.Triples()) {
    types[static_cast<int>(t.tmpl)] += 1;
    tokens[static_cast<int>(t.tmpl)] += t.count;
  }
  for (Template t : kTemplates) {
    const std::string name(TemplateName(t));
    line("triple_types." + name, types[static_cast<int>(t)]);
    line("triple_tokens." + name, tokens[static_cast<int>(t)]);
  }
}

}  // namespace

ExtractResult RunExtract(const RunConfig& config, std::ostream& log) {
  ValidateConfig(config, true);
  const Lexicon lexicon = Lexicon::Load(config.ResolvedLexiconDir(), config.language);
  const ExtractOptions options = config.MakeExtractOptions();
  ExtractResult result;
  result.train = ExtractCorpus(ExpandInputPaths(config.train_corpora), lexicon, options,
                               config.parse_mode, config.threads);
  result.test = ExtractCorpus(ExpandInputPaths(config.test_corpora), lexicon, options,
                              config.parse_mode, config.threads);
  EnsureDir(config.output_dir);
  const std::string& out = config.output_dir;
  WriteTable(result.train.nps, Path(out, "train.nps.tsv"));
  WriteTable(result.train.triples, Path(out, "train.triples.tsv"));
  WriteTable(result.test.nps, Path(out, "test.nps.tsv"));
  WriteTable(result.test.triples, Path(out, "test.triples.tsv"));
  std::string stats;
  AppendRoleStats("train", result.train, &stats);
  AppendRoleStats("test", result.test, &stats);
  WriteFile(Path(out, "extract.stats.tsv"), stats);
  WriteResolvedConfig(config, out);
  log << "extract: train " << result.train.triples.TotalCount() << " triples / "
      << result.train.nps.TotalCount() << " NPs, test " << result.test.triples.TotalCount()
      << " triples; malformed sentences " << result.train.stats.malformed + result.test.stats.malformed
      << "\n";
  return result;
}

Distribution LoadTrainingDistribution(const RunConfig& config) {
  return BuildDistribution(ReadTable<NpTable>(Path(config.output_dir, "train.nps.tsv")));
}

LanguageAnalysis AnalyzeLanguage(const RunConfig& config, std::ostream& log) {
  ValidateConfig(config, false);
  const std::string& out = config.output_dir;
  const NpTable nps = ReadTable<NpTable>(Path(out, "train.nps.tsv"));
  const TripleTable train = ReadTable<TripleTable>(Path(out, "train.triples.tsv"));
  const TripleTable test = ReadTable<TripleTable>(Path(out, "test.triples.tsv"));

  std::uint64_t skipped_nps = 0;
  const Distribution dist = BuildDistribution(nps, &skipped_nps);
  WriteTable(dist, Path(out, "distribution.tsv"));

  LanguageAnalysis a;
  a.language = config.language;
  a.eval.logistic.ridge = config.ridge;
  a.eval.logistic.weighting = config.train_weighting;
  a.eval.unit_scale = config.UnitScale();
  a.train_triples = train.Triples();

  const TripleScorer scorer(dist, config.weight_mode);
  std::vector<TripleScore> train_scores = ScoreTriples(scorer, a.train_triples);
  std::vector<TripleScore> test_scores = ScoreTriples(scorer, test.Triples());
  {
    std::ostringstream s;
    WriteScoredTsv(s, train_scores, a.eval.unit_scale);
    WriteFile(Path(out, "train.scored.tsv"), s.str());
    std::ostringstream t;
    WriteScoredTsv(t, test_scores, a.eval.unit_scale);
    WriteFile(Path(out, "test.scored.tsv"), t.str());
  }

  std::uint64_t usable[3] = {0, 0, 0}, total[3] = {0, 0, 0};
  for (const TripleScore& s : train_scores) {
    const int t = static_cast<int>(s.triple.tmpl);
    total[t] += s.triple.count;
    if (s.usable) usable[t] += s.triple.count;
  }
  a.analyzable_tokens = usable[0] + usable[1] + usable[2];

  a.scores.language = config.language;
  a.scores.train = std::move(train_scores);
  a.scores.test = std::move(test_scores);
  for (Template tmpl : kTemplates) {
    const int t = static_cast<int>(tmpl);
    const std::string name(TemplateName(tmpl));
    if (a.analyzable_tokens < config.min_triples) {
      a.omitted.push_back(name + ": language has " + std::to_string(a.analyzable_tokens) +
                          " analyzable triples, below min-triples " +
                          std::to_string(config.min_triples));
      continue;
    }
    const double share =
        static_cast<double>(usable[t]) / static_cast<double>(a.analyzable_tokens);
    if (usable[t] == 0 || share < config.min_template_share) {
      std::ostringstream reason;
      reason << name << ": template share " << share << " below min-template-share "
             << config.min_template_share;
      a.omitted.push_back(reason.str());
      continue;
    }
    a.scores.templates.push_back(tmpl);
    CellResult cell = EvaluateCell(a.language, tmpl, Predictor::kIg, a.scores.train,
                                   a.scores.test, a.eval);
    if (!cell.ok) {
      a.omitted.push_back(name + ": " + cell.note);
      continue;
    }
    TemplateReport r;
    r.language = a.language;
    r.tmpl = tmpl;
    r.n_triples = cell.train_tokens;
    r.beta1 = cell.fit.beta1;
    r.p_value = cell.fit.p1;
    r.token_accuracy = cell.accuracy.token;
    r.type_accuracy = cell.accuracy.type;
    r.coverage = total[t] == 0 ? 0.0 : static_cast<double>(usable[t]) / static_cast<double>(total[t]);
    r.cell = std::move(cell);
    a.reports.push_back(std::move(r));
  }
  log << "analyze " << a.language << ": " << dist.support_size() << " feature vectors, "
      << a.analyzable_tokens << " analyzable training triples, " << a.reports.size()
      << " template(s) reported\n";
  if (skipped_nps > 0) {
    log << "note: " << skipped_nps << " NP tokens whose adjective repeats the noun lemma were skipped\n";
  }
  for (const std::string& o : a.omitted) log << "omitted " << a.language << " " << o << "\n";
  return a;
}

LanguageAnalysis RunAnalyze(const RunConfig& config, std::ostream& log) {
  LanguageAnalysis a = AnalyzeLanguage(config, log);
  std::span<const LanguageAnalysis> one(&a, 1);
  WriteResultReports(one, config.output_dir);
  WriteReversedReport(one, config.output_dir);
  WriteAblationReport(one, config.output_dir);
  WriteResolvedConfig(config, config.output_dir);
  if (a.reports.empty()) {
    std::string msg = "no template of '" + a.language + "' could be analyzed";
    for (const std::string& o : a.omitted) msg += "\n  " + o;
    throw NoDataError(msg);
  }
  return a;
}

}  // namespace adjorder
