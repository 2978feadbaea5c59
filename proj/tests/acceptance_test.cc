// Acceptance checks, one line per criterion:
//   PASS|FAIL|SKIP  <criterion>  <detail>  (<elapsed> ms)
// Exit status is nonzero if any criterion fails.
//
//   acceptance_test [--english-config FILE]
//
// With --english-config, the config is run through lexicon, extract and
// analyze and its AAN cell is checked against the reference English accuracy.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "adjorder/pipeline.h"
#include "testing.h"

namespace adjorder {
namespace {

namespace fs = std::filesystem;

// Tolerances and limits.
constexpr double kExact = 1e-12;
constexpr double kLogisticTol = 1e-4;
constexpr double kSymmetricTol = 1e-8;
constexpr double kMacroTol = 0.002;
constexpr double kSyntheticAccLow = 0.85;
constexpr double kSyntheticAccHigh = 0.92;
constexpr double kSyntheticMaxP = 0.01;
constexpr double kEnglishAcc = 0.643;
constexpr double kEnglishTol = 0.05;

constexpr double kPartitionMs = 1;
constexpr double kPropertyMs = 5000;
constexpr double kExtractionMs = 1000;
constexpr double kLogisticMs = 1000;
constexpr double kSyntheticMs = 60000;

struct Outcome {
  bool pass = true;
  bool skip = false;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void Report(const std::string& name, double limit_ms, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!o.skip && limit_ms > 0 && ms >= limit_ms) {
    o.Require(false, fmt::format("runtime {:.3f} ms over {} ms", ms, limit_ms));
  }
  const char* status = o.skip ? "SKIP" : o.pass ? "PASS" : "FAIL";
  if (!o.skip && !o.pass) ++failures;
  std::cout << fmt::format("{}  {}  {}  ({:.3f} ms)\n", status, name, o.detail, ms);
}

Distribution FourVectors() {
  Distribution d;
  d.Add({"f0", "m0"}, 1);
  d.Add({"f0", "f1", "f2", "m1"}, 3);
  d.Add({"f1", "f2", "m2"}, 2);
  d.Add({"f1", "m3"}, 4);
  return d;
}

Outcome FourVectorsPartition(const Distribution& d) {
  Outcome o;
  const Partition p = PartitionOn(d, "f2", WeightMode::kSupportCount);
  const double pos[2] = {p.positive.Probability({"f0", "f1", "f2", "m1"}),
                         p.positive.Probability({"f1", "f2", "m2"})};
  const double neg[2] = {p.negative.Probability({"f0", "m0"}), p.negative.Probability({"f1", "m3"})};
  o.Require(std::fabs(pos[0] - 0.6) <= kExact && std::fabs(pos[1] - 0.4) <= kExact, "L' != {0.6, 0.4}");
  o.Require(std::fabs(neg[0] - 0.2) <= kExact && std::fabs(neg[1] - 0.8) <= kExact, "L-bar' != {0.2, 0.8}");
  o.Require(std::fabs(p.weight_positive - 0.5) <= kExact && std::fabs(p.weight_negative - 0.5) <= kExact,
            "weights != 0.5/0.5");
  o.detail = o.pass ? fmt::format("L'={{{:.12g},{:.12g}}} L-bar'={{{:.12g},{:.12g}}} w={:.12g}/{:.12g}",
                                  pos[0], pos[1], neg[0], neg[1], p.weight_positive, p.weight_negative)
                    : o.detail;
  return o;
}

Outcome FourVectorsGain() {
  Outcome o;
  const Distribution d = FourVectors();
  const double f2 = InformationGain(d, "f2").ig;
  const double f1 = InformationGain(d, "f1").ig;
  const double want1 = 0.75 * std::log(10.0 / 9) + 0.25 * std::log(10.0);
  o.Require(std::fabs(f2 - std::log(2.0)) <= kExact, fmt::format("IG(f2)={:.15f}", f2));
  o.Require(std::fabs(f1 - want1) <= kExact, fmt::format("IG(f1)={:.15f}", f1));
  if (o.pass) o.detail = fmt::format("IG(f2)={:.12f} IG(f1)={:.12f}", f2, f1);
  return o;
}

Outcome PropertySuite() {
  Outcome o;
  std::mt19937_64 rng(20240);
  std::size_t checks = 0;
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const Distribution d = testing::RandomUniverse(rng, 8, 6);
    Distribution scaled;
    for (const auto& [key, c] : d.counts()) scaled.Add(key, c * 7);
    for (int f = 0; f < 7; ++f) {
      const std::string feat = "f" + std::to_string(f);
      const IgBundle b = InformationGain(d, feat);
      std::size_t with = 0;
      for (const auto& [key, c] : d.counts()) with += KeyHasFeature(key, feat);
      const bool degenerate = with == 0 || with == d.support_size();
      o.Require(b.ig >= 0 && b.kl_positive >= 0 && b.kl_negative >= 0, "negative gain");
      o.Require((b.ig == 0.0) == degenerate, "zero-gain iff universal/absent violated");
      o.Require(std::fabs(b.ig - (b.weight_positive * b.kl_positive + b.weight_negative * b.kl_negative)) <=
                    kExact,
                "decomposition");
      o.Require(std::fabs(InformationGain(scaled, feat).ig - b.ig) <= kExact, "scale invariance");
      ++checks;
      if (!o.pass) {
        o.detail += fmt::format(" (trial {}, {})", trial, feat);
        break;
      }
    }
  }
  if (o.pass) o.detail = fmt::format("1000 universes, {} feature checks", checks);
  return o;
}

Outcome ExtractionOracle() {
  Outcome o;
  const Lexicon lexicon = Lexicon::Load(testing::DataPath("lexicon"), "xx");
  const auto oracle_lex = testing::ReadOracleLexicon(testing::DataPath("lexicon/xx.adj.txt"),
                                                     testing::DataPath("lexicon/xx.noun.txt"));
  const auto sentences =
      ReadConlluFile(testing::DataPath("extraction_fixture.conllu"), ParseMode::kStrict);
  o.Require(sentences.size() == 50, fmt::format("fixture has {} sentences", sentences.size()));
  TripleTable triples;
  NpTable nps;
  for (const Sentence& s : sentences) {
    for (const Triple& t : ExtractTriples(s, lexicon)) triples.Add(t);
    for (const NpOccurrence& np : ExtractNps(s, lexicon)) nps.Add(np);
  }
  std::map<std::tuple<Template, std::string, std::string, std::string>, std::uint64_t> got;
  for (const Triple& t : triples.Triples()) got[{t.tmpl, t.noun, t.adj_first, t.adj_second}] = t.count;
  o.Require(got == testing::OracleTriples(sentences, oracle_lex), "triples differ from brute force");
  o.Require(nps.counts() == testing::OracleNps(sentences, oracle_lex), "NPs differ from brute force");
  if (o.pass) {
    o.detail = fmt::format("{} triple types, {} NP types identical", got.size(), nps.counts().size());
  }
  return o;
}

Observation Obs(double x, int y, std::uint64_t w) {
  Observation o;
  o.key = {Template::kAAN, "n", "a", "b"};
  o.x = x;
  o.y = y;
  o.weight = w;
  return o;
}

Outcome Logistic() {
  Outcome o;
  const std::vector<Observation> weighted = {Obs(1, 1, 3), Obs(1, 0, 1), Obs(-1, 0, 3), Obs(-1, 1, 1)};
  const LogisticFit fit = FitLogistic(weighted);
  const auto [g0, g1] = testing::GridSearchMle(weighted);
  o.Require(std::fabs(fit.beta0 - g0) <= kLogisticTol && std::fabs(fit.beta1 - g1) <= kLogisticTol,
            fmt::format("newton ({}, {}) vs grid ({}, {})", fit.beta0, fit.beta1, g0, g1));
  const LogisticFit sym = FitLogistic(std::vector<Observation>{Obs(1, 1, 1), Obs(1, 0, 1), Obs(-1, 1, 1), Obs(-1, 0, 1)});
  o.Require(std::fabs(sym.beta0) <= kSymmetricTol && std::fabs(sym.beta1) <= kSymmetricTol,
            "symmetric fit not zero");
  const LogisticFit sep = FitLogistic(std::vector<Observation>{Obs(1, 1, 1), Obs(-1, 0, 1)});
  o.Require(sep.separation_detected, "separation not detected");
  if (o.pass) {
    o.detail = fmt::format("beta=({:.6f}, {:.6f}) grid=({:.6f}, {:.6f}); symmetric=({:.1e}, {:.1e}); separated",
                           fit.beta0, fit.beta1, g0, g1, sym.beta0, sym.beta1);
  }
  return o;
}

struct SyntheticState {
  bool ran = false;
  LanguageAnalysis analysis;
};

Outcome Synthetic(SyntheticState* state) {
  Outcome o;
  testing::TempDir dir;
  const testing::SyntheticSpec spec;
  const testing::SyntheticCorpus corpus = testing::WriteSyntheticCorpus(spec, dir.path());
  RunConfig c;
  c.language = "synthetic";
  c.lexicon_corpora = {corpus.lexicon_file};
  c.train_corpora = {corpus.train_file};
  c.test_corpora = {corpus.test_file};
  c.output_dir = dir / "out";
  std::ostringstream log;
  RunLexicon(c, log);
  RunExtract(c, log);
  state->analysis = RunAnalyze(c, log);
  state->ran = true;
  std::vector<std::string> parts;
  for (Template t : kTemplates) {
    const TemplateReport* r = nullptr;
    for (const TemplateReport& x : state->analysis.reports) {
      if (x.tmpl == t) r = &x;
    }
    const std::string name(TemplateName(t));
    if (r == nullptr) {
      o.Require(false, name + " not reported");
      continue;
    }
    o.Require(r->beta1 > 0, name + " beta1 <= 0");
    o.Require(r->p_value < kSyntheticMaxP, fmt::format("{} P={}", name, r->p_value));
    o.Require(r->token_accuracy >= kSyntheticAccLow && r->token_accuracy <= kSyntheticAccHigh,
              fmt::format("{} token accuracy {:.4f}", name, r->token_accuracy));
    parts.push_back(fmt::format("{} n={} beta1={:.3f} P={:.1e} acc={:.4f} (truth {:.4f})", name,
                                r->n_triples, r->beta1, r->p_value, r->token_accuracy,
                                static_cast<double>(corpus.test_correct.count(t) ? corpus.test_correct.at(t) : 0) /
                                    (corpus.test_counts.count(t) ? corpus.test_counts.at(t) : 1)));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (o.detail.empty() ? "" : "; ") + parts[i];
  return o;
}

Outcome Macro() {
  Outcome o;
  const std::vector<double> naa = {0.693, 0.626, 0.710, 0.737, 0.716, 0.558, 0.740,
                                   0.713, 0.605, 0.726, 0.742, 0.713, 0.561};
  const MacroStats m = MacroSummary(naa);
  o.Require(std::fabs(m.mean - 0.680) <= kMacroTol, fmt::format("mean {:.4f}", m.mean));
  o.Require(m.ci_low && std::fabs(*m.ci_low - 0.639) <= kMacroTol, "ci_low");
  o.Require(m.ci_high && std::fabs(*m.ci_high - 0.721) <= kMacroTol, "ci_high");
  if (o.pass) o.detail = fmt::format("mean {:.4f} CI [{:.4f}, {:.4f}]", m.mean, *m.ci_low, *m.ci_high);
  return o;
}

Outcome AblationConsistency(const SyntheticState& state) {
  Outcome o;
  if (!state.ran) {
    o.Require(false, "synthetic run unavailable");
    return o;
  }
  const LanguageAnalysis& a = state.analysis;
  const AblationTable table = Ablate(std::vector<LanguageScores>{a.scores}, a.eval);
  const AblationRow* ig = nullptr;
  for (const AblationRow& r : table.rows) {
    if (r.predictor == Predictor::kIg) ig = &r;
  }
  o.Require(ig != nullptr, "no ig row");
  if (!o.pass) return o;
  for (const TemplateReport& r : a.reports) {
    const AblationEntry& e = ig->by_template[static_cast<int>(r.tmpl)];
    o.Require(e.accuracy && *e.accuracy == r.token_accuracy,
              std::string(TemplateName(r.tmpl)) + " ig column differs from main accuracy");
  }
  double worst = 0;
  std::size_t bundles = 0;
  for (const auto* scores : {&a.scores.train, &a.scores.test}) {
    for (const TripleScore& s : *scores) {
      for (const IgBundle* b : {&s.first, &s.second}) {
        worst = std::max(worst, std::fabs(b->weight_positive * b->kl_positive +
                                          b->weight_negative * b->kl_negative - b->ig));
        ++bundles;
      }
    }
  }
  o.Require(worst <= kExact, fmt::format("recombination error {:.3e}", worst));
  if (o.pass) {
    o.detail = fmt::format("ig column identical for {} templates; max |w+ kl+ + w- kl- - ig| = {:.1e} over {} bundles",
                           a.reports.size(), worst, bundles);
  }
  return o;
}

Outcome English(const std::string& config_path) {
  Outcome o;
  if (config_path.empty()) {
    o.skip = true;
    o.detail = "needs --english-config with the full-scale corpora";
    return o;
  }
  const RunConfig c = LoadConfig(config_path);
  std::ostringstream log;
  RunLexicon(c, log);
  RunExtract(c, log);
  const LanguageAnalysis a = RunAnalyze(c, log);
  const TemplateReport* aan = nullptr;
  for (const TemplateReport& r : a.reports) {
    if (r.tmpl == Template::kAAN) aan = &r;
  }
  o.Require(aan != nullptr, "AAN not reported");
  if (!aan) return o;
  o.Require(std::fabs(aan->token_accuracy - kEnglishAcc) <= kEnglishTol,
            fmt::format("token accuracy {:.4f}", aan->token_accuracy));
  o.Require(aan->beta1 > 0 && aan->p_value < 0.01, "beta1 not positive and significant");
  o.detail = fmt::format("AAN n={} beta1={:.3f} P={:.1e} acc={:.4f}", aan->n_triples, aan->beta1,
                         aan->p_value, aan->token_accuracy) + (o.pass ? "" : "; " + o.detail);
  return o;
}

int Main(int argc, char** argv) {
  std::string english;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--english-config" && i + 1 < argc) {
      english = argv[++i];
    } else {
      std::cerr << "usage: acceptance_test [--english-config FILE]\n";
      return 2;
    }
  }
  const Distribution universe = FourVectors();
  Report("four-vector partition", kPartitionMs, [&] { return FourVectorsPartition(universe); });
  Report("four-vector information gain", 0, FourVectorsGain);
  Report("information gain property suite", kPropertyMs, PropertySuite);
  Report("extraction oracle equivalence", kExtractionMs, ExtractionOracle);
  Report("logistic fit vs oracle", kLogisticMs, Logistic);
  SyntheticState state;
  Report("end-to-end synthetic language", kSyntheticMs, [&] { return Synthetic(&state); });
  Report("macro statistics", 0, Macro);
  Report("ablation harness consistency", 0, [&] { return AblationConsistency(state); });
  Report("english full-scale (optional)", 0, [&] { return English(english); });
  std::cout << (failures == 0 ? "all criteria passed\n" : fmt::format("{} criteria failed\n", failures));
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace adjorder

int main(int argc, char** argv) { return adjorder::Main(argc, argv); }
