// Report files mirroring the result tables: per-language template results
// with macro means, reversed-pair rates, the predictor ablation and scatter
// data.

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <json.hpp>

#include "adjorder/pipeline.h"

namespace adjorder {

namespace {

using nlohmann::ordered_json;

std::string Num(double v) { return fmt::format("{:.6f}", v); }
std::string Num(const std::optional<double>& v) { return v ? Num(*v) : "NA"; }
std::string PValue(double p) { return fmt::format("{:.6g}", p); }

ordered_json Json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string Path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::vector<const TemplateReport*> SortedReports(std::span<const LanguageAnalysis> languages) {
  std::vector<const TemplateReport*> out;
  for (const LanguageAnalysis& a : languages) {
    for (const TemplateReport& r : a.reports) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const TemplateReport* a, const TemplateReport* b) {
    return std::tie(a->tmpl, a->language) < std::tie(b->tmpl, b->language);
  });
  return out;
}

struct MeanRow {
  std::string group;  // template name or "all"
  std::string measure;
  MacroStats stats;
};

std::vector<MeanRow> Means(const std::vector<const TemplateReport*>& reports) {
  std::vector<MeanRow> rows;
  auto add = [&](const std::string& group, const std::vector<const TemplateReport*>& rs) {
    if (rs.empty()) return;
    std::vector<double> beta, tok, typ;
    for (const TemplateReport* r : rs) {
      beta.push_back(r->beta1);
      tok.push_back(r->token_accuracy);
      typ.push_back(r->type_accuracy);
    }
    rows.push_back({group, "beta1", MacroSummary(beta)});
    rows.push_back({group, "token_acc", MacroSummary(tok)});
    rows.push_back({group, "type_acc", MacroSummary(typ)});
  };
  for (Template t : kTemplates) {
    std::vector<const TemplateReport*> rs;
    for (const TemplateReport* r : reports) {
      if (r->tmpl == t) rs.push_back(r);
    }
    add(std::string(TemplateName(t)), rs);
  }
  add("all", reports);
  return rows;
}

}  // namespace

void WriteResultReports(std::span<const LanguageAnalysis> languages, const std::string& dir) {
  const auto reports = SortedReports(languages);
  const auto means = Means(reports);

  std::string tsv = "language\ttemplate\tn\tbeta1\tp\ttoken_acc\ttype_acc\n";
  std::string scatter = "language\ttemplate\tbeta1\ttoken_acc\n";
  for (const TemplateReport* r : reports) {
    tsv += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r->language, TemplateName(r->tmpl),
                       r->n_triples, Num(r->beta1), PValue(r->p_value), Num(r->token_accuracy),
                       Num(r->type_accuracy));
    scatter += fmt::format("{}\t{}\t{}\t{}\n", r->language, TemplateName(r->tmpl), Num(r->beta1),
                           Num(r->token_accuracy));
  }
  WriteFile(Path(dir, "results.tsv"), tsv);
  WriteFile(Path(dir, "scatter.tsv"), scatter);

  std::string means_tsv = "template\tmeasure\tn\tmean\tci_low\tci_high\n";
  for (const MeanRow& m : means) {
    means_tsv += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", m.group, m.measure, m.stats.n,
                             Num(m.stats.mean), Num(m.stats.ci_low), Num(m.stats.ci_high));
  }
  WriteFile(Path(dir, "results.means.tsv"), means_tsv);

  std::string txt;
  for (Template t : kTemplates) {
    txt += fmt::format("{:<4} {:<12} {:>8} {:>10} {:>10} {:>9} {:>9} {:>9}\n", TemplateName(t),
                       "language", "n", "beta1", "p", "token", "type", "coverage");
    for (const TemplateReport* r : reports) {
      if (r->tmpl != t) continue;
      txt += fmt::format("{:<4} {:<12} {:>8} {:>10.3f} {:>10.3g} {:>9.3f} {:>9.3f} {:>9.3f}\n", "",
                         r->language, r->n_triples, r->beta1, r->p_value, r->token_accuracy,
                         r->type_accuracy, r->coverage);
    }
    for (const MeanRow& m : means) {
      if (m.group != TemplateName(t)) continue;
      txt += fmt::format("     mean {:<10} {:.3f} [{}, {}]\n", m.measure, m.stats.mean,
                         m.stats.ci_low ? fmt::format("{:.3f}", *m.stats.ci_low) : "NA",
                         m.stats.ci_high ? fmt::format("{:.3f}", *m.stats.ci_high) : "NA");
    }
    txt += "\n";
  }
  for (const MeanRow& m : means) {
    if (m.group == "all") {
      txt += fmt::format("comprehensive mean {:<10} {:.3f}\n", m.measure, m.stats.mean);
    }
  }
  bool any_omitted = false;
  for (const LanguageAnalysis& a : languages) {
    for (const std::string& o : a.omitted) {
      if (!any_omitted) txt += "\nomitted:\n";
      any_omitted = true;
      txt += "  " + a.language + " " + o + "\n";
    }
  }
  WriteFile(Path(dir, "results.txt"), txt);

  ordered_json j;
  j["languages"] = ordered_json::array();
  for (const LanguageAnalysis& a : languages) {
    ordered_json lang;
    lang["language"] = a.language;
    lang["analyzable_triples"] = a.analyzable_tokens;
    lang["templates"] = ordered_json::array();
    for (const TemplateReport& r : a.reports) {
      const LogisticFit& f = r.cell.fit;
      lang["templates"].push_back({{"template", TemplateName(r.tmpl)},
                                   {"n", r.n_triples},
                                   {"beta0", f.beta0},
                                   {"beta1", f.beta1},
                                   {"se0", f.se0},
                                   {"se1", f.se1},
                                   {"p0", f.p0},
                                   {"p1", f.p1},
                                   {"converged", f.converged},
                                   {"separation_detected", f.separation_detected},
                                   {"iterations", f.iterations},
                                   {"token_accuracy", r.token_accuracy},
                                   {"type_accuracy", r.type_accuracy},
                                   {"test_tokens", r.cell.accuracy.tokens},
                                   {"test_types", r.cell.accuracy.types},
                                   {"coverage", r.coverage}});
    }
    lang["omitted"] = a.omitted;
    j["languages"].push_back(std::move(lang));
  }
  j["means"] = ordered_json::array();
  for (const MeanRow& m : means) {
    j["means"].push_back({{"template", m.group},
                          {"measure", m.measure},
                          {"n", m.stats.n},
                          {"mean", m.stats.mean},
                          {"ci_low", Json(m.stats.ci_low)},
                          {"ci_high", Json(m.stats.ci_high)}});
  }
  WriteFile(Path(dir, "results.json"), j.dump(2) + "\n");
}

void WriteReversedReport(std::span<const LanguageAnalysis> languages, const std::string& dir) {
  std::vector<double> by_template[3];
  std::vector<double> all;
  std::string per_language = "language\ttemplate\trate\n";
  for (const LanguageAnalysis& a : languages) {
    for (const TemplateReport& r : a.reports) {
      std::vector<Triple> triples;
      for (const Triple& t : a.train_triples) {
        if (t.tmpl == r.tmpl) triples.push_back(t);
      }
      if (triples.empty()) continue;
      const double rate = ReversedPairRate(triples);
      by_template[static_cast<int>(r.tmpl)].push_back(rate);
      all.push_back(rate);
      per_language += fmt::format("{}\t{}\t{}\n", a.language, TemplateName(r.tmpl), Num(rate));
    }
  }
  std::string tsv = "template\tn\trate\tci_low\tci_high\n";
  std::string txt = fmt::format("{:<5} {:>4} {:>8}  {}\n", "", "n", "rate", "95% CI");
  auto row = [&](const std::string& name, const std::vector<double>& v) {
    if (v.empty()) {
      tsv += name + "\t0\tNA\tNA\tNA\n";
      txt += fmt::format("{:<5} {:>4} {:>8}\n", name, 0, "NA");
      return;
    }
    const MacroStats m = MacroSummary(v);
    tsv += fmt::format("{}\t{}\t{}\t{}\t{}\n", name, m.n, Num(m.mean), Num(m.ci_low),
                       Num(m.ci_high));
    txt += fmt::format("{:<5} {:>4} {:>8.3f}  [{}, {}]\n", name, m.n, m.mean,
                       m.ci_low ? fmt::format("{:.3f}", *m.ci_low) : "NA",
                       m.ci_high ? fmt::format("{:.3f}", *m.ci_high) : "NA");
  };
  for (Template t : kTemplates) row(std::string(TemplateName(t)), by_template[static_cast<int>(t)]);
  row("all", all);
  WriteFile(Path(dir, "reversed.tsv"), tsv);
  WriteFile(Path(dir, "reversed.txt"), txt);
  WriteFile(Path(dir, "reversed.languages.tsv"), per_language);
}

void WriteAblationReport(std::span<const LanguageAnalysis> languages, const std::string& dir) {
  std::vector<LanguageScores> scores;
  EvalOptions eval;
  for (const LanguageAnalysis& a : languages) {
    if (!scores.empty() && !(a.eval == eval)) {
      throw InputError("languages disagree on regression options; ablation needs one setting");
    }
    scores.push_back(a.scores);
    eval = a.eval;
  }
  const AblationTable table = Ablate(scores, eval);

  std::string tsv =
      "predictor\tacc_AAN\tacc_ANA\tacc_NAA\tacc_all\tpos_AAN\tpos_ANA\tpos_NAA\tpos_all\n";
  std::string txt = fmt::format("{:<12} {:>7} {:>7} {:>7} {:>7}   {:>7} {:>7} {:>7} {:>7}\n",
                                "", "AAN", "ANA", "NAA", "all", "AAN", "ANA", "NAA", "all");
  auto cell = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.3f}", *v) : std::string("NA");
  };
  for (const AblationRow& r : table.rows) {
    tsv += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", PredictorName(r.predictor),
                       Num(r.by_template[0].accuracy), Num(r.by_template[1].accuracy),
                       Num(r.by_template[2].accuracy), Num(r.all.accuracy),
                       Num(r.by_template[0].positive_fraction),
                       Num(r.by_template[1].positive_fraction),
                       Num(r.by_template[2].positive_fraction), Num(r.all.positive_fraction));
    txt += fmt::format("{:<12} {:>7} {:>7} {:>7} {:>7}   {:>7} {:>7} {:>7} {:>7}\n",
                       PredictorName(r.predictor), cell(r.by_template[0].accuracy),
                       cell(r.by_template[1].accuracy), cell(r.by_template[2].accuracy),
                       cell(r.all.accuracy), cell(r.by_template[0].positive_fraction),
                       cell(r.by_template[1].positive_fraction),
                       cell(r.by_template[2].positive_fraction), cell(r.all.positive_fraction));
  }
  std::string cells = "language\ttemplate\tpredictor\tok\tbeta0\tbeta1\tp\ttoken_acc\ttype_acc\tnote\n";
  for (const CellResult& c : table.cells) {
    cells += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", c.language, TemplateName(c.tmpl),
                         PredictorName(c.predictor), c.ok ? 1 : 0, Num(c.fit.beta0),
                         Num(c.fit.beta1), PValue(c.fit.p1),
                         c.ok ? Num(c.accuracy.token) : "NA", c.ok ? Num(c.accuracy.type) : "NA",
                         c.note.empty() ? "-" : c.note);
  }
  WriteFile(Path(dir, "ablation.tsv"), tsv);
  WriteFile(Path(dir, "ablation.txt"), txt);
  WriteFile(Path(dir, "ablation.cells.tsv"), cells);
}

}  // namespace adjorder
