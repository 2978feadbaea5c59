// adjorder: corpus pipeline for predicting adjective order from information
// gain.
//
//   adjorder lexicon       --config run.cfg
//   adjorder extract       --config run.cfg
//   adjorder analyze       --config en.cfg [--config fr.cfg ... --summary-dir DIR]
//   adjorder ablate        --config en.cfg [...] [--summary-dir DIR]
//   adjorder reversed-rate --config en.cfg [...] [--summary-dir DIR]
//   adjorder greedy        --config run.cfg --lemmas big,blue,box
//
// Every configuration key can also be given as --<key> and overrides the
// config files. Exit codes: 0 success, 2 input or configuration error, 3 no
// analyzable data.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <map>

#include "adjorder/pipeline.h"

namespace {

using namespace adjorder;

constexpr int kExitInput = 2;
constexpr int kExitNoData = 3;

struct Invocation {
  std::vector<std::string> configs;
  std::map<std::string, std::vector<std::string>> overrides;
  std::string summary_dir;
  std::string lemmas;
  std::string noun;
};

void AddConfigOptions(CLI::App* sub, Invocation* inv, bool many_configs) {
  auto* opt = sub->add_option("--config", inv->configs,
                              many_configs ? "Run configuration file (repeat for several languages)"
                                           : "Run configuration file");
  if (!many_configs) opt->expected(0, 1);
  for (const ConfigKey& key : ConfigKeys()) {
    auto* o = sub->add_option(std::string("--") + key.name, inv->overrides[key.name], key.help);
    if (!key.is_list) o->expected(1);
  }
}

std::vector<RunConfig> ResolveConfigs(CLI::App* sub, const Invocation& inv) {
  std::vector<RunConfig> configs;
  if (inv.configs.empty()) {
    configs.emplace_back();
  } else {
    for (const std::string& path : inv.configs) configs.push_back(LoadConfig(path));
  }
  for (RunConfig& c : configs) {
    for (const ConfigKey& key : ConfigKeys()) {
      if (sub->count(std::string("--") + key.name) > 0) {
        SetConfigValue(c, key.name, inv.overrides.at(key.name));
      }
    }
  }
  return configs;
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::string SummaryDir(const Invocation& inv, const std::vector<RunConfig>& configs) {
  if (!inv.summary_dir.empty()) {
    std::filesystem::create_directories(inv.summary_dir);
    return inv.summary_dir;
  }
  if (configs.size() > 1) throw InputError("--summary-dir is required with several configs");
  return configs.front().output_dir;
}

std::vector<LanguageAnalysis> AnalyzeAll(const std::vector<RunConfig>& configs) {
  std::vector<LanguageAnalysis> out;
  for (const RunConfig& c : configs) out.push_back(AnalyzeLanguage(c, std::cerr));
  return out;
}

int Run(int argc, char** argv) {
  CLI::App app{"Adjective order prediction from information gain over corpus feature vectors"};
  app.require_subcommand(1);
  Invocation inv;

  auto* lexicon = app.add_subcommand("lexicon", "Build ADJ/NOUN lemma whitelists");
  AddConfigOptions(lexicon, &inv, false);
  auto* extract = app.add_subcommand("extract", "Extract NP and triple tables");
  AddConfigOptions(extract, &inv, false);
  auto* analyze = app.add_subcommand("analyze", "Score, fit and evaluate; write all reports");
  AddConfigOptions(analyze, &inv, true);
  analyze->add_option("--summary-dir", inv.summary_dir, "Directory for cross-language reports");
  auto* ablate = app.add_subcommand("ablate", "Compare kl_positive, kl_negative and ig predictors");
  AddConfigOptions(ablate, &inv, true);
  ablate->add_option("--summary-dir", inv.summary_dir, "Directory for the ablation tables");
  auto* reversed = app.add_subcommand("reversed-rate", "Rate of adjective pairs seen in both orders");
  AddConfigOptions(reversed, &inv, true);
  reversed->add_option("--summary-dir", inv.summary_dir, "Directory for the rate tables");
  auto* greedy = app.add_subcommand("greedy", "Greedy information-gain order of a bag of lemmas");
  AddConfigOptions(greedy, &inv, false);
  greedy->add_option("--lemmas", inv.lemmas, "Comma-separated lemmas")->required();
  greedy->add_option("--noun", inv.noun, "Restrict to feature vectors containing this noun first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    std::vector<RunConfig> configs = ResolveConfigs(sub, inv);
    if (sub == lexicon) {
      RunLexicon(configs.front(), std::cerr);
    } else if (sub == extract) {
      RunExtract(configs.front(), std::cerr);
    } else if (sub == analyze) {
      std::vector<LanguageAnalysis> all;
      for (const RunConfig& c : configs) {
        try {
          all.push_back(RunAnalyze(c, std::cerr));
        } catch (const NoDataError& e) {
          std::cerr << "warning: " << e.what() << "\n";
        }
      }
      if (all.empty()) throw NoDataError("no language produced an analyzable template");
      if (configs.size() > 1 || !inv.summary_dir.empty()) {
        const std::string dir = SummaryDir(inv, configs);
        WriteResultReports(all, dir);
        WriteReversedReport(all, dir);
        WriteAblationReport(all, dir);
      }
    } else if (sub == ablate || sub == reversed) {
      std::vector<LanguageAnalysis> all = AnalyzeAll(configs);
      const std::string dir = SummaryDir(inv, configs);
      if (sub == ablate) {
        WriteAblationReport(all, dir);
        std::cout << ReadFile(dir + "/ablation.txt");
      } else {
        WriteReversedReport(all, dir);
        std::cout << ReadFile(dir + "/reversed.txt");
      }
    } else if (sub == greedy) {
      const RunConfig& c = configs.front();
      ValidateConfig(c, false);
      Distribution dist = LoadTrainingDistribution(c);
      if (!inv.noun.empty()) {
        if (dist.empty()) throw NoDataError("training distribution is empty");
        dist = PartitionOn(dist, inv.noun, c.weight_mode).positive;
      }
      if (dist.empty()) throw NoDataError("no feature vectors to order over");
      std::vector<std::string> lemmas;
      for (const std::string& l : SplitCommas(inv.lemmas)) lemmas.push_back(Normalize(l));
      const GreedyResult r = GreedyOrder(dist, lemmas, c.weight_mode);
      for (std::size_t i = 0; i < r.order.size(); ++i) {
        if (i < r.gains.size()) {
          std::cout << fmt::format("{}\t{:.12f}\n", r.order[i], r.gains[i] * c.UnitScale());
        } else {
          std::cout << r.order[i] << "\tNA\n";
        }
      }
      if (r.degenerate) std::cout << "# degenerate: surviving distribution emptied\n";
    }
  } catch (const NoDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoData;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
