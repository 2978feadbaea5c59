// Regression observations, logistic fits, accuracies and the summary
// statistics built on them.

#ifndef ADJORDER_MODEL_EVAL_H_
#define ADJORDER_MODEL_EVAL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adjorder/distribution.h"
#include "adjorder/extraction.h"
#include "adjorder/infogain.h"

namespace adjorder {

// A triple with its adjective order abstracted away: alpha1 < alpha2 by
// codepoint order. The permutation placing alpha1 in the first adjective slot
// is pi_1.
struct ObservationKey {
  Template tmpl = Template::kAAN;
  std::string noun;
  std::string alpha1;
  std::string alpha2;

  friend auto operator<=>(const ObservationKey&, const ObservationKey&) = default;
};

struct CanonicalTriple {
  ObservationKey key;
  bool pi1_attested = false;
};

// Requires adj_first != adj_second; throws std::invalid_argument otherwise.
CanonicalTriple Canonicalize(const Triple& triple);

enum class Predictor { kKlPositive, kKlNegative, kIg };

inline constexpr Predictor kPredictors[] = {Predictor::kKlPositive, Predictor::kKlNegative,
                                            Predictor::kIg};

std::string_view PredictorName(Predictor p);
double PredictorValue(const IgBundle& bundle, Predictor p);

struct Observation {
  ObservationKey key;
  double x = 0.0;  // predictor(alpha1) - predictor(alpha2)
  int y = 0;       // 1 iff pi_1 is the attested order
  std::uint64_t weight = 1;
};

struct ObservationSet {
  std::vector<Observation> observations;
  std::size_t skipped_types = 0;
  std::uint64_t skipped_tokens = 0;
};

// Unusable scores are skipped and counted. Predictor values are multiplied by
// `unit_scale` before differencing.
ObservationSet MakeObservations(std::span<const TripleScore> scores, Predictor predictor,
                                double unit_scale = 1.0);

enum class TrainWeighting { kToken, kType };

std::string_view TrainWeightingName(TrainWeighting w);
bool ParseTrainWeighting(std::string_view name, TrainWeighting* w);

struct LogisticOptions {
  double ridge = 1e-9;
  int max_iterations = 100;
  double gradient_tolerance = 1e-10;
  // Coefficient magnitude at which a separated fit is stopped and reported.
  double coefficient_cap = 50.0;
  TrainWeighting weighting = TrainWeighting::kToken;

  friend bool operator==(const LogisticOptions&, const LogisticOptions&) = default;
};

struct LogisticFit {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double se0 = 0.0;
  double se1 = 0.0;
  double p0 = 1.0;  // two-sided Wald
  double p1 = 1.0;
  bool converged = false;
  int iterations = 0;
  bool separation_detected = false;
  double log_likelihood = 0.0;
  double gradient_norm = 0.0;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Penalized maximum likelihood for logit p = beta0 + beta1 x by Newton's
// method with step halving. Throws FitError on fewer than two observations,
// a single label, or failure to converge.
LogisticFit FitLogistic(std::span<const Observation> observations,
                        const LogisticOptions& options = {});

struct Accuracy {
  double token = 0.0;
  double type = 0.0;
  std::uint64_t tokens = 0;
  std::size_t types = 0;
};

// pi_1 is predicted iff beta0 + beta1 x >= 0. Throws std::invalid_argument on
// an empty observation list.
Accuracy Evaluate(const LogisticFit& fit, std::span<const Observation> observations);

struct MacroStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> ci_low;  // absent for n < 2
  std::optional<double> ci_high;
};

// Mean with a two-sided 95% Student-t interval. Throws std::invalid_argument
// on an empty list.
MacroStats MacroSummary(std::span<const double> values);

// Fraction of unordered adjective pairs (noun ignored) attested in both
// relative orders, over pairs attested at least once. Throws
// std::invalid_argument on an empty list.
double ReversedPairRate(std::span<const Triple> triples);

struct GreedyResult {
  std::vector<std::string> order;
  std::vector<double> gains;  // gain of each chosen lemma at its step
  bool degenerate = false;
};

// ID3-style ordering: take the lemma of maximal gain on the current
// distribution (ties to the lexicographically smaller), keep the positive
// side, repeat. Once the surviving distribution no longer contains the chosen
// lemma, the remaining lemmas follow in lexicographic order and the result is
// flagged degenerate.
GreedyResult GreedyOrder(const Distribution& dist, std::vector<std::string> lemmas,
                         WeightMode mode = WeightMode::kSupportCount);

struct EvalOptions {
  LogisticOptions logistic;
  double unit_scale = 1.0;

  friend bool operator==(const EvalOptions&, const EvalOptions&) = default;
};

// One (language, template, predictor) fit on training scores and evaluation
// on held-out scores.
struct CellResult {
  std::string language;
  Template tmpl = Template::kAAN;
  Predictor predictor = Predictor::kIg;
  bool ok = false;
  std::string note;  // reason when !ok
  LogisticFit fit;
  Accuracy accuracy;
  std::size_t train_types = 0;
  std::uint64_t train_tokens = 0;
  std::uint64_t skipped_tokens = 0;
};

CellResult EvaluateCell(const std::string& language, Template tmpl, Predictor predictor,
                        std::span<const TripleScore> train, std::span<const TripleScore> test,
                        const EvalOptions& options);

struct LanguageScores {
  std::string language;
  std::vector<Template> templates;  // cells to evaluate
  std::vector<TripleScore> train;
  std::vector<TripleScore> test;
};

struct AblationEntry {
  std::optional<double> accuracy;           // macro token accuracy
  std::optional<double> positive_fraction;  // share of cells with beta1 > 0
  std::size_t cells = 0;
};

struct AblationRow {
  Predictor predictor = Predictor::kIg;
  AblationEntry by_template[3];  // indexed by Template
  AblationEntry all;
};

struct AblationTable {
  std::vector<AblationRow> rows;     // one per predictor, kPredictors order
  std::vector<CellResult> cells;     // every fit attempted
};

AblationTable Ablate(std::span<const LanguageScores> languages, const EvalOptions& options);

}  // namespace adjorder

#endif  // ADJORDER_MODEL_EVAL_H_
