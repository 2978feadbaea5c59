#include "adjorder/model_eval.h"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace adjorder {

CanonicalTriple Canonicalize(const Triple& triple) {
  if (triple.adj_first == triple.adj_second) {
    throw std::invalid_argument("triple adjectives share a lemma: " + triple.adj_first);
  }
  CanonicalTriple c;
  c.key.tmpl = triple.tmpl;
  c.key.noun = triple.noun;
  c.pi1_attested = triple.adj_first < triple.adj_second;
  c.key.alpha1 = c.pi1_attested ? triple.adj_first : triple.adj_second;
  c.key.alpha2 = c.pi1_attested ? triple.adj_second : triple.adj_first;
  return c;
}

std::string_view PredictorName(Predictor p) {
  switch (p) {
    case Predictor::kKlPositive:
      return "kl_positive";
    case Predictor::kKlNegative:
      return "kl_negative";
    case Predictor::kIg:
      return "ig";
  }
  return "?";
}

double PredictorValue(const IgBundle& bundle, Predictor p) {
  switch (p) {
    case Predictor::kKlPositive:
      return bundle.kl_positive;
    case Predictor::kKlNegative:
      return bundle.kl_negative;
    case Predictor::kIg:
      return bundle.ig;
  }
  return 0.0;
}

ObservationSet MakeObservations(std::span<const TripleScore> scores, Predictor predictor,
                                double unit_scale) {
  ObservationSet set;
  for (const TripleScore& s : scores) {
    if (!s.usable) {
      ++set.skipped_types;
      set.skipped_tokens += s.triple.count;
      continue;
    }
    CanonicalTriple c = Canonicalize(s.triple);
    const IgBundle& a1 = c.pi1_attested ? s.first : s.second;
    const IgBundle& a2 = c.pi1_attested ? s.second : s.first;
    Observation o;
    o.key = std::move(c.key);
    o.x = PredictorValue(a1, predictor) * unit_scale - PredictorValue(a2, predictor) * unit_scale;
    o.y = c.pi1_attested ? 1 : 0;
    o.weight = s.triple.count;
    set.observations.push_back(std::move(o));
  }
  return set;
}

std::string_view TrainWeightingName(TrainWeighting w) {
  return w == TrainWeighting::kToken ? "token" : "type";
}

bool ParseTrainWeighting(std::string_view name, TrainWeighting* w) {
  if (name == "token") {
    *w = TrainWeighting::kToken;
  } else if (name == "type") {
    *w = TrainWeighting::kType;
  } else {
    return false;
  }
  return true;
}

namespace {

// log(1 + e^x) without overflow.
long double Softplus(long double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

long double Sigmoid(long double x) {
  if (x >= 0) return 1.0L / (1.0L + std::exp(-x));
  const long double e = std::exp(x);
  return e / (1.0L + e);
}

struct Newton {
  long double ll = 0, g0 = 0, g1 = 0;
  long double i00 = 0, i01 = 0, i11 = 0;  // observed information
};

Newton Evaluate(std::span<const Observation> obs, const LogisticOptions& opt, double b0,
                double b1) {
  Newton n;
  for (const Observation& o : obs) {
    const long double w =
        opt.weighting == TrainWeighting::kToken ? static_cast<long double>(o.weight) : 1.0L;
    const long double x = o.x;
    const long double eta = b0 + b1 * x;
    const long double mu = Sigmoid(eta);
    const long double r = o.y - mu;
    const long double v = mu * (1.0L - mu);
    n.ll += w * (o.y * eta - Softplus(eta));
    n.g0 += w * r;
    n.g1 += w * r * x;
    n.i00 += w * v;
    n.i01 += w * v * x;
    n.i11 += w * v * x * x;
  }
  const long double lambda = opt.ridge;
  n.ll -= 0.5L * lambda * (static_cast<long double>(b0) * b0 + static_cast<long double>(b1) * b1);
  n.g0 -= lambda * b0;
  n.g1 -= lambda * b1;
  n.i00 += lambda;
  n.i11 += lambda;
  return n;
}

// Quasi-complete or complete separation of the labels along x.
bool Separated(std::span<const Observation> obs) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double min0 = kInf, max0 = -kInf, min1 = kInf, max1 = -kInf;
  for (const Observation& o : obs) {
    if (o.y == 1) {
      min1 = std::min(min1, o.x);
      max1 = std::max(max1, o.x);
    } else {
      min0 = std::min(min0, o.x);
      max0 = std::max(max0, o.x);
    }
  }
  const bool spread = std::min(min0, min1) < std::max(max0, max1);
  return spread && (max0 <= min1 || max1 <= min0);
}

double WaldP(double beta, double se) {
  if (!(se > 0) || !std::isfinite(se)) return 1.0;
  return std::erfc(std::fabs(beta / se) / std::sqrt(2.0));
}

}  // namespace

LogisticFit FitLogistic(std::span<const Observation> observations,
                        const LogisticOptions& options) {
  if (observations.size() < 2) throw FitError("need at least two observations");
  bool has0 = false, has1 = false;
  for (const Observation& o : observations) {
    if (!std::isfinite(o.x)) throw FitError("non-finite predictor value");
    (o.y == 1 ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw FitError("degenerate template: all observations share one label");
  const bool separated = Separated(observations);

  LogisticFit fit;
  double b0 = 0.0, b1 = 0.0;
  Newton cur = Evaluate(observations, options, b0, b1);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    fit.iterations = iter;
    const double gnorm = static_cast<double>(std::hypot(cur.g0, cur.g1));
    if (gnorm <= options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    const long double det = cur.i00 * cur.i11 - cur.i01 * cur.i01;
    if (!(det > 0)) throw FitError("singular information matrix");
    long double d0 = (cur.i11 * cur.g0 - cur.i01 * cur.g1) / det;
    long double d1 = (cur.i00 * cur.g1 - cur.i01 * cur.g0) / det;
    Newton next;
    double n0 = b0, n1 = b1;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      n0 = static_cast<double>(b0 + d0);
      n1 = static_cast<double>(b1 + d1);
      next = Evaluate(observations, options, n0, n1);
      // Near the optimum ll stops resolving; fall back on the gradient.
      if (next.ll >= cur.ll || std::hypot(next.g0, next.g1) < gnorm) {
        moved = true;
        break;
      }
      d0 /= 2;
      d1 /= 2;
    }
    if (!moved || (n0 == b0 && n1 == b1)) {
      // No representable improvement: the iterate is the optimum to machine
      // precision.
      fit.converged = gnorm <= options.gradient_tolerance;
      if (!fit.converged && !separated) throw FitError("Newton iteration stalled before convergence");
      break;
    }
    b0 = n0;
    b1 = n1;
    cur = next;
    if (separated && std::max(std::fabs(b0), std::fabs(b1)) > options.coefficient_cap) break;
  }
  if (separated) {
    // The ridge keeps the optimum finite; report the direction at the cap.
    const double m = std::max(std::fabs(b0), std::fabs(b1));
    if (m > 0) {
      b0 *= options.coefficient_cap / m;
      b1 *= options.coefficient_cap / m;
    }
    cur = Evaluate(observations, options, b0, b1);
    fit.separation_detected = true;
  }
  if (!fit.converged && !fit.separation_detected) {
    // The last step may have landed on the optimum.
    if (std::hypot(cur.g0, cur.g1) <= options.gradient_tolerance) {
      fit.converged = true;
    } else {
      throw FitError("logistic fit did not converge in " +
                     std::to_string(options.max_iterations) + " iterations");
    }
  }
  fit.beta0 = b0;
  fit.beta1 = b1;
  fit.log_likelihood = static_cast<double>(cur.ll);
  fit.gradient_norm = static_cast<double>(std::hypot(cur.g0, cur.g1));
  const long double det = cur.i00 * cur.i11 - cur.i01 * cur.i01;
  if (det > 0) {
    fit.se0 = static_cast<double>(std::sqrt(cur.i11 / det));
    fit.se1 = static_cast<double>(std::sqrt(cur.i00 / det));
  } else {
    fit.se0 = fit.se1 = std::numeric_limits<double>::infinity();
  }
  fit.p0 = WaldP(fit.beta0, fit.se0);
  fit.p1 = WaldP(fit.beta1, fit.se1);
  return fit;
}

Accuracy Evaluate(const LogisticFit& fit, std::span<const Observation> observations) {
  if (observations.empty()) throw std::invalid_argument("no observations to evaluate");
  std::map<std::pair<ObservationKey, int>, bool> types;
  std::uint64_t correct_tokens = 0;
  Accuracy acc;
  for (const Observation& o : observations) {
    const bool predict_pi1 = fit.beta0 + fit.beta1 * o.x >= 0.0;
    const bool correct = predict_pi1 == (o.y == 1);
    acc.tokens += o.weight;
    if (correct) correct_tokens += o.weight;
    types.emplace(std::make_pair(o.key, o.y), correct);
  }
  std::size_t correct_types = 0;
  for (const auto& [key, correct] : types) correct_types += correct ? 1 : 0;
  acc.types = types.size();
  acc.token = static_cast<double>(correct_tokens) / static_cast<double>(acc.tokens);
  acc.type = static_cast<double>(correct_types) / static_cast<double>(acc.types);
  return acc;
}

MacroStats MacroSummary(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("macro summary of an empty list");
  MacroStats m;
  m.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(m.n);
  if (m.n < 2) return m;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  const double sd = std::sqrt(ss / static_cast<double>(m.n - 1));
  const boost::math::students_t dist(static_cast<double>(m.n - 1));
  const double t = boost::math::quantile(dist, 0.975);
  const double half = t * sd / std::sqrt(static_cast<double>(m.n));
  m.ci_low = m.mean - half;
  m.ci_high = m.mean + half;
  return m;
}

double ReversedPairRate(std::span<const Triple> triples) {
  if (triples.empty()) throw std::invalid_argument("reversed-pair rate of an empty set");
  // bit 0: smaller lemma first; bit 1: larger lemma first.
  std::map<std::pair<std::string, std::string>, unsigned> orders;
  for (const Triple& t : triples) {
    if (t.adj_first == t.adj_second) continue;
    const bool sorted = t.adj_first < t.adj_second;
    auto key = sorted ? std::make_pair(t.adj_first, t.adj_second)
                      : std::make_pair(t.adj_second, t.adj_first);
    orders[key] |= sorted ? 1u : 2u;
  }
  if (orders.empty()) return 0.0;
  std::size_t both = 0;
  for (const auto& [pair, mask] : orders) both += mask == 3u ? 1 : 0;
  return static_cast<double>(both) / static_cast<double>(orders.size());
}

GreedyResult GreedyOrder(const Distribution& dist, std::vector<std::string> lemmas,
                         WeightMode mode) {
  std::sort(lemmas.begin(), lemmas.end());
  lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
  GreedyResult result;
  Distribution current = dist;
  while (!lemmas.empty()) {
    if (current.empty()) {
      result.degenerate = true;
      result.order.insert(result.order.end(), lemmas.begin(), lemmas.end());
      break;
    }
    std::size_t best = 0;
    IgBundle best_gain = InformationGain(current, lemmas[0], mode);
    for (std::size_t i = 1; i < lemmas.size(); ++i) {
      IgBundle g = InformationGain(current, lemmas[i], mode);
      if (g.ig > best_gain.ig) {
        best = i;
        best_gain = g;
      }
    }
    result.order.push_back(lemmas[best]);
    result.gains.push_back(best_gain.ig);
    current = PartitionOn(current, lemmas[best], mode).positive;
    lemmas.erase(lemmas.begin() + static_cast<std::ptrdiff_t>(best));
    if (current.empty() && !lemmas.empty()) {
      result.degenerate = true;
      result.order.insert(result.order.end(), lemmas.begin(), lemmas.end());
      break;
    }
  }
  return result;
}

namespace {

std::vector<TripleScore> OfTemplate(std::span<const TripleScore> scores, Template tmpl) {
  std::vector<TripleScore> out;
  for (const TripleScore& s : scores) {
    if (s.triple.tmpl == tmpl) out.push_back(s);
  }
  return out;
}

}  // namespace

CellResult EvaluateCell(const std::string& language, Template tmpl, Predictor predictor,
                        std::span<const TripleScore> train, std::span<const TripleScore> test,
                        const EvalOptions& options) {
  CellResult cell;
  cell.language = language;
  cell.tmpl = tmpl;
  cell.predictor = predictor;
  const std::vector<TripleScore> train_t = OfTemplate(train, tmpl);
  const std::vector<TripleScore> test_t = OfTemplate(test, tmpl);
  ObservationSet train_obs = MakeObservations(train_t, predictor, options.unit_scale);
  ObservationSet test_obs = MakeObservations(test_t, predictor, options.unit_scale);
  cell.train_types = train_obs.observations.size();
  for (const Observation& o : train_obs.observations) cell.train_tokens += o.weight;
  cell.skipped_tokens = train_obs.skipped_tokens;
  try {
    cell.fit = FitLogistic(train_obs.observations, options.logistic);
  } catch (const FitError& e) {
    cell.note = std::string("fit failed: ") + e.what();
    return cell;
  }
  if (test_obs.observations.empty()) {
    cell.note = "no usable held-out triples";
    return cell;
  }
  cell.accuracy = Evaluate(cell.fit, test_obs.observations);
  cell.ok = true;
  return cell;
}

AblationTable Ablate(std::span<const LanguageScores> languages, const EvalOptions& options) {
  AblationTable table;
  for (Predictor p : kPredictors) {
    AblationRow row;
    row.predictor = p;
    std::vector<double> acc_by[3], pos_by[3], acc_all, pos_all;
    for (const LanguageScores& lang : languages) {
      for (Template tmpl : lang.templates) {
        CellResult cell = EvaluateCell(lang.language, tmpl, p, lang.train, lang.test, options);
        if (cell.ok) {
          const auto t = static_cast<std::size_t>(tmpl);
          acc_by[t].push_back(cell.accuracy.token);
          pos_by[t].push_back(cell.fit.beta1 > 0 ? 1.0 : 0.0);
          acc_all.push_back(cell.accuracy.token);
          pos_all.push_back(cell.fit.beta1 > 0 ? 1.0 : 0.0);
        }
        table.cells.push_back(std::move(cell));
      }
    }
    auto fill = [](AblationEntry* e, const std::vector<double>& acc,
                   const std::vector<double>& pos) {
      e->cells = acc.size();
      if (acc.empty()) return;
      e->accuracy = MacroSummary(acc).mean;
      e->positive_fraction = MacroSummary(pos).mean;
    };
    for (std::size_t t = 0; t < 3; ++t) fill(&row.by_template[t], acc_by[t], pos_by[t]);
    fill(&row.all, acc_all, pos_all);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace adjorder
