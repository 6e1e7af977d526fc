#include "zss/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss {

EvalResult eval_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  EvalResult r{tp, fp, fn, tn, 0.0, 0.0};
  const std::size_t denom = 2 * tp + fp + fn;
  r.f1 = denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
  const std::size_t total = r.total();
  r.accuracy = total == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(total);
  return r;
}

EvalResult evaluate_labels(std::span<const BinaryClass> predicted, std::span<const BinaryClass> gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorKind::kContract, "evaluate: " + std::to_string(predicted.size()) + " predictions for " +
                                          std::to_string(gold.size()) + " gold labels");
  }
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predicted[i] == BinaryClass::kSuggestion;
    const bool g = gold[i] == BinaryClass::kSuggestion;
    tp += p && g;
    fp += p && !g;
    fn += !p && g;
    tn += !p && !g;
  }
  return eval_from_counts(tp, fp, fn, tn);
}

EvalResult evaluate(std::span<const Prediction> predictions, const LabeledCorpus& corpus) {
  const auto fail = [](const std::string& what) { return Error(ErrorKind::kContract, "evaluate: " + what); };
  if (predictions.size() != corpus.size()) {
    throw fail(std::to_string(predictions.size()) + " predictions for " + std::to_string(corpus.size()) +
               " sentences");
  }
  std::unordered_map<std::string_view, std::size_t> by_id;
  by_id.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!by_id.emplace(predictions[i].sentence_id, i).second) {
      throw fail("duplicate prediction for sentence '" + predictions[i].sentence_id + "'");
    }
  }
  std::vector<BinaryClass> predicted(corpus.size());
  std::vector<BinaryClass> gold(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto it = by_id.find(corpus.items[i].sentence_id);
    if (it == by_id.end()) throw fail("no prediction for sentence '" + corpus.items[i].sentence_id + "'");
    predicted[i] = predictions[it->second].predicted;
    gold[i] = corpus.items[i].gold;
  }
  return evaluate_labels(predicted, gold);
}

std::string eval_to_json(const EvalResult& r) {
  nlohmann::json doc = {{"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn}, {"tn", r.tn},
                        {"f1", r.f1}, {"accuracy", r.accuracy}};
  return doc.dump(2) + "\n";
}

EvalResult eval_from_json(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    return eval_from_counts(doc.at("tp").get<std::size_t>(), doc.at("fp").get<std::size_t>(),
                            doc.at("fn").get<std::size_t>(), doc.at("tn").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("eval document: ") + e.what());
  }
}

std::string eval_table(const EvalResult& r) {
  std::ostringstream os;
  const auto row = [&](const char* name, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s %10s\n", name, value.c_str());
    os << buf;
  };
  row("F1", format_fixed(r.f1, 4));
  row("Accuracy", format_fixed(r.accuracy, 4));
  row("TP", std::to_string(r.tp));
  row("FP", std::to_string(r.fp));
  row("FN", std::to_string(r.fn));
  row("TN", std::to_string(r.tn));
  row("Total", std::to_string(r.total()));
  return os.str();
}

namespace {

double trial_f1(const std::vector<BinaryClass>& gold, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 gen(seq);
  std::size_t tp = 0, fp = 0, fn = 0;
  std::uint64_t bits = 0;
  int left = 0;
  for (BinaryClass g : gold) {
    if (left == 0) {
      bits = gen();
      left = 64;
    }
    const bool p = bits & 1u;
    bits >>= 1;
    --left;
    const bool pos = g == BinaryClass::kSuggestion;
    tp += p && pos;
    fp += p && !pos;
    fn += !p && pos;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

}  // namespace

BaselineResult random_baseline(const LabeledCorpus& corpus, std::size_t trials, std::uint64_t seed,
                               std::size_t jobs) {
  if (trials == 0) throw Error(ErrorKind::kContract, "random_baseline: trials must be >= 1");
  std::vector<BinaryClass> gold;
  gold.reserve(corpus.size());
  for (const auto& item : corpus.items) gold.push_back(item.gold);

  std::vector<double> f1(trials);
  const auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) f1[t] = trial_f1(gold, seed, t);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  if (jobs == 1) {
    run(0, trials);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (trials + jobs - 1) / jobs;
    for (std::size_t b = 0; b < trials; b += chunk) workers.emplace_back(run, b, std::min(trials, b + chunk));
  }

  // Summation in trial order keeps the result independent of scheduling.
  double sum = 0.0;
  for (double v : f1) sum += v;
  const double mean = sum / static_cast<double>(trials);
  double sq = 0.0;
  for (double v : f1) sq += (v - mean) * (v - mean);
  const double sd = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;
  return BaselineResult{mean, sd, trials, seed};
}

std::string baseline_to_json(const BaselineResult& r) {
  nlohmann::json doc = {{"mean_f1", r.mean_f1}, {"std_f1", r.std_f1}, {"trials", r.trials}, {"seed", r.seed}};
  return doc.dump(2) + "\n";
}

}  // namespace zss
