#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "zss/classifier.hpp"
#include "zss/corpus.hpp"

namespace zss {

/// Confusion counts for the suggestion class plus derived metrics.
/// f1 = 2tp / (2tp + fp + fn), defined as 0 when the denominator is 0.
struct EvalResult {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double f1 = 0.0;
  double accuracy = 0.0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const EvalResult&) const = default;
};

EvalResult eval_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

/// Pairs predictions with corpus items by sentence id (order free).
/// Throws Error(kContract) on any unmatched, duplicate or missing id.
EvalResult evaluate(std::span<const Prediction> predictions, const LabeledCorpus& corpus);

/// Element-wise comparison of aligned predicted/gold labels.
EvalResult evaluate_labels(std::span<const BinaryClass> predicted, std::span<const BinaryClass> gold);

std::string eval_to_json(const EvalResult& result);
EvalResult eval_from_json(std::string_view document);
/// Aligned two-column table for terminals.
std::string eval_table(const EvalResult& result);

struct BaselineResult {
  double mean_f1 = 0.0;
  double std_f1 = 0.0;  // sample standard deviation; 0 for a single trial
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  bool operator==(const BaselineResult&) const = default;
};

/// Per trial, every sentence is labelled suggestion with probability 1/2;
/// returns the mean and spread of the per-trial suggestion-class F1. Trial t
/// draws from its own generator seeded by (seed, t), so the result does not
/// depend on `jobs`. Throws Error(kContract) when trials == 0.
BaselineResult random_baseline(const LabeledCorpus& corpus, std::size_t trials, std::uint64_t seed,
                               std::size_t jobs = 1);

std::string baseline_to_json(const BaselineResult& result);

}  // namespace zss
