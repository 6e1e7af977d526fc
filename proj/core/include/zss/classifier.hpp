#pragma once

// Decision rules that turn per-hypothesis entailment probabilities into a
// binary suggestion / non-suggestion prediction.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zss/corpus.hpp"
#include "zss/entailment.hpp"
#include "zss/label_space.hpp"
#include "zss/scorer.hpp"

namespace zss {

struct PremiseScores {
  std::string premise;
  /// label_id -> entailment probability, in label-space order.
  std::vector<std::pair<std::string, double>> by_label;

  std::optional<double> get(std::string_view label_id) const;
};

struct Prediction {
  std::string sentence_id;
  std::string premise;
  BinaryClass predicted = BinaryClass::kNonSuggestion;
  std::string winning_label;
  double winning_score = 0.0;

  bool operator==(const Prediction&) const = default;
};

enum class DecisionKind {
  kBinaryArgmax,    // positive vs negative hypothesis
  kDefsVsNegative,  // aggregate of definition labels vs negative hypothesis
  kCompetition,     // argmax over suggestion_set plus the negative label
  kMapping,         // argmax over every deferred label, then set membership
};

enum class Aggregation { kMax, kMean };

const char* to_string(DecisionKind kind);
DecisionKind parse_decision_kind(std::string_view text);
const char* to_string(Aggregation a);
Aggregation parse_aggregation(std::string_view text);

struct DecisionMode {
  DecisionKind kind = DecisionKind::kBinaryArgmax;
  std::vector<std::string> suggestion_set;  // competition / mapping only
  Aggregation aggregation = Aggregation::kMax;  // defs_vs_negative only
};

/// Throws Error(kContract) when `mode` does not fit `space` (empty or
/// non-deferred suggestion_set, missing negative label, ...).
void validate(const DecisionMode& mode, const LabelSpace& space);

/// Argmax ties go to the label that comes first in the space; a tie in
/// binary_argmax or defs_vs_negative goes to non_suggestion. Throws
/// Error(kContract) when a consulted label has no score.
Prediction classify(const PremiseScores& scores, const LabelSpace& space, const DecisionMode& mode);

/// Scores every (sentence, hypothesis) pair of the space, requesting each
/// distinct pair once, and returns probabilities in corpus order.
/// Cache misses are re-raised naming the affected sentence indices.
std::vector<PremiseScores> score_corpus(const LabeledCorpus& corpus, const LabelSpace& space,
                                        Scorer& scorer, ProbMode prob_mode = ProbMode::kDropNeutral);

std::vector<Prediction> classify_corpus(const LabeledCorpus& corpus, const LabelSpace& space,
                                        const DecisionMode& mode, Scorer& scorer,
                                        ProbMode prob_mode = ProbMode::kDropNeutral);

/// Same as above for already computed probabilities (one entry per item).
std::vector<Prediction> classify_corpus(const LabeledCorpus& corpus, const LabelSpace& space,
                                        const DecisionMode& mode, std::span<const PremiseScores> scores);

/// `sentence_id,predicted,winning_label,winning_score`, score with 6 decimals.
std::string predictions_to_csv(std::span<const Prediction> predictions);
/// Reads the CSV above back. Premises are not stored there and stay empty.
std::vector<Prediction> predictions_from_csv(std::istream& in, const std::string& source = "<predictions>");
std::string predictions_to_json(std::span<const Prediction> predictions);

}  // namespace zss
