#pragma once

// Exhaustive search over subsets of candidate labels mapped to the
// suggestion class, ranked by suggestion-class F1 on a labelled split.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zss/classifier.hpp"
#include "zss/corpus.hpp"
#include "zss/evaluation.hpp"
#include "zss/label_space.hpp"

namespace zss {

struct SearchSpec {
  std::vector<std::string> candidates;  // label ids; order defines lexicographic order
  std::size_t k_min = 4;
  std::size_t k_max = 8;
  DecisionKind mode = DecisionKind::kMapping;  // kMapping or kCompetition
  std::size_t top_n = 3;
};

/// Defaults: the eight message-type candidates, sizes 4..8, mapping mode, top 3.
SearchSpec default_search_spec();

/// Throws Error(kUsage) unless 1 <= k_min <= k_max <= |candidates|, the
/// candidates are distinct and the mode is mapping or competition.
void validate(const SearchSpec& spec);

/// Visits index subsets of {0..n-1}: ascending size, lexicographic within a size.
class SubsetEnumerator {
 public:
  SubsetEnumerator(std::size_t n, std::size_t k_min, std::size_t k_max);
  /// Writes the next subset into `out`; false once exhausted.
  bool next(std::vector<std::size_t>& out);

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t k_max_;
  std::vector<std::size_t> current_;
  bool started_ = false;
};

std::vector<std::vector<std::string>> enumerate_subsets(const std::vector<std::string>& candidates,
                                                        std::size_t k_min, std::size_t k_max);

/// Sum of C(n, k) for k in [k_min, k_max].
std::size_t subset_count(std::size_t n, std::size_t k_min, std::size_t k_max);

struct SubsetResult {
  std::vector<std::string> subset;  // candidate order
  EvalResult eval;

  bool operator==(const SubsetResult&) const = default;
};

/// Every subset of the spec evaluated on `corpus`, sorted by F1 descending,
/// then accuracy descending, then candidate-index order of the subset.
///
/// Mapping mode takes one argmax over all deferred labels per sentence and
/// then only checks membership per subset. Competition mode re-runs the
/// argmax over (subset + negative label) for every subset. `scores` must
/// hold one entry per corpus item covering every label the mode consults;
/// otherwise a CacheMissError naming the sentence indices is thrown before
/// any subset is evaluated.
std::vector<SubsetResult> search(const SearchSpec& spec, const LabeledCorpus& corpus, const LabelSpace& space,
                                 std::span<const PremiseScores> scores, std::size_t jobs = 1);

/// Best `top_n` results of each subset size, keyed by size, keeping the
/// ranking order of `ranked`.
std::map<std::size_t, std::vector<SubsetResult>> top_per_size(std::span<const SubsetResult> ranked,
                                                              std::size_t top_n);

enum class ReportFormat { kTable, kCsv, kJson };
ReportFormat parse_report_format(std::string_view text);

/// table: per-size top_n rows "Size | Labels subset | F1 | Accuracy" then
///        the global top_n; metrics with 4 decimals.
/// csv:   header plus one row per result, in ranking order.
/// json:  {"results": [...ranked...], "top_per_size": {...}}.
/// Throws Error(kContract) for an empty result list.
std::string report(std::span<const SubsetResult> ranked, ReportFormat format, std::size_t top_n = 3);

/// Reads back the "results" array of a json report.
std::vector<SubsetResult> parse_report_json(std::string_view document);

}  // namespace zss
