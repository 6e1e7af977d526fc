#pragma once

// Relative word frequencies per domain and side-by-side comparison.

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zss/corpus.hpp"

namespace zss {

enum class ClassFilter { kSuggestion, kNonSuggestion, kAll };
ClassFilter parse_class_filter(std::string_view text);

/// Lowercases ASCII letters and splits on maximal runs of characters that
/// are not ASCII letters or digits. Bytes >= 0x80 count as word characters
/// so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct FrequencyProfile {
  std::string domain;
  std::size_t total_tokens = 0;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, double> rel_freq;  // counts / total_tokens
};

/// Profile over the union of `corpora`, restricted by gold class. Tokens in
/// `stopwords` are dropped before counting. Throws Error(kContract) when no
/// token survives the filters.
FrequencyProfile profile(std::span<const LabeledCorpus> corpora, ClassFilter filter, std::string domain,
                         const std::set<std::string>& stopwords = {});

struct ComparisonRow {
  std::string token;
  double rel_freq_a = 0.0;
  double rel_freq_b = 0.0;
  double log_ratio = 0.0;  // ln((a + eps) / (b + eps)), eps = 1 / (total_a + total_b)

  bool operator==(const ComparisonRow&) const = default;
};

/// Union of each profile's top_k tokens (by rel_freq, ties by token), sorted
/// by |log_ratio| descending, then token.
std::vector<ComparisonRow> compare(const FrequencyProfile& a, const FrequencyProfile& b, std::size_t top_k);

/// `token,rel_freq_a,rel_freq_b,log_ratio`.
std::string comparison_csv(std::span<const ComparisonRow> rows);

}  // namespace zss
