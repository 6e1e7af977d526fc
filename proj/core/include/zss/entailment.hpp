#pragma once

#include <string>
#include <string_view>

namespace zss {

inline constexpr std::string_view kDefaultModelId = "facebook/bart-large-mnli";

/// Raw 3-way NLI logits, always in (entailment, neutral, contradiction) order.
struct Logits {
  double entailment = 0.0;
  double neutral = 0.0;
  double contradiction = 0.0;

  bool operator==(const Logits&) const = default;
};

struct ScoreRecord {
  std::string model_id;
  std::string premise;
  std::string hypothesis;
  Logits logits;

  bool operator==(const ScoreRecord&) const = default;
};

/// True when all three logits are finite and model_id is non-empty.
bool is_complete(const ScoreRecord& record);

/// SHA-256 over (model_id, premise, hypothesis) with each field
/// length-prefixed, so no byte sequence can shift content across fields.
/// Exact UTF-8 bytes, no normalization.
struct CacheKey {
  std::string digest;  // 64 lowercase hex chars

  static CacheKey of(std::string_view model_id, std::string_view premise, std::string_view hypothesis);
  static CacheKey of(const ScoreRecord& record) {
    return of(record.model_id, record.premise, record.hypothesis);
  }

  auto operator<=>(const CacheKey&) const = default;
};

enum class ProbMode {
  kDropNeutral,  // softmax over (entailment, contradiction)
  kThreeWay,     // softmax over all three
};

const char* to_string(ProbMode mode);
ProbMode parse_prob_mode(std::string_view text);

/// Entailment component of the softmax selected by `mode`; always in [0, 1].
double entail_prob(const Logits& logits, ProbMode mode);
inline double entail_prob(const ScoreRecord& record, ProbMode mode) {
  return entail_prob(record.logits, mode);
}

}  // namespace zss
