#include "zss/entailment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss {

bool is_complete(const ScoreRecord& r) {
  return !r.model_id.empty() && std::isfinite(r.logits.entailment) &&
         std::isfinite(r.logits.neutral) && std::isfinite(r.logits.contradiction);
}

namespace {

void append_field(std::string& buf, std::string_view field) {
  std::uint64_t n = field.size();
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
  buf.append(field);
}

}  // namespace

CacheKey CacheKey::of(std::string_view model_id, std::string_view premise, std::string_view hypothesis) {
  std::string buf = "zss.score.v1";
  buf.reserve(buf.size() + 24 + model_id.size() + premise.size() + hypothesis.size());
  append_field(buf, model_id);
  append_field(buf, premise);
  append_field(buf, hypothesis);
  return CacheKey{sha256_hex(buf)};
}

const char* to_string(ProbMode mode) {
  return mode == ProbMode::kDropNeutral ? "drop_neutral" : "three_way";
}

ProbMode parse_prob_mode(std::string_view text) {
  if (text == "drop_neutral") return ProbMode::kDropNeutral;
  if (text == "three_way") return ProbMode::kThreeWay;
  throw Error(ErrorKind::kUsage, "unknown probability mode '" + std::string(text) + "'");
}

double entail_prob(const Logits& l, ProbMode mode) {
  // Shift by the max so exp() never overflows.
  if (mode == ProbMode::kDropNeutral) {
    const double m = std::max(l.entailment, l.contradiction);
    const double e = std::exp(l.entailment - m);
    const double c = std::exp(l.contradiction - m);
    return e / (e + c);
  }
  const double m = std::max({l.entailment, l.neutral, l.contradiction});
  const double e = std::exp(l.entailment - m);
  const double n = std::exp(l.neutral - m);
  const double c = std::exp(l.contradiction - m);
  return e / (e + n + c);
}

}  // namespace zss
