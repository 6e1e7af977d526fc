#include <cmath>

#include "doctest.h"
#include "support/test_support.hpp"

using namespace zss;

namespace {
LabeledCorpus corpus_of(std::vector<std::pair<std::string, int>> rows) {
  LabeledCorpus c;
  int n = 0;
  for (auto& [text, gold] : rows) {
    c.items.push_back({"r" + std::to_string(n++), text, gold ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion});
  }
  return c;
}
}  // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize("Don't add 2 APIs!") == std::vector<std::string>{"don", "t", "add", "2", "apis"});
  CHECK(tokenize("caf\xC3\xA9 au-lait") == std::vector<std::string>{"caf\xC3\xA9", "au", "lait"});
  CHECK(tokenize("  ...  ").empty());
}

TEST_CASE("profiles count by class and respect stopwords") {
  const std::vector<LabeledCorpus> cs = {corpus_of({{"add an option", 1}, {"the option works", 0}}),
                                         corpus_of({{"please add it", 1}})};
  const auto p = profile(cs, ClassFilter::kSuggestion, "A", {"an", "it"});
  CHECK(p.total_tokens == 4);
  CHECK(p.counts.at("add") == 2);
  CHECK(p.rel_freq.at("add") == doctest::Approx(0.5));
  CHECK(p.counts.count("works") == 0);
  CHECK(profile(cs, ClassFilter::kAll, "A").total_tokens == 9);
  CHECK_THROWS_AS(profile(cs, ClassFilter::kSuggestion, "A", {"add", "an", "option", "please", "it"}), Error);
}

TEST_CASE("comparison uses a smoothed log ratio") {
  const std::vector<LabeledCorpus> a = {corpus_of({{"add add option", 1}})};
  const std::vector<LabeledCorpus> b = {corpus_of({{"room option", 1}})};
  const auto pa = profile(a, ClassFilter::kAll, "A");
  const auto pb = profile(b, ClassFilter::kAll, "B");
  const auto rows = compare(pa, pb, 10);
  REQUIRE(rows.size() == 3);
  const double eps = 1.0 / 5.0;
  for (const auto& r : rows) {
    CHECK(r.log_ratio == doctest::Approx(std::log((r.rel_freq_a + eps) / (r.rel_freq_b + eps))));
  }
  CHECK(rows[0].token == "add");
  CHECK(rows.back().token == "option");
  const auto csv = comparison_csv(rows);
  CHECK(csv.rfind("token,rel_freq_a,rel_freq_b,log_ratio\n", 0) == 0);
  CHECK(compare(pa, pb, 1).size() == 2);
}
