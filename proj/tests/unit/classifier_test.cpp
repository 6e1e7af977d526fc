#include <random>
#include <sstream>

#include "doctest.h"
#include "support/test_support.hpp"

using namespace zss;

namespace {

PremiseScores scores_for(const LabelSpace& space, std::vector<double> values) {
  PremiseScores ps{"premise", {}};
  for (std::size_t i = 0; i < space.labels.size(); ++i) ps.by_label.emplace_back(space.labels[i].label_id, values[i]);
  return ps;
}

LabelSpace small_a3(bool negative) {
  LabelSpace s;
  s.approach = Approach::kA3Plain;
  for (const char* id : {"guidance", "offer", "reminder", "wit"}) {
    s.labels.push_back({id, std::string("This text is a ") + id + ".", MappedClass::kDeferred});
  }
  if (negative) {
    s.labels.push_back({std::string(kNegativeLabelId), std::string(kNegativeHypothesis), MappedClass::kNonSuggestion});
    s.negative_label_id = std::string(kNegativeLabelId);
  }
  return s;
}

}  // namespace

TEST_CASE("binary argmax, ties go to non_suggestion") {
  const auto space = build_approach1(A1Variant::kIsA);
  const DecisionMode mode{DecisionKind::kBinaryArgmax, {}, Aggregation::kMax};
  CHECK(classify(scores_for(space, {0.8, 0.2}), space, mode).predicted == BinaryClass::kSuggestion);
  CHECK(classify(scores_for(space, {0.2, 0.8}), space, mode).predicted == BinaryClass::kNonSuggestion);
  const auto tie = classify(scores_for(space, {0.5, 0.5}), space, mode);
  CHECK(tie.predicted == BinaryClass::kNonSuggestion);
  CHECK(tie.winning_label == std::string(kNegativeLabelId));
}

TEST_CASE("definitions vs negative with max and mean") {
  LabelSpace space;
  space.approach = Approach::kA2;
  for (const char* id : {"d1", "d2", "d3"}) space.labels.push_back({id, std::string("h ") + id, MappedClass::kSuggestion});
  space.labels.push_back({std::string(kNegativeLabelId), std::string(kNegativeHypothesis), MappedClass::kNonSuggestion});
  space.negative_label_id = std::string(kNegativeLabelId);
  const auto ps = scores_for(space, {0.9, 0.1, 0.2, 0.5});
  const auto by_max = classify(ps, space, {DecisionKind::kDefsVsNegative, {}, Aggregation::kMax});
  CHECK(by_max.predicted == BinaryClass::kSuggestion);
  CHECK(by_max.winning_label == "d1");
  CHECK(classify(ps, space, {DecisionKind::kDefsVsNegative, {}, Aggregation::kMean}).predicted ==
        BinaryClass::kNonSuggestion);
}

TEST_CASE("mapping: argmax over all deferred labels, then membership") {
  const auto space = small_a3(false);
  const DecisionMode mode{DecisionKind::kMapping, {"guidance", "reminder"}, Aggregation::kMax};
  CHECK(classify(scores_for(space, {0.1, 0.2, 0.9, 0.3}), space, mode).predicted == BinaryClass::kSuggestion);
  const auto out = classify(scores_for(space, {0.1, 0.2, 0.3, 0.9}), space, mode);
  CHECK(out.predicted == BinaryClass::kNonSuggestion);
  CHECK(out.winning_label == "wit");
  // Ties resolve to the earlier label in space order.
  CHECK(classify(scores_for(space, {0.2, 0.9, 0.9, 0.1}), space, mode).winning_label == "offer");
}

TEST_CASE("competition: argmax over the subset plus the negative") {
  const auto space = small_a3(true);
  const DecisionMode mode{DecisionKind::kCompetition, {"guidance", "reminder"}, Aggregation::kMax};
  // wit is outside the competition, so guidance beats the negative.
  const auto out = classify(scores_for(space, {0.6, 0.2, 0.3, 0.99, 0.5}), space, mode);
  CHECK(out.predicted == BinaryClass::kSuggestion);
  CHECK(out.winning_label == "guidance");
  CHECK(classify(scores_for(space, {0.4, 0.2, 0.3, 0.99, 0.5}), space, mode).predicted == BinaryClass::kNonSuggestion);
}

TEST_CASE("decision modes are validated against the space") {
  const auto space = small_a3(false);
  CHECK_THROWS_AS(validate(DecisionMode{DecisionKind::kCompetition, {"guidance"}, Aggregation::kMax}, space), Error);
  CHECK_THROWS_AS(validate(DecisionMode{DecisionKind::kMapping, {}, Aggregation::kMax}, space), Error);
  CHECK_THROWS_AS(validate(DecisionMode{DecisionKind::kMapping, {"unknown"}, Aggregation::kMax}, space), Error);
  auto missing = scores_for(space, {0.1, 0.2, 0.3, 0.4});
  missing.by_label.pop_back();
  CHECK_THROWS_AS(classify(missing, space, {DecisionKind::kMapping, {"guidance"}, Aggregation::kMax}), Error);
}

TEST_CASE("mapping predictions do not depend on the label order of the space") {
  const auto f = zss::testing::load_scored_fixture();
  const DecisionMode mode{DecisionKind::kMapping, {"guidance", "proposal", "request"}, Aggregation::kMax};
  const auto base = classify_corpus(f.corpus, f.space, mode, f.scores);
  std::mt19937 rng(3);
  for (int round = 0; round < 10; ++round) {
    auto shuffled = f.space;
    std::shuffle(shuffled.labels.begin(), shuffled.labels.end(), rng);
    auto scores = f.scores;
    for (auto& ps : scores) {
      std::vector<std::pair<std::string, double>> reordered;
      for (const auto& l : shuffled.labels) reordered.emplace_back(l.label_id, *ps.get(l.label_id));
      ps.by_label = reordered;
    }
    const auto again = classify_corpus(f.corpus, shuffled, mode, scores);
    for (std::size_t i = 0; i < base.size(); ++i) {
      // Only exact ties at the top may pick a different (equal-scoring) winner.
      if (base[i].winning_label != again[i].winning_label) {
        CHECK(base[i].winning_score == again[i].winning_score);
        continue;
      }
      CHECK(base[i].predicted == again[i].predicted);
    }
  }
}

TEST_CASE("score_corpus requests each distinct pair once") {
  auto backend = std::make_shared<zss::testing::HashBackend>();
  ScorerConfig config;
  config.backend = BackendKind::kRemote;
  config.batch_size = 64;
  Scorer scorer(config, backend);
  LabeledCorpus corpus = synthetic_corpus(3, 3);
  corpus.items[4].sentence = corpus.items[0].sentence;
  const auto space = build_approach1(A1Variant::kIsA);
  const auto scores = score_corpus(corpus, space, scorer);
  CHECK(scores.size() == 6);
  CHECK(backend->pairs_seen == 10);
  CHECK(scores[4].by_label == scores[0].by_label);
  const double expected = entail_prob(zss::testing::hashed_logits(corpus.items[1].sentence, space.labels[0].hypothesis),
                                      ProbMode::kDropNeutral);
  CHECK(*scores[1].get(space.labels[0].label_id) == expected);
}

TEST_CASE("cache misses name the affected sentences") {
  zss::testing::ScratchDir dir("miss");
  ScorerConfig config;
  config.backend = BackendKind::kCacheOnly;
  config.cache_path = dir / "empty.jsonl";
  Scorer scorer(config);
  const auto corpus = synthetic_corpus(1, 2);
  try {
    score_corpus(corpus, build_approach1(A1Variant::kIsA), scorer);
    FAIL("expected a cache miss");
  } catch (const CacheMissError& e) {
    CHECK(e.missing() == std::vector<std::size_t>{0, 1, 2});
    CHECK(std::string(e.what()).find(corpus.items[2].sentence_id) != std::string::npos);
  }
}

TEST_CASE("predictions csv round trip") {
  const std::vector<Prediction> preds = {{"a,1", "p", BinaryClass::kSuggestion, "guidance", 0.8765432},
                                         {"b", "q", BinaryClass::kNonSuggestion, "NOT_SUGGESTION", 0.5}};
  const auto csv = predictions_to_csv(preds);
  CHECK(csv.find("0.876543") != std::string::npos);
  std::istringstream in(csv);
  const auto back = predictions_from_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].sentence_id == "a,1");
  CHECK(back[0].predicted == BinaryClass::kSuggestion);
  CHECK(back[1].winning_label == "NOT_SUGGESTION");
  CHECK(predictions_to_json(preds).find("\"winning_label\"") != std::string::npos);
}
