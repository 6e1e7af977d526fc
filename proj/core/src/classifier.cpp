#include "zss/classifier.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "zss/csv.hpp"
#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss {

std::optional<double> PremiseScores::get(std::string_view label_id) const {
  for (const auto& [id, p] : by_label) {
    if (id == label_id) return p;
  }
  return std::nullopt;
}

const char* to_string(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::kBinaryArgmax: return "binary_argmax";
    case DecisionKind::kDefsVsNegative: return "defs_vs_negative";
    case DecisionKind::kCompetition: return "competition";
    case DecisionKind::kMapping: return "mapping";
  }
  return "?";
}

DecisionKind parse_decision_kind(std::string_view text) {
  for (DecisionKind k : {DecisionKind::kBinaryArgmax, DecisionKind::kDefsVsNegative,
                         DecisionKind::kCompetition, DecisionKind::kMapping}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::kUsage, "unknown decision mode '" + std::string(text) + "'");
}

const char* to_string(Aggregation a) { return a == Aggregation::kMax ? "max" : "mean"; }

Aggregation parse_aggregation(std::string_view text) {
  if (text == "max") return Aggregation::kMax;
  if (text == "mean") return Aggregation::kMean;
  throw Error(ErrorKind::kUsage, "unknown aggregation '" + std::string(text) + "'");
}

namespace {

Error contract(const std::string& what) { return Error(ErrorKind::kContract, what); }

std::vector<std::size_t> labels_of_class(const LabelSpace& space, MappedClass c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.labels.size(); ++i) {
    if (space.labels[i].mapped_class == c) out.push_back(i);
  }
  return out;
}

std::size_t negative_index(const LabelSpace& space) {
  if (!space.negative_label_id) throw contract("decision mode needs a negative label in the space");
  const auto i = space.index_of(*space.negative_label_id);
  if (!i) throw contract("negative label '" + *space.negative_label_id + "' not in space");
  return *i;
}

double score_of(const PremiseScores& scores, const LabelSpace& space, std::size_t label) {
  const std::string& id = space.labels[label].label_id;
  // Fast path: scores produced by score_corpus are aligned with the space.
  if (label < scores.by_label.size() && scores.by_label[label].first == id) {
    return scores.by_label[label].second;
  }
  if (const auto p = scores.get(id)) return *p;
  throw contract("no score for label '" + id + "' on premise '" + scores.premise + "'");
}

Prediction make(const PremiseScores& scores, BinaryClass c, const LabelSpace& space, std::size_t label,
                double score) {
  return Prediction{"", scores.premise, c, space.labels[label].label_id, score};
}

}  // namespace

void validate(const DecisionMode& mode, const LabelSpace& space) {
  switch (mode.kind) {
    case DecisionKind::kBinaryArgmax:
      if (labels_of_class(space, MappedClass::kSuggestion).size() != 1) {
        throw contract("binary_argmax needs exactly one suggestion label");
      }
      negative_index(space);
      break;
    case DecisionKind::kDefsVsNegative:
      if (labels_of_class(space, MappedClass::kSuggestion).empty()) {
        throw contract("defs_vs_negative needs at least one suggestion label");
      }
      negative_index(space);
      break;
    case DecisionKind::kCompetition:
    case DecisionKind::kMapping: {
      if (mode.suggestion_set.empty()) throw contract("suggestion_set must be non-empty");
      std::set<std::string> seen;
      for (const std::string& id : mode.suggestion_set) {
        const auto i = space.index_of(id);
        if (!i) throw contract("suggestion_set label '" + id + "' not in space");
        if (space.labels[*i].mapped_class != MappedClass::kDeferred) {
          throw contract("suggestion_set label '" + id + "' is not a deferred label");
        }
        if (!seen.insert(id).second) throw contract("suggestion_set repeats '" + id + "'");
      }
      if (mode.kind == DecisionKind::kCompetition) negative_index(space);
      break;
    }
  }
}

Prediction classify(const PremiseScores& scores, const LabelSpace& space, const DecisionMode& mode) {
  validate(mode, space);
  switch (mode.kind) {
    case DecisionKind::kBinaryArgmax: {
      const std::size_t pos = labels_of_class(space, MappedClass::kSuggestion).front();
      const std::size_t neg = negative_index(space);
      const double sp = score_of(scores, space, pos);
      const double sn = score_of(scores, space, neg);
      if (sp > sn) return make(scores, BinaryClass::kSuggestion, space, pos, sp);
      return make(scores, BinaryClass::kNonSuggestion, space, neg, sn);
    }
    case DecisionKind::kDefsVsNegative: {
      const auto defs = labels_of_class(space, MappedClass::kSuggestion);
      const std::size_t neg = negative_index(space);
      std::size_t best = defs.front();
      double best_score = score_of(scores, space, best);
      double sum = 0.0;
      for (std::size_t i : defs) {
        const double s = score_of(scores, space, i);
        sum += s;
        if (s > best_score) {
          best = i;
          best_score = s;
        }
      }
      const double aggregate = mode.aggregation == Aggregation::kMax ? best_score : sum / defs.size();
      const double sn = score_of(scores, space, neg);
      if (aggregate > sn) return make(scores, BinaryClass::kSuggestion, space, best, best_score);
      return make(scores, BinaryClass::kNonSuggestion, space, neg, sn);
    }
    case DecisionKind::kCompetition:
    case DecisionKind::kMapping: {
      std::vector<bool> in_set(space.labels.size(), false);
      for (const std::string& id : mode.suggestion_set) in_set[*space.index_of(id)] = true;
      std::vector<bool> eligible(space.labels.size(), false);
      if (mode.kind == DecisionKind::kMapping) {
        for (std::size_t i : labels_of_class(space, MappedClass::kDeferred)) eligible[i] = true;
      } else {
        eligible = in_set;
        eligible[negative_index(space)] = true;
      }
      std::optional<std::size_t> best;
      double best_score = 0.0;
      for (std::size_t i = 0; i < space.labels.size(); ++i) {
        if (!eligible[i]) continue;
        const double s = score_of(scores, space, i);
        if (!best || s > best_score) {
          best = i;
          best_score = s;
        }
      }
      return make(scores, in_set[*best] ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion, space,
                  *best, best_score);
    }
  }
  throw contract("unhandled decision mode");
}

std::vector<PremiseScores> score_corpus(const LabeledCorpus& corpus, const LabelSpace& space, Scorer& scorer,
                                        ProbMode prob_mode) {
  if (corpus.empty()) return {};
  // Distinct premises and hypotheses; each distinct pair is requested once.
  std::vector<std::string> premises;
  std::unordered_map<std::string, std::size_t> premise_index;
  std::vector<std::size_t> item_premise(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto [it, fresh] = premise_index.emplace(corpus.items[i].sentence, premises.size());
    if (fresh) premises.push_back(corpus.items[i].sentence);
    item_premise[i] = it->second;
  }
  std::vector<std::string> hypotheses;
  std::unordered_map<std::string, std::size_t> hypothesis_index;
  std::vector<std::size_t> label_hypothesis(space.labels.size());
  for (std::size_t l = 0; l < space.labels.size(); ++l) {
    const auto [it, fresh] = hypothesis_index.emplace(space.labels[l].hypothesis, hypotheses.size());
    if (fresh) hypotheses.push_back(space.labels[l].hypothesis);
    label_hypothesis[l] = it->second;
  }

  std::vector<PremiseHypothesis> pairs;
  pairs.reserve(premises.size() * hypotheses.size());
  for (const auto& p : premises) {
    for (const auto& h : hypotheses) pairs.push_back({p, h});
  }

  std::vector<ScoreRecord> records;
  try {
    records = scorer.score_pairs(pairs);
  } catch (const CacheMissError& e) {
    std::set<std::size_t> affected_premises;
    for (std::size_t pair : e.missing()) affected_premises.insert(pair / hypotheses.size());
    std::vector<std::size_t> sentences;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (affected_premises.count(item_premise[i])) sentences.push_back(i);
    }
    std::string what = std::to_string(e.missing().size()) + " score(s) missing from cache for " +
                       std::to_string(sentences.size()) + " sentence(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(sentences.size(), 10); ++k) {
      what += " #" + std::to_string(sentences[k]) + " (" + corpus.items[sentences[k]].sentence_id + ")";
    }
    if (sentences.size() > 10) what += " ...";
    throw CacheMissError(std::move(sentences), what);
  } catch (const Error& e) {
    throw Error(e.kind(), "scoring " + std::to_string(corpus.size()) + " sentences (subtask " +
                              to_string(corpus.subtask) + ", " + to_string(corpus.split) + "): " + e.what());
  }

  std::vector<PremiseScores> out(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    PremiseScores& ps = out[i];
    ps.premise = corpus.items[i].sentence;
    ps.by_label.reserve(space.labels.size());
    const std::size_t base = item_premise[i] * hypotheses.size();
    for (std::size_t l = 0; l < space.labels.size(); ++l) {
      ps.by_label.emplace_back(space.labels[l].label_id,
                               entail_prob(records[base + label_hypothesis[l]], prob_mode));
    }
  }
  return out;
}

std::vector<Prediction> classify_corpus(const LabeledCorpus& corpus, const LabelSpace& space,
                                        const DecisionMode& mode, std::span<const PremiseScores> scores) {
  if (scores.size() != corpus.size()) {
    throw contract("classify_corpus: " + std::to_string(scores.size()) + " score rows for " +
                   std::to_string(corpus.size()) + " sentences");
  }
  validate(mode, space);
  std::vector<Prediction> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Prediction p = classify(scores[i], space, mode);
    p.sentence_id = corpus.items[i].sentence_id;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> classify_corpus(const LabeledCorpus& corpus, const LabelSpace& space,
                                        const DecisionMode& mode, Scorer& scorer, ProbMode prob_mode) {
  validate(mode, space);
  const auto scores = score_corpus(corpus, space, scorer, prob_mode);
  return classify_corpus(corpus, space, mode, scores);
}

std::string predictions_to_csv(std::span<const Prediction> predictions) {
  std::string out = "sentence_id,predicted,winning_label,winning_score\n";
  for (const Prediction& p : predictions) {
    out += csv_escape(p.sentence_id) + "," + to_string(p.predicted) + "," + csv_escape(p.winning_label) + "," +
           format_fixed(p.winning_score, 6) + "\n";
  }
  return out;
}

std::vector<Prediction> predictions_from_csv(std::istream& in, const std::string& source) {
  const auto rows = read_csv(in, source);
  std::vector<Prediction> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != 4) throw ParseError(source, rows[r].line, "expected 4 fields");
    if (r == 0 && f[0] == "sentence_id") continue;
    Prediction p;
    p.sentence_id = f[0];
    try {
      p.predicted = parse_binary_class(f[1]);
      p.winning_score = std::stod(f[3]);
    } catch (const std::exception& e) {
      throw ParseError(source, rows[r].line, e.what());
    }
    p.winning_label = f[2];
    out.push_back(std::move(p));
  }
  return out;
}

std::string predictions_to_json(std::span<const Prediction> predictions) {
  using nlohmann::json;
  json arr = json::array();
  for (const Prediction& p : predictions) {
    arr.push_back({{"sentence_id", p.sentence_id},
                   {"premise", p.premise},
                   {"predicted", to_string(p.predicted)},
                   {"winning_label", p.winning_label},
                   {"winning_score", p.winning_score}});
  }
  return arr.dump(1) + "\n";
}

}  // namespace zss
