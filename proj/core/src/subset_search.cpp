#include "zss/subset_search.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zss/csv.hpp"
#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss {

SearchSpec default_search_spec() {
  SearchSpec spec;
  // Label ids of the candidate senses are their first lemmas.
  for (const std::string& sense : candidate_senses()) spec.candidates.push_back(sense.substr(0, sense.find('.')));
  return spec;
}

void validate(const SearchSpec& spec) {
  const auto usage = [](const std::string& what) { return Error(ErrorKind::kUsage, "search spec: " + what); };
  if (spec.candidates.empty()) throw usage("no candidates");
  if (spec.k_min < 1 || spec.k_min > spec.k_max || spec.k_max > spec.candidates.size()) {
    throw usage("need 1 <= k_min <= k_max <= " + std::to_string(spec.candidates.size()) + ", got k_min=" +
                std::to_string(spec.k_min) + " k_max=" + std::to_string(spec.k_max));
  }
  std::set<std::string> seen(spec.candidates.begin(), spec.candidates.end());
  if (seen.size() != spec.candidates.size()) throw usage("candidates must be distinct");
  if (spec.mode != DecisionKind::kMapping && spec.mode != DecisionKind::kCompetition) {
    throw usage("mode must be mapping or competition");
  }
}

SubsetEnumerator::SubsetEnumerator(std::size_t n, std::size_t k_min, std::size_t k_max)
    : n_(n), k_(k_min), k_max_(std::min(k_max, n)) {}

bool SubsetEnumerator::next(std::vector<std::size_t>& out) {
  if (k_ > k_max_ || k_ == 0) return false;
  if (!started_) {
    current_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) current_[i] = i;
    started_ = true;
    out = current_;
    return true;
  }
  // Rightmost position that can still move right.
  std::size_t i = k_;
  while (i > 0 && current_[i - 1] == n_ - k_ + (i - 1)) --i;
  if (i == 0) {
    ++k_;
    started_ = false;
    return next(out);
  }
  ++current_[i - 1];
  for (std::size_t j = i; j < k_; ++j) current_[j] = current_[j - 1] + 1;
  out = current_;
  return true;
}

std::vector<std::vector<std::string>> enumerate_subsets(const std::vector<std::string>& candidates,
                                                        std::size_t k_min, std::size_t k_max) {
  std::vector<std::vector<std::string>> out;
  SubsetEnumerator it(candidates.size(), k_min, k_max);
  std::vector<std::size_t> idx;
  while (it.next(idx)) {
    std::vector<std::string> names;
    names.reserve(idx.size());
    for (std::size_t i : idx) names.push_back(candidates[i]);
    out.push_back(std::move(names));
  }
  return out;
}

std::size_t subset_count(std::size_t n, std::size_t k_min, std::size_t k_max) {
  std::size_t total = 0;
  for (std::size_t k = k_min; k <= std::min(k_max, n); ++k) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    total += c;
  }
  return total;
}

namespace {

/// Probability matrix restricted to the labels a search consults, in space order.
struct ScoreTable {
  std::vector<std::size_t> space_index;  // column -> label index in the space
  std::vector<double> values;            // row-major, rows = sentences
  std::size_t cols = 0;

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
};

ScoreTable gather(const LabelSpace& space, std::span<const PremiseScores> scores,
                  const std::vector<std::size_t>& needed) {
  ScoreTable table;
  table.space_index = needed;
  table.cols = needed.size();
  table.values.resize(scores.size() * table.cols);
  std::vector<std::size_t> incomplete;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      const std::size_t label = needed[c];
      const std::string& id = space.labels[label].label_id;
      const auto& row = scores[r].by_label;
      std::optional<double> v;
      if (label < row.size() && row[label].first == id) {
        v = row[label].second;
      } else {
        v = scores[r].get(id);
      }
      if (!v) {
        incomplete.push_back(r);
        break;
      }
      table.values[r * table.cols + c] = *v;
    }
  }
  if (!incomplete.empty()) {
    std::string what = "search: scores missing for " + std::to_string(incomplete.size()) + " sentence(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(incomplete.size(), 10); ++k) {
      what += " #" + std::to_string(incomplete[k]);
    }
    throw CacheMissError(std::move(incomplete), what);
  }
  return table;
}

bool ranks_before(const SubsetResult& a, const std::vector<std::size_t>& ai, const SubsetResult& b,
                  const std::vector<std::size_t>& bi) {
  if (a.eval.f1 != b.eval.f1) return a.eval.f1 > b.eval.f1;
  if (a.eval.accuracy != b.eval.accuracy) return a.eval.accuracy > b.eval.accuracy;
  return ai < bi;
}

}  // namespace

std::vector<SubsetResult> search(const SearchSpec& spec, const LabeledCorpus& corpus, const LabelSpace& space,
                                 std::span<const PremiseScores> scores, std::size_t jobs) {
  validate(spec);
  if (scores.size() != corpus.size()) {
    throw Error(ErrorKind::kContract, "search: " + std::to_string(scores.size()) + " score rows for " +
                                          std::to_string(corpus.size()) + " sentences");
  }
  std::vector<std::size_t> candidate_label(spec.candidates.size());
  for (std::size_t c = 0; c < spec.candidates.size(); ++c) {
    const auto i = space.index_of(spec.candidates[c]);
    if (!i) throw Error(ErrorKind::kUsage, "search: candidate '" + spec.candidates[c] + "' not in label space");
    if (space.labels[*i].mapped_class != MappedClass::kDeferred) {
      throw Error(ErrorKind::kUsage, "search: candidate '" + spec.candidates[c] + "' is not a deferred label");
    }
    candidate_label[c] = *i;
  }

  const std::size_t n = corpus.size();
  std::size_t positives = corpus.count(BinaryClass::kSuggestion);
  const std::size_t negatives = n - positives;

  std::vector<std::vector<std::size_t>> subsets;
  {
    SubsetEnumerator it(spec.candidates.size(), spec.k_min, spec.k_max);
    std::vector<std::size_t> idx;
    while (it.next(idx)) subsets.push_back(idx);
  }
  std::vector<EvalResult> evals(subsets.size());

  if (spec.mode == DecisionKind::kMapping) {
    std::vector<std::size_t> deferred;
    for (std::size_t i = 0; i < space.labels.size(); ++i) {
      if (space.labels[i].mapped_class == MappedClass::kDeferred) deferred.push_back(i);
    }
    const ScoreTable table = gather(space, scores, deferred);
    // Winner per sentence is fixed; a subset only decides which winners count.
    std::vector<std::size_t> pos_wins(spec.candidates.size(), 0);
    std::vector<std::size_t> neg_wins(spec.candidates.size(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < table.cols; ++c) {
        if (table.at(r, c) > table.at(r, best)) best = c;
      }
      const auto hit = std::find(candidate_label.begin(), candidate_label.end(), table.space_index[best]);
      if (hit == candidate_label.end()) continue;
      const std::size_t c = static_cast<std::size_t>(hit - candidate_label.begin());
      if (corpus.items[r].gold == BinaryClass::kSuggestion) {
        ++pos_wins[c];
      } else {
        ++neg_wins[c];
      }
    }
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      std::size_t tp = 0, fp = 0;
      for (std::size_t c : subsets[s]) {
        tp += pos_wins[c];
        fp += neg_wins[c];
      }
      evals[s] = eval_from_counts(tp, fp, positives - tp, negatives - fp);
    }
  } else {
    if (!space.negative_label_id) {
      throw Error(ErrorKind::kUsage, "search: competition mode needs a negative label in the space");
    }
    const std::size_t negative = *space.index_of(*space.negative_label_id);
    std::vector<std::size_t> needed = candidate_label;
    needed.push_back(negative);
    const ScoreTable table = gather(space, scores, needed);
    const std::size_t negative_col = needed.size() - 1;

    const auto evaluate_subset = [&](std::size_t s) {
      // Eligible columns in space order, so ties go to the earliest label.
      std::vector<std::size_t> cols(subsets[s].begin(), subsets[s].end());
      cols.push_back(negative_col);
      std::sort(cols.begin(), cols.end(),
                [&](std::size_t a, std::size_t b) { return table.space_index[a] < table.space_index[b]; });
      std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
      for (std::size_t r = 0; r < n; ++r) {
        std::size_t best = cols.front();
        for (std::size_t c : cols) {
          if (table.at(r, c) > table.at(r, best)) best = c;
        }
        const bool predicted = best != negative_col;
        const bool gold = corpus.items[r].gold == BinaryClass::kSuggestion;
        tp += predicted && gold;
        fp += predicted && !gold;
        fn += !predicted && gold;
        tn += !predicted && !gold;
      }
      evals[s] = eval_from_counts(tp, fp, fn, tn);
    };

    jobs = std::max<std::size_t>(1, std::min(jobs, subsets.size()));
    if (jobs == 1) {
      for (std::size_t s = 0; s < subsets.size(); ++s) evaluate_subset(s);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> workers;
      for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
          for (std::size_t s; (s = next.fetch_add(1)) < subsets.size();) evaluate_subset(s);
        });
      }
    }
  }

  std::vector<std::size_t> order(subsets.size());
  std::vector<SubsetResult> results(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    order[s] = s;
    for (std::size_t c : subsets[s]) results[s].subset.push_back(spec.candidates[c]);
    results[s].eval = evals[s];
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(results[a], subsets[a], results[b], subsets[b]);
  });
  std::vector<SubsetResult> ranked;
  ranked.reserve(order.size());
  for (std::size_t s : order) ranked.push_back(std::move(results[s]));
  return ranked;
}

std::map<std::size_t, std::vector<SubsetResult>> top_per_size(std::span<const SubsetResult> ranked,
                                                              std::size_t top_n) {
  std::map<std::size_t, std::vector<SubsetResult>> out;
  for (const SubsetResult& r : ranked) {
    auto& bucket = out[r.subset.size()];
    if (bucket.size() < top_n) bucket.push_back(r);
  }
  return out;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::kTable;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw Error(ErrorKind::kUsage, "unknown report format '" + std::string(text) + "'");
}

namespace {

nlohmann::json result_json(const SubsetResult& r) {
  return {{"size", r.subset.size()}, {"subset", r.subset},     {"tp", r.eval.tp},
          {"fp", r.eval.fp},         {"fn", r.eval.fn},         {"tn", r.eval.tn},
          {"f1", r.eval.f1},         {"accuracy", r.eval.accuracy}};
}

std::string table_row(const SubsetResult& r) {
  return std::to_string(r.subset.size()) + " | " + join(r.subset, ", ") + " | " + format_fixed(r.eval.f1, 4) +
         " | " + format_fixed(r.eval.accuracy, 4) + "\n";
}

}  // namespace

std::string report(std::span<const SubsetResult> ranked, ReportFormat format, std::size_t top_n) {
  if (ranked.empty()) throw Error(ErrorKind::kContract, "report: no results");
  std::string out;
  switch (format) {
    case ReportFormat::kTable: {
      out += "Size | Labels subset | F1 | Accuracy\n";
      for (const auto& [size, rows] : top_per_size(ranked, top_n)) {
        out += "---\n";
        for (const SubsetResult& r : rows) out += table_row(r);
      }
      out += "\nBest overall (top " + std::to_string(std::min(top_n, ranked.size())) + " of " +
             std::to_string(ranked.size()) + " subsets)\n";
      out += "Size | Labels subset | F1 | Accuracy\n";
      for (std::size_t i = 0; i < std::min(top_n, ranked.size()); ++i) out += table_row(ranked[i]);
      break;
    }
    case ReportFormat::kCsv: {
      out += "rank,size,labels,f1,accuracy,tp,fp,fn,tn\n";
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        const SubsetResult& r = ranked[i];
        out += std::to_string(i + 1) + "," + std::to_string(r.subset.size()) + "," +
               csv_escape(join(r.subset, ",")) + "," + format_fixed(r.eval.f1, 4) + "," +
               format_fixed(r.eval.accuracy, 4) + "," + std::to_string(r.eval.tp) + "," +
               std::to_string(r.eval.fp) + "," + std::to_string(r.eval.fn) + "," + std::to_string(r.eval.tn) +
               "\n";
      }
      break;
    }
    case ReportFormat::kJson: {
      nlohmann::json results = nlohmann::json::array();
      for (const SubsetResult& r : ranked) results.push_back(result_json(r));
      nlohmann::json per_size = nlohmann::json::object();
      for (const auto& [size, rows] : top_per_size(ranked, top_n)) {
        nlohmann::json arr = nlohmann::json::array();
        for (const SubsetResult& r : rows) arr.push_back(result_json(r));
        per_size[std::to_string(size)] = std::move(arr);
      }
      out = nlohmann::json{{"results", std::move(results)}, {"top_per_size", std::move(per_size)}}.dump(1) + "\n";
      break;
    }
  }
  return out;
}

std::vector<SubsetResult> parse_report_json(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    std::vector<SubsetResult> out;
    for (const auto& r : doc.at("results")) {
      SubsetResult s;
      s.subset = r.at("subset").get<std::vector<std::string>>();
      s.eval = eval_from_counts(r.at("tp").get<std::size_t>(), r.at("fp").get<std::size_t>(),
                                r.at("fn").get<std::size_t>(), r.at("tn").get<std::size_t>());
      out.push_back(std::move(s));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("search report: ") + e.what());
  }
}

}  // namespace zss
