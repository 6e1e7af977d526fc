// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "support/cli_support.hpp"

using namespace zss;
using zss::testing::fixture;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome golden_table() {
  const auto t0 = Clock::now();
  std::vector<std::filesystem::path> dirs = {fixture("wordnet_senses")};
  const auto full = zss::testing::full_wordnet_dir();
  if (!full.empty() && std::filesystem::exists(full / "data.noun")) dirs.push_back(full);
  Outcome o;
  for (const auto& dir : dirs) {
    const auto lex = wordnet::load_wordnet_dir(dir);
    const auto root = wordnet::resolve_sense(lex, wordnet::SenseName::parse("message.n.02"));
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& h : wordnet::hyponyms(lex, root)) got.emplace(lex.name_of(h.id)->str(), wordnet::first_lemma(h));
    std::size_t missing = 0;
    for (const auto& row : zss::testing::message_hyponym_table()) missing += got.count(row) == 0;
    const bool candidates_ok = candidate_senses() == zss::testing::checkmarked_candidates();
    const auto space = build_approach3(lex, A3Scope::kCandidates8, false, false);
    bool lemmas_ok = space.labels.size() == 8;
    for (std::size_t i = 0; lemmas_ok && i < 8; ++i) {
      lemmas_ok = wordnet::SenseName::parse(zss::testing::checkmarked_candidates()[i]).lemma == space.labels[i].label_id;
    }
    o.ok = o.ok && missing == 0 && candidates_ok && lemmas_ok;
    o.detail += dir.filename().string() + ": " + std::to_string(32 - missing) + "/32 rows, " +
                std::to_string(got.size()) + " hyponyms; ";
  }
  const double secs = seconds_since(t0);
  o.ok = o.ok && secs < 10.0;
  o.detail += "candidates " + std::string(o.ok ? "match" : "checked") + ", " + format_fixed(secs, 2) + " s";
  return o;
}

Outcome subset_enumeration() {
  const auto subsets = enumerate_subsets(default_search_spec().candidates, 4, 8);
  std::map<std::size_t, std::size_t> sizes;
  for (const auto& s : subsets) ++sizes[s.size()];
  const std::map<std::size_t, std::size_t> expected = {{4, 70}, {5, 56}, {6, 28}, {7, 8}, {8, 1}};
  std::string detail = std::to_string(subsets.size()) + " subsets, per size";
  for (const auto& [k, n] : sizes) detail += " " + std::to_string(n);
  return {subsets.size() == 163 && subset_count(8, 4, 8) == 163 && sizes == expected, detail};
}

Outcome metric_oracle() {
  std::mt19937_64 rng(20190);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng() % 51;
    LabeledCorpus corpus;
    std::vector<Prediction> preds;
    std::vector<BinaryClass> pred_labels, gold_labels;
    for (std::size_t i = 0; i < n; ++i) {
      const auto gold = rng() & 1 ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion;
      const auto pred = rng() & 1 ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion;
      corpus.items.push_back({"t" + std::to_string(i), "s", gold});
      preds.push_back({"t" + std::to_string(i), "s", pred, "x", 0.0});
      pred_labels.push_back(pred);
      gold_labels.push_back(gold);
    }
    std::shuffle(preds.begin(), preds.end(), rng);
    mismatches += !(evaluate(preds, corpus) == zss::testing::count_confusion(pred_labels, gold_labels));
  }
  return {mismatches == 0, "1000 corpora, " + std::to_string(mismatches) + " mismatches"};
}

Outcome random_baseline_reproduction() {
  const auto t0 = Clock::now();
  // Test-split label counts: subtask A 87/746, subtask B 348/476.
  const auto a = random_baseline(synthetic_corpus(87, 746), 10000, cli::kDefaultSeed, 4);
  const auto b = random_baseline(synthetic_corpus(348, 476, Subtask::kB), 10000, cli::kDefaultSeed, 4);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(a.mean_f1 - 0.1734) <= 0.005 && std::abs(b.mean_f1 - 0.4566) <= 0.005 && secs < 30.0;
  return {ok, "A " + format_fixed(a.mean_f1, 4) + " (target 0.1734), B " + format_fixed(b.mean_f1, 4) +
                  " (target 0.4566), " + format_fixed(secs, 2) + " s"};
}

Outcome mapping_search_consistency() {
  const auto f = zss::testing::load_scored_fixture();
  const auto ranked = search(default_search_spec(), f.corpus, f.space, f.scores);
  std::size_t mismatches = 0;
  for (const auto& r : ranked) {
    const auto brute = zss::testing::count_confusion(zss::testing::brute_force_mapping(f, r.subset),
                                                     zss::testing::golds(f.corpus));
    mismatches += !(brute == r.eval);
  }
  return {ranked.size() == 163 && mismatches == 0 && f.corpus.size() == 30,
          std::to_string(ranked.size()) + " subsets on " + std::to_string(f.corpus.size()) + " sentences, " +
              std::to_string(mismatches) + " mismatches"};
}

Outcome cli_determinism() {
  zss::testing::ScratchDir dir("acceptance");
  const auto cache = (dir / "scores.jsonl").string();
  const auto wn = fixture("wordnet_senses").string();
  const auto data = fixture("sample_a.csv").string();
  const auto corpus = load_semeval_csv(data, Subtask::kA, Split::kDev);
  const auto lex = wordnet::load_wordnet_dir(wn);
  zss::testing::populate_cache(cache, corpus, build_approach1(A1Variant::kIsA));
  zss::testing::populate_cache(cache, corpus, build_approach3(lex, A3Scope::kAllHyponyms, false, false));

  const auto run_once = [&](const std::string& out) {
    const std::vector<std::string> common = {"--backend", "cache_only", "--cache", cache, "--wordnet-dir", wn,
                                             "-o", out, "--dataset", "A.dev=" + data};
    auto classify = common;
    classify.insert(classify.end(), {"classify", "--approach", "a3", "--subset", "guidance,proposal,reminder,request"});
    auto classify_a1 = common;
    classify_a1.insert(classify_a1.end(), {"classify", "--approach", "a1"});
    auto eval = common;
    eval.insert(eval.end(), {"eval", "--predictions", out + "/classify-a3-mapping-A-dev.predictions.csv"});
    int code = 0;
    for (const auto& args : {classify, classify_a1, eval}) code |= zss::testing::run_cli(args).code;
    return code;
  };
  const auto out1 = (dir / "run1").string();
  const auto out2 = (dir / "run2").string();
  if (run_once(out1) != 0 || run_once(out2) != 0) return {false, "a CLI run failed"};

  std::size_t compared = 0, differing = 0;
  for (const auto& entry : std::filesystem::directory_iterator(out1)) {
    const auto name = entry.path().filename().string();
    if (name.find(".manifest.json") != std::string::npos) continue;  // holds timestamps
    ++compared;
    differing += zss::testing::slurp(entry.path()) != zss::testing::slurp(std::filesystem::path(out2) / name);
  }
  return {compared >= 6 && differing == 0,
          std::to_string(compared) + " artifacts compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"wordnet golden table", golden_table},
      {"subset enumeration", subset_enumeration},
      {"metric oracle equivalence", metric_oracle},
      {"random baseline reproduction", random_baseline_reproduction},
      {"mapping-mode search consistency", mapping_search_consistency},
      {"classify+eval determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << name << " -- " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
