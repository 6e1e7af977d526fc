#include "doctest.h"
#include "support/cli_support.hpp"

using namespace zss;
using zss::testing::fixture;
using zss::testing::run_cli;
using zss::testing::ScratchDir;

namespace {

struct CliEnv {
  ScratchDir dir{"cli"};
  std::string cache = (dir / "scores.jsonl").string();
  std::string wordnet = fixture("wordnet_senses").string();
  std::string data = fixture("sample_a.csv").string();
  LabeledCorpus corpus = load_semeval_csv(fixture("sample_a.csv"), Subtask::kA, Split::kDev);

  std::vector<std::string> base(const std::string& out) const {
    return {"--backend", "cache_only", "--cache", cache, "--wordnet-dir", wordnet, "-o", out,
            "--dataset", "A.dev=" + data};
  }
  std::vector<std::string> with(const std::string& out, std::vector<std::string> more) const {
    auto args = base(out);
    args.insert(args.end(), more.begin(), more.end());
    return args;
  }
};

}  // namespace

TEST_CASE("help and usage errors") {
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("classify:") != std::string::npos);
  CHECK(help.out.find("--k-min") != std::string::npos);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"classify", "--approach", "a7"}).code == 2);
  CHECK(run_cli({"--jobs", "0", "baseline", "--positives", "1", "--negatives", "1"}).code == 2);
  CHECK(run_cli({"--config", "/nonexistent/config.json", "labels"}).code == 3);
}

TEST_CASE("wordnet subcommands") {
  const std::string wn = fixture("wordnet_senses").string();
  const auto hypo = run_cli({"--wordnet-dir", wn, "wordnet", "hyponyms", "message.n.02"});
  CHECK(hypo.code == 0);
  CHECK(std::count(hypo.out.begin(), hypo.out.end(), '\n') == 33);
  CHECK(hypo.out.find("reminder.n.01\treminder\ta message that helps you remember something") != std::string::npos);
  const auto show = run_cli({"--wordnet-dir", wn, "wordnet", "show", "suggestion.n.02"});
  CHECK(show.out.find("a proposal offered for acceptance or rejection") != std::string::npos);
  CHECK(run_cli({"--wordnet-dir", wn, "wordnet", "show", "suggestion.n.09"}).code == 3);
  CHECK(run_cli({"wordnet", "show", "suggestion.n.01"}).code == 2);

  ScratchDir dir("cli-snap");
  const auto snap = (dir / "wn.json").string();
  CHECK(run_cli({"--wordnet-dir", wn, "wordnet", "snapshot", "--out", snap}).code == 0);
  const auto from_dir = run_cli({"--wordnet-dir", wn, "labels", "--approach", "a3", "--scope", "all"});
  const auto from_snap = run_cli({"--snapshot", snap, "labels", "--approach", "a3", "--scope", "all"});
  CHECK(from_dir.code == 0);
  CHECK(from_dir.out == from_snap.out);
}

TEST_CASE("classify from cache, eval, and cache misses") {
  CliEnv env;
  const auto out = (env.dir / "out").string();
  const auto a1 = build_approach1(A1Variant::kIsA);

  const auto miss = run_cli(env.with(out, {"classify", "--approach", "a1"}));
  CHECK(miss.code == 5);
  CHECK(miss.err.find("cache") != std::string::npos);

  zss::testing::populate_cache(env.cache, env.corpus, a1);
  const auto ok = run_cli(env.with(out, {"classify", "--approach", "a1"}));
  REQUIRE(ok.code == 0);
  const auto stem = std::filesystem::path(out) / "classify-a1-A-dev";
  const auto eval_json = zss::testing::slurp(stem.string() + ".eval.json");
  CHECK(std::filesystem::exists(stem.string() + ".manifest.json"));

  // Independent recomputation from the cached logits.
  Scorer scorer([&] {
    ScorerConfig c;
    c.backend = BackendKind::kCacheOnly;
    c.cache_path = env.cache;
    return c;
  }());
  const DecisionMode mode{DecisionKind::kBinaryArgmax, {}, Aggregation::kMax};
  const auto expected = evaluate(classify_corpus(env.corpus, a1, mode, scorer), env.corpus);
  CHECK(eval_from_json(eval_json) == expected);

  const auto ev = run_cli(env.with(out, {"eval", "--predictions", stem.string() + ".predictions.csv", "--format", "json"}));
  CHECK(ev.code == 0);
  CHECK(eval_from_json(ev.out) == expected);
}

TEST_CASE("a3 classify, search and score") {
  CliEnv env;
  const auto out = (env.dir / "out").string();
  const auto lex = wordnet::load_wordnet_dir(env.wordnet);
  zss::testing::populate_cache(env.cache, env.corpus, build_approach3(lex, A3Scope::kAllHyponyms, false, false));
  zss::testing::populate_cache(env.cache, env.corpus, build_approach3(lex, A3Scope::kCandidates8, false, true));

  const auto mapping = run_cli(env.with(out, {"classify", "--approach", "a3", "--subset", "guidance,reminder"}));
  CHECK(mapping.code == 0);
  const auto competition = run_cli(env.with(out, {"classify", "--approach", "a3", "--mode", "competition"}));
  CHECK(competition.code == 0);
  CHECK(run_cli(env.with(out, {"classify", "--approach", "a3", "--subset", "wit,nonexistent"})).code == 3);

  const auto search = run_cli(env.with(out, {"search", "--mode", "both", "--format", "csv"}));
  REQUIRE(search.code == 0);
  CHECK(search.out.find("== mapping mode ==") != std::string::npos);
  CHECK(search.out.find("== competition mode ==") != std::string::npos);
  const auto small = run_cli(env.with(out, {"search", "--k-min", "7", "--k-max", "8", "--format", "json"}));
  REQUIRE(small.code == 0);
  CHECK(parse_report_json(small.out).size() == 9);
  CHECK(run_cli(env.with(out, {"search", "--k-min", "5", "--k-max", "4"})).code == 2);

  // `score` on an already populated cache does no remote work.
  const auto score = run_cli(env.with(out, {"score", "--approach", "a3", "--mode", "competition"}));
  CHECK(score.code == 0);
  CHECK(score.out.find("0 remote call(s)") != std::string::npos);
}

TEST_CASE("baseline and freq") {
  ScratchDir dir("cli-misc");
  const auto out = (dir / "out").string();
  const auto b1 = run_cli({"-o", out, "baseline", "--positives", "10", "--negatives", "30", "--trials", "500"});
  const auto b2 = run_cli({"-o", out, "--jobs", "3", "baseline", "--positives", "10", "--negatives", "30", "--trials", "500"});
  CHECK(b1.code == 0);
  CHECK(b1.out == b2.out);
  CHECK(b1.out.rfind("mean_f1 ", 0) == 0);
  CHECK(run_cli({"baseline", "--positives", "10"}).code == 2);

  const auto freq = run_cli({"-o", out, "freq", "--data-a", fixture("sample_a.csv").string(), "--data-b",
                             fixture("sample_b.csv").string(), "--top-k", "5"});
  REQUIRE(freq.code == 0);
  CHECK(freq.out.rfind("token,rel_freq_a,rel_freq_b,log_ratio\n", 0) == 0);
  CHECK(run_cli({"freq"}).code == 2);
}

TEST_CASE("config file, environment and flag precedence") {
  ScratchDir dir("cli-config");
  zss::testing::spit(dir / "config.json", R"({
    "scorer": {"backend": "cache_only", "cache": "cache.jsonl", "batch_size": 8},
    "datasets": {"A": {"dev": "a.csv"}},
    "output_dir": "runs",
    "seed": 7
  })");
  const auto cfg = zss::cli::load_run_config(dir / "config.json");
  CHECK(cfg.scorer.backend == BackendKind::kCacheOnly);
  CHECK(*cfg.scorer.cache_path == dir / "cache.jsonl");
  CHECK(cfg.datasets.at("A").at("dev") == dir / "a.csv");
  CHECK(cfg.output_dir == dir / "runs");
  CHECK(cfg.seed == 7);
  CHECK(zss::cli::config_json(cfg) == zss::cli::config_json(zss::cli::load_run_config(dir / "config.json")));

  zss::testing::spit(dir / "bad.json", R"({"scorer": {"backend": "carrier-pigeon"}})");
  CHECK(run_cli({"--config", (dir / "bad.json").string(), "labels"}).code == 2);
}

TEST_CASE("ZS_CACHE applies unless --cache overrides it") {
  CliEnv env;
  const auto out = (env.dir / "out").string();
  zss::testing::populate_cache(env.cache, env.corpus, build_approach1(A1Variant::kIsA));
  const std::vector<std::string> tail = {"--backend", "cache_only", "-o", out, "--dataset", "A.dev=" + env.data,
                                         "classify", "--approach", "a1"};
  ::setenv("ZS_CACHE", env.cache.c_str(), 1);
  const auto from_env = run_cli(tail);
  auto overridden = tail;
  overridden.insert(overridden.begin(), {"--cache", (env.dir / "empty.jsonl").string()});
  const auto from_flag = run_cli(overridden);
  ::unsetenv("ZS_CACHE");
  CHECK(from_env.code == 0);
  CHECK(from_flag.code == 5);
}
