#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zss/zss.hpp"

namespace zss::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

RunConfig load_run_config(const fs::path& path) {
  RunConfig cfg;
  const fs::path base = path.parent_path();
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kUsage, "config " + path.string() + ": " + e.what());
  }
  try {
    if (doc.contains("scorer")) {
      const json& s = doc.at("scorer");
      if (s.contains("backend")) cfg.scorer.backend = parse_backend_kind(s.at("backend").get<std::string>());
      if (s.contains("endpoint")) cfg.scorer.endpoint = s.at("endpoint").get<std::string>();
      if (s.contains("model_id")) cfg.scorer.model_id = s.at("model_id").get<std::string>();
      if (s.contains("batch_size")) cfg.scorer.batch_size = s.at("batch_size").get<std::size_t>();
      if (s.contains("timeout_ms")) cfg.scorer.request_timeout = std::chrono::milliseconds(s.at("timeout_ms").get<long>());
      if (s.contains("retries")) cfg.scorer.retries = s.at("retries").get<int>();
      if (s.contains("backoff_ms")) cfg.scorer.backoff = std::chrono::milliseconds(s.at("backoff_ms").get<long>());
      if (s.contains("cache")) cfg.scorer.cache_path = resolve(base, s.at("cache").get<std::string>());
      if (s.contains("prob_mode")) cfg.prob_mode = parse_prob_mode(s.at("prob_mode").get<std::string>());
    }
    if (doc.contains("wordnet")) {
      const json& w = doc.at("wordnet");
      if (w.contains("dir")) cfg.wordnet_dir = resolve(base, w.at("dir").get<std::string>());
      if (w.contains("snapshot")) cfg.snapshot = resolve(base, w.at("snapshot").get<std::string>());
    }
    if (doc.contains("datasets")) {
      for (const auto& [subtask, splits] : doc.at("datasets").items()) {
        for (const auto& [split, p] : splits.items()) {
          cfg.datasets[std::string(to_string(parse_subtask(subtask)))][to_string(parse_split(split))] =
              resolve(base, p.get<std::string>());
        }
      }
    }
    if (doc.contains("output_dir")) cfg.output_dir = resolve(base, doc.at("output_dir").get<std::string>());
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kUsage, "config " + path.string() + ": " + e.what());
  }
  return cfg;
}

std::string config_json(const RunConfig& c) {
  json datasets = json::object();
  for (const auto& [subtask, splits] : c.datasets) {
    for (const auto& [split, p] : splits) datasets[subtask][split] = p.string();
  }
  json doc = {
      {"scorer",
       {{"backend", to_string(c.scorer.backend)},
        {"endpoint", c.scorer.endpoint},
        {"model_id", c.scorer.model_id},
        {"batch_size", c.scorer.batch_size},
        {"timeout_ms", c.scorer.request_timeout.count()},
        {"retries", c.scorer.retries},
        {"backoff_ms", c.scorer.backoff.count()},
        {"cache", c.scorer.cache_path ? json(c.scorer.cache_path->string()) : json(nullptr)},
        {"prob_mode", to_string(c.prob_mode)}}},
      {"wordnet",
       {{"dir", c.wordnet_dir ? json(c.wordnet_dir->string()) : json(nullptr)},
        {"snapshot", c.snapshot ? json(c.snapshot->string()) : json(nullptr)}}},
      {"datasets", datasets},
      {"output_dir", c.output_dir.string()},
      {"seed", c.seed},
      {"jobs", c.jobs},
  };
  return doc.dump();
}

namespace {

/// Per-invocation state: lazily loaded resources plus the run manifest.
class Session {
 public:
  Session(RunConfig config, std::string command, std::vector<std::string> args, std::ostream& out,
          std::ostream& err)
      : config_(std::move(config)),
        command_(std::move(command)),
        args_(std::move(args)),
        out_(out),
        err_(err),
        started_(utc_now()) {}

  const RunConfig& config() const { return config_; }
  std::ostream& out() { return out_; }

  const wordnet::LexiconSnapshot& lexicon() {
    if (!lexicon_) {
      if (config_.snapshot) {
        record_input(*config_.snapshot);
        lexicon_ = wordnet::read_snapshot(*config_.snapshot);
      } else if (config_.wordnet_dir) {
        record_input(*config_.wordnet_dir / "index.noun");
        record_input(*config_.wordnet_dir / "data.noun");
        lexicon_ = wordnet::load_wordnet_dir(*config_.wordnet_dir);
      } else {
        throw Error(ErrorKind::kUsage, "this command needs --wordnet-dir or --snapshot");
      }
    }
    return *lexicon_;
  }

  fs::path dataset_path(const std::string& subtask, const std::string& split, const std::string& override_path) {
    if (!override_path.empty()) return override_path;
    const auto s = config_.datasets.find(subtask);
    if (s != config_.datasets.end()) {
      const auto p = s->second.find(split);
      if (p != s->second.end()) return p->second;
    }
    throw Error(ErrorKind::kUsage, "no dataset configured for subtask " + subtask + " split " + split +
                                       " (use --data or --dataset " + subtask + "." + split + "=PATH)");
  }

  LabeledCorpus corpus(const std::string& subtask, const std::string& split, const std::string& override_path) {
    const Subtask t = parse_subtask(subtask);
    const Split s = parse_split(split);
    const fs::path path = dataset_path(to_string(t), to_string(s), override_path);
    record_input(path);
    return load_semeval_csv(path, t, s);
  }

  Scorer& scorer() {
    if (!scorer_) {
      scorer_ = std::make_unique<Scorer>(config_.scorer);
      if (const auto& cache = scorer_->cache(); cache && cache->corrupt_lines() > 0) {
        err_ << "warning: skipped " << cache->corrupt_lines() << " corrupt line(s) in " << cache->path().string()
             << " (first at line " << cache->corrupt_line_numbers().front() << ")\n";
      }
    }
    return *scorer_;
  }

  void record_input(const fs::path& path) {
    if (fs::is_regular_file(path)) inputs_[path.string()] = sha256_file(path);
  }

  /// Writes `content` under the output directory and reports the path.
  void write_artifact(const std::string& name, const std::string& content) {
    fs::create_directories(config_.output_dir);
    const fs::path path = config_.output_dir / name;
    std::ofstream o(path, std::ios::binary);
    if (!o) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    o << content;
    if (!o) throw Error(ErrorKind::kIo, "write failed: " + path.string());
    outputs_.push_back(path.string());
  }

  void finish(const std::string& stem) {
    json manifest = {{"command", command_},
                     {"args", args_},
                     {"config", json::parse(config_json(config_))},
                     {"config_hash", sha256_hex(config_json(config_))},
                     {"started_at", started_},
                     {"finished_at", utc_now()},
                     {"inputs", inputs_},
                     {"outputs", outputs_}};
    if (scorer_) {
      manifest["model_id"] = config_.scorer.model_id;
      manifest["remote_calls"] = scorer_->remote_calls();
    }
    fs::create_directories(config_.output_dir);
    std::ofstream o(config_.output_dir / (stem + ".manifest.json"), std::ios::binary);
    o << manifest.dump(2) << "\n";
  }

 private:
  RunConfig config_;
  std::string command_;
  std::vector<std::string> args_;
  std::ostream& out_;
  std::ostream& err_;
  std::string started_;
  std::optional<wordnet::LexiconSnapshot> lexicon_;
  std::unique_ptr<Scorer> scorer_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
};

struct GlobalFlags {
  std::string config;
  std::string backend, endpoint, model_id, cache, wordnet_dir, snapshot, output, prob_mode;
  std::size_t batch_size = 0;
  long timeout_ms = 0;
  long backoff_ms = 0;
  int retries = 0;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  std::vector<std::string> datasets;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

RunConfig effective_config(const GlobalFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_run_config(f.config);
  if (const char* env = std::getenv("ZS_ENDPOINT"); env && *env) cfg.scorer.endpoint = env;
  if (const char* env = std::getenv("ZS_CACHE"); env && *env) cfg.scorer.cache_path = env;
  if (f.given("--backend")) cfg.scorer.backend = parse_backend_kind(f.backend);
  if (f.given("--endpoint")) cfg.scorer.endpoint = f.endpoint;
  if (f.given("--model-id")) cfg.scorer.model_id = f.model_id;
  if (f.given("--batch-size")) cfg.scorer.batch_size = f.batch_size;
  if (f.given("--timeout-ms")) cfg.scorer.request_timeout = std::chrono::milliseconds(f.timeout_ms);
  if (f.given("--retries")) cfg.scorer.retries = f.retries;
  if (f.given("--backoff-ms")) cfg.scorer.backoff = std::chrono::milliseconds(f.backoff_ms);
  if (f.given("--cache")) cfg.scorer.cache_path = f.cache;
  if (f.given("--prob-mode")) cfg.prob_mode = parse_prob_mode(f.prob_mode);
  if (f.given("--wordnet-dir")) cfg.wordnet_dir = f.wordnet_dir;
  if (f.given("--snapshot")) cfg.snapshot = f.snapshot;
  if (f.given("--output")) cfg.output_dir = f.output;
  if (f.given("--seed")) cfg.seed = f.seed;
  if (f.given("--jobs")) cfg.jobs = f.jobs;
  for (const std::string& d : f.datasets) {
    const auto eq = d.find('=');
    const auto dot = d.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw Error(ErrorKind::kUsage, "--dataset expects SUBTASK.SPLIT=PATH, got '" + d + "'");
    }
    const Subtask t = parse_subtask(d.substr(0, dot));
    const Split s = parse_split(d.substr(dot + 1, eq - dot - 1));
    cfg.datasets[to_string(t)][to_string(s)] = d.substr(eq + 1);
  }
  if (cfg.jobs < 1) throw Error(ErrorKind::kUsage, "--jobs must be >= 1");
  // Inputs named by the configuration must exist; the cache and output
  // directory are created on demand.
  const auto require = [](const fs::path& p, const std::string& what) {
    if (!fs::exists(p)) throw Error(ErrorKind::kIo, what + " does not exist: " + p.string());
  };
  if (cfg.wordnet_dir) require(*cfg.wordnet_dir, "wordnet directory");
  if (cfg.snapshot) require(*cfg.snapshot, "lexicon snapshot");
  for (const auto& [subtask, splits] : cfg.datasets) {
    for (const auto& [split, p] : splits) require(p, "dataset " + subtask + "." + split);
  }
  cfg.scorer.jobs = cfg.jobs;
  return cfg;
}

/// Flags shared by every command that builds a label space.
struct LabelFlags {
  std::string approach = "a1";
  std::string scope;  // candidates | all; default depends on mode
  bool extended = false;
  bool negative = false;
  bool no_negative = false;
  bool smart_article = false;
  bool space_underscores = false;
  std::string labels_file;
  std::string mode = "mapping";
  std::string subset;
  std::string aggregate = "max";

  void attach(CLI::App* cmd, bool with_decision) {
    cmd->add_option("--approach", approach, "a1 | a1-suggesting | a2 | a3")
        ->check(CLI::IsMember({"a1", "a1-suggesting", "a2", "a3"}))
        ->capture_default_str();
    cmd->add_option("--scope", scope, "a3 label scope: candidates | all (default: all for mapping, candidates for competition)")
        ->check(CLI::IsMember({"candidates", "all"}));
    cmd->add_flag("--extended", extended, "a3: join all lemmas with 'or'");
    cmd->add_flag("--negative", negative, "a3: add \"This text is not a suggestion.\"");
    cmd->add_flag("--no-negative", no_negative, "a3: never add the negative hypothesis");
    cmd->add_flag("--smart-article", smart_article, "a3: use 'an' before vowels");
    cmd->add_flag("--space-underscores", space_underscores, "a3: render lemma underscores as spaces");
    cmd->add_option("--labels", labels_file, "custom label space JSON (overrides --approach)");
    if (with_decision) {
      cmd->add_option("--mode", mode, "a3 decision rule: mapping | competition")
          ->check(CLI::IsMember({"mapping", "competition"}))
          ->capture_default_str();
      cmd->add_option("--subset", subset, "a3: comma-separated labels mapped to suggestion (default: the 8 candidates)");
      cmd->add_option("--aggregate", aggregate, "a2: max | mean over definitions")
          ->check(CLI::IsMember({"max", "mean"}))
          ->capture_default_str();
    }
  }

  std::string tag() const {
    if (!labels_file.empty()) return "custom";
    if (approach == "a3") return std::string("a3") + (extended ? "x" : "") + "-" + mode;
    return approach;
  }
};

LabelSpace build_space(const LabelFlags& f, Session& s, const std::string& mode) {
  if (!f.labels_file.empty()) {
    s.record_input(f.labels_file);
    return import_label_space(read_file(f.labels_file));
  }
  if (f.approach == "a1") return build_approach1(A1Variant::kIsA);
  if (f.approach == "a1-suggesting") return build_approach1(A1Variant::kIsSuggesting);
  if (f.approach == "a2") return build_approach2(s.lexicon());
  const bool competition = mode == "competition";
  const std::string scope = f.scope.empty() ? (competition ? "candidates" : "all") : f.scope;
  bool negative = competition;
  if (f.negative) negative = true;
  if (f.no_negative) negative = false;
  RenderOptions render{f.smart_article, f.space_underscores};
  return build_approach3(s.lexicon(), scope == "all" ? A3Scope::kAllHyponyms : A3Scope::kCandidates8, f.extended,
                         negative, render);
}

DecisionMode decision_for(const LabelFlags& f, const LabelSpace& space) {
  DecisionMode mode;
  switch (space.approach) {
    case Approach::kA1:
    case Approach::kA1Variant:
      mode.kind = DecisionKind::kBinaryArgmax;
      break;
    case Approach::kA2:
      mode.kind = DecisionKind::kDefsVsNegative;
      mode.aggregation = parse_aggregation(f.aggregate);
      break;
    case Approach::kA3Plain:
    case Approach::kA3Extended:
      mode.kind = parse_decision_kind(f.mode);
      mode.suggestion_set = f.subset.empty() ? default_search_spec().candidates : split_list(f.subset);
      break;
  }
  validate(mode, space);
  return mode;
}

struct SplitFlags {
  std::string subtask = "A";
  std::string split = "dev";
  std::string data;

  void attach(CLI::App* cmd) {
    cmd->add_option("--subtask", subtask, "A (software forums) | B (hotel reviews)")
        ->check(CLI::IsMember({"A", "B", "a", "b"}))
        ->capture_default_str();
    cmd->add_option("--split", split, "train | dev | test")
        ->check(CLI::IsMember({"train", "dev", "test"}))
        ->capture_default_str();
    cmd->add_option("--data", data, "dataset CSV, overrides the configured path");
  }

  std::string stem() const { return std::string(to_string(parse_subtask(subtask))) + "-" + split; }
};

void print_synset(std::ostream& out, const wordnet::LexiconSnapshot& lex, const wordnet::Synset& s) {
  const auto name = lex.name_of(s.id);
  out << (name ? name->str() : wordnet::to_string(s.id)) << "\t" << wordnet::first_lemma(s) << "\t"
      << wordnet::definition(s) << "\n";
}

std::string help_footer(const CLI::App& app) {
  std::string text = "Command flags:\n";
  for (const CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    std::vector<std::string> names;
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_name() == "--help") continue;
      names.push_back(opt->get_name(false, true));
    }
    for (const CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; })) {
      names.push_back(nested->get_name());
    }
    text += "  " + sub->get_name() + ": " + join(names, " ") + "\n";
  }
  text += "Environment: ZS_ENDPOINT, ZS_CACHE override the config file; flags override both.\n"
          "Exit codes: 0 ok, 2 usage, 3 data/format, 4 backend, 5 cache miss.";
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-shot suggestion mining with NLI entailment and WordNet label spaces", "zss"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zss 0.1.0");

  GlobalFlags g;
  g.opts["--config"] = app.add_option("--config", g.config, "JSON run configuration");
  g.opts["--backend"] = app.add_option("--backend", g.backend, "remote | cache_only | remote_with_cache")
                            ->check(CLI::IsMember({"remote", "cache_only", "remote_with_cache"}));
  g.opts["--endpoint"] = app.add_option("--endpoint", g.endpoint, "inference service base URL (env ZS_ENDPOINT)");
  g.opts["--model-id"] = app.add_option("--model-id", g.model_id, "NLI model identifier");
  g.opts["--batch-size"] = app.add_option("--batch-size", g.batch_size, "pairs per request (1..256)");
  g.opts["--timeout-ms"] = app.add_option("--timeout-ms", g.timeout_ms, "request timeout in milliseconds");
  g.opts["--retries"] = app.add_option("--retries", g.retries, "retries after transport failures");
  g.opts["--backoff-ms"] = app.add_option("--backoff-ms", g.backoff_ms, "initial retry delay, doubled per attempt");
  g.opts["--cache"] = app.add_option("--cache", g.cache, "score cache path, JSON Lines (env ZS_CACHE)");
  g.opts["--prob-mode"] = app.add_option("--prob-mode", g.prob_mode, "drop_neutral | three_way")
                              ->check(CLI::IsMember({"drop_neutral", "three_way"}));
  g.opts["--wordnet-dir"] = app.add_option("--wordnet-dir", g.wordnet_dir, "directory with index.noun and data.noun");
  g.opts["--snapshot"] = app.add_option("--snapshot", g.snapshot, "lexicon snapshot JSON (instead of --wordnet-dir)");
  g.opts["--dataset"] = app.add_option("--dataset", g.datasets, "dataset path as SUBTASK.SPLIT=PATH (repeatable)");
  g.opts["--output"] = app.add_option("-o,--output", g.output, "output directory");
  g.opts["--seed"] = app.add_option("--seed", g.seed, "random seed (default 2019)");
  g.opts["--jobs"] = app.add_option("--jobs", g.jobs, "worker threads");
  app.fallthrough();

  // wordnet
  auto* wn = app.add_subcommand("wordnet", "inspect the WordNet noun database or write a snapshot");
  wn->require_subcommand(1);
  std::string wn_name;
  auto* wn_show = wn->add_subcommand("show", "print one synset");
  wn_show->add_option("name", wn_name, "sense name, e.g. message.n.02")->required();
  auto* wn_hypo = wn->add_subcommand("hyponyms", "list direct hyponyms (name, first lemma, definition)");
  wn_hypo->add_option("name", wn_name, "sense name")->required();
  std::string wn_out;
  auto* wn_snap = wn->add_subcommand("snapshot", "write a JSON lexicon snapshot");
  wn_snap->add_option("--out", wn_out, "snapshot path")->required();

  // labels
  auto* labels = app.add_subcommand("labels", "build a label space and export it as JSON");
  LabelFlags labels_flags;
  labels_flags.attach(labels, false);
  labels->add_option("--mode", labels_flags.mode, "a3 decision rule the space is built for")
      ->check(CLI::IsMember({"mapping", "competition"}));
  std::string labels_out;
  labels->add_option("--out", labels_out, "write to file instead of stdout");

  // score
  auto* score = app.add_subcommand("score", "populate the score cache for a split and label space");
  LabelFlags score_labels;
  score_labels.attach(score, false);
  score->add_option("--mode", score_labels.mode, "a3 decision rule the space is built for")
      ->check(CLI::IsMember({"mapping", "competition"}));
  SplitFlags score_split;
  score_split.attach(score);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "run an approach on a split; writes predictions and metrics");
  LabelFlags classify_labels;
  classify_labels.attach(classify_cmd, true);
  SplitFlags classify_split;
  classify_split.attach(classify_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a predictions CSV against gold labels");
  std::string predictions_path;
  eval_cmd->add_option("--predictions", predictions_path, "predictions CSV")->required();
  SplitFlags eval_split;
  eval_split.attach(eval_cmd);
  std::string eval_format = "table";
  eval_cmd->add_option("--format", eval_format, "table | json")->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  // search
  auto* search_cmd = app.add_subcommand("search", "exhaustive label-subset search on a labelled split");
  SearchSpec spec = default_search_spec();
  std::string candidates = join(spec.candidates, ",");
  std::string search_mode = "mapping";
  std::string search_format = "table";
  search_cmd->add_option("--candidates", candidates, "comma-separated candidate label ids")->capture_default_str();
  search_cmd->add_option("--k-min", spec.k_min, "smallest subset size")->capture_default_str();
  search_cmd->add_option("--k-max", spec.k_max, "largest subset size")->capture_default_str();
  search_cmd->add_option("--mode", search_mode, "mapping | competition | both")
      ->check(CLI::IsMember({"mapping", "competition", "both"}))
      ->capture_default_str();
  search_cmd->add_option("--top-n", spec.top_n, "rows per subset size")->capture_default_str();
  search_cmd->add_option("--format", search_format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  std::string search_cache;
  search_cmd->add_option("--cache", search_cache, "score cache path (same as the global --cache)");
  LabelFlags search_labels;
  search_labels.approach = "a3";
  search_cmd->add_option("--scope", search_labels.scope, "label scope for mapping mode: candidates | all")
      ->check(CLI::IsMember({"candidates", "all"}));
  search_cmd->add_flag("--extended", search_labels.extended, "join all lemmas with 'or'");
  search_cmd->add_flag("--smart-article", search_labels.smart_article, "use 'an' before vowels");
  search_cmd->add_flag("--space-underscores", search_labels.space_underscores, "render underscores as spaces");
  SplitFlags search_split;
  search_split.attach(search_cmd);

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "random uniform labelling baseline (mean F1 over trials)");
  SplitFlags baseline_split;
  baseline_split.split = "test";
  baseline_split.attach(baseline_cmd);
  std::size_t trials = 10000;
  baseline_cmd->add_option("--trials", trials, "number of trials")->capture_default_str();
  std::size_t positives = 0, negatives = 0;
  auto* pos_opt = baseline_cmd->add_option("--positives", positives, "use a synthetic corpus with this many suggestions");
  auto* neg_opt = baseline_cmd->add_option("--negatives", negatives, "... and this many non-suggestions");
  pos_opt->needs(neg_opt);
  neg_opt->needs(pos_opt);

  // freq
  auto* freq_cmd = app.add_subcommand("freq", "relative word frequencies: subtask A vs subtask B");
  std::string freq_subtask = "A";
  std::string freq_classes = "suggestion";
  std::size_t top_k = 30;
  std::string stopwords_path;
  std::vector<std::string> data_a, data_b;
  freq_cmd->add_option("--subtask", freq_subtask, "subtask placed in column a (the other goes to column b)")
      ->check(CLI::IsMember({"A", "B", "a", "b"}))
      ->capture_default_str();
  freq_cmd->add_option("--classes", freq_classes, "suggestion | non_suggestion | all")
      ->check(CLI::IsMember({"suggestion", "non_suggestion", "all"}))
      ->capture_default_str();
  freq_cmd->add_option("--top-k", top_k, "top tokens taken from each profile")->capture_default_str();
  freq_cmd->add_option("--stopwords", stopwords_path, "file with one stopword per line");
  freq_cmd->add_option("--data-a", data_a, "CSV files for column a (default: configured splits)");
  freq_cmd->add_option("--data-b", data_b, "CSV files for column b (default: configured splits)");

  app.footer([&app] { return help_footer(app); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config = effective_config(g);
    const CLI::App* cmd = app.get_subcommands().front();
    if (cmd == search_cmd && !search_cache.empty()) config.scorer.cache_path = search_cache;
    Session session(config, cmd->get_name(), args, out, err);

    if (cmd == wn) {
      const auto& lex = session.lexicon();
      if (wn_show->parsed()) {
        const auto& s = lex.at(wordnet::resolve_sense(lex, wordnet::SenseName::parse(wn_name)));
        out << "synset: " << wordnet::to_string(s.id) << "\n"
            << "lemmas: " << join(s.lemmas, ", ") << "\n"
            << "gloss: " << s.gloss << "\n"
            << "definition: " << wordnet::definition(s) << "\n"
            << "hypernyms: " << s.hypernyms.size() << ", hyponyms: " << s.hyponyms.size() << "\n";
      } else if (wn_hypo->parsed()) {
        const auto id = wordnet::resolve_sense(lex, wordnet::SenseName::parse(wn_name));
        for (const auto& h : wordnet::hyponyms(lex, id)) print_synset(out, lex, h);
      } else {
        wordnet::write_snapshot(lex, wn_out);
        out << "wrote " << lex.size() << " synsets to " << wn_out << "\n";
      }
      return 0;
    }

    if (cmd == labels) {
      const LabelSpace space = build_space(labels_flags, session, labels_flags.mode);
      const std::string doc = export_label_space(space);
      if (labels_out.empty()) {
        out << doc;
      } else {
        std::ofstream o(labels_out, std::ios::binary);
        if (!o) throw Error(ErrorKind::kIo, "cannot write " + labels_out);
        o << doc;
      }
      return 0;
    }

    if (cmd == score) {
      const LabelSpace space = build_space(score_labels, session, score_labels.mode);
      const LabeledCorpus corpus = session.corpus(score_split.subtask, score_split.split, score_split.data);
      Scorer& scorer = session.scorer();
      score_corpus(corpus, space, scorer, config.prob_mode);
      out << "scored " << corpus.size() << " sentences x " << space.labels.size() << " hypotheses; "
          << scorer.remote_calls() << " remote call(s)\n";
      session.finish("score-" + score_labels.tag() + "-" + score_split.stem());
      return 0;
    }

    if (cmd == classify_cmd) {
      const LabelSpace space = build_space(classify_labels, session, classify_labels.mode);
      const DecisionMode mode = decision_for(classify_labels, space);
      const LabeledCorpus corpus = session.corpus(classify_split.subtask, classify_split.split, classify_split.data);
      const auto predictions = classify_corpus(corpus, space, mode, session.scorer(), config.prob_mode);
      const EvalResult result = evaluate(predictions, corpus);
      const std::string stem = "classify-" + classify_labels.tag() + "-" + classify_split.stem();
      session.write_artifact(stem + ".predictions.csv", predictions_to_csv(predictions));
      session.write_artifact(stem + ".predictions.json", predictions_to_json(predictions));
      session.write_artifact(stem + ".eval.json", eval_to_json(result));
      out << eval_table(result);
      session.finish(stem);
      return 0;
    }

    if (cmd == eval_cmd) {
      const LabeledCorpus corpus = session.corpus(eval_split.subtask, eval_split.split, eval_split.data);
      std::ifstream in(predictions_path, std::ios::binary);
      if (!in) throw Error(ErrorKind::kIo, "cannot open " + predictions_path);
      session.record_input(predictions_path);
      const auto predictions = predictions_from_csv(in, predictions_path);
      const EvalResult result = evaluate(predictions, corpus);
      const std::string stem = "eval-" + fs::path(predictions_path).stem().string() + "-" + eval_split.stem();
      session.write_artifact(stem + ".eval.json", eval_to_json(result));
      out << (eval_format == "json" ? eval_to_json(result) : eval_table(result));
      session.finish(stem);
      return 0;
    }

    if (cmd == search_cmd) {
      spec.candidates = split_list(candidates);
      const LabeledCorpus corpus = session.corpus(search_split.subtask, search_split.split, search_split.data);
      const ReportFormat format = parse_report_format(search_format);
      const std::string ext = search_format == "table" ? "txt" : search_format;
      std::vector<std::string> modes = {search_mode};
      if (search_mode == "both") modes = {"mapping", "competition"};
      for (const std::string& m : modes) {
        spec.mode = parse_decision_kind(m);
        validate(spec);
        LabelFlags lf = search_labels;
        lf.mode = m;
        const LabelSpace space = build_space(lf, session, m);
        const auto scores = score_corpus(corpus, space, session.scorer(), config.prob_mode);
        const auto ranked = search(spec, corpus, space, scores, config.jobs);
        const std::string doc = report(ranked, format, spec.top_n);
        session.write_artifact("search-" + lf.tag() + "-" + search_split.stem() + "." + ext, doc);
        if (modes.size() > 1) out << "== " << m << " mode ==\n";
        out << doc;
      }
      session.finish("search-" + search_mode + "-" + search_split.stem());
      return 0;
    }

    if (cmd == baseline_cmd) {
      LabeledCorpus corpus;
      std::string stem;
      if (pos_opt->count() > 0) {
        corpus = synthetic_corpus(positives, negatives);
        stem = "baseline-p" + std::to_string(positives) + "-n" + std::to_string(negatives);
      } else {
        corpus = session.corpus(baseline_split.subtask, baseline_split.split, baseline_split.data);
        stem = "baseline-" + baseline_split.stem();
      }
      const BaselineResult result = random_baseline(corpus, trials, config.seed, config.jobs);
      session.write_artifact(stem + ".json", baseline_to_json(result));
      out << "mean_f1 " << format_fixed(result.mean_f1, 4) << "  std_f1 " << format_fixed(result.std_f1, 4)
          << "  trials " << result.trials << "  seed " << result.seed << "\n";
      session.finish(stem);
      return 0;
    }

    if (cmd == freq_cmd) {
      const std::string first = to_string(parse_subtask(freq_subtask));
      const std::string second = first == "A" ? "B" : "A";
      const auto load = [&](const std::string& subtask, const std::vector<std::string>& explicit_paths) {
        std::vector<LabeledCorpus> corpora;
        const Subtask t = parse_subtask(subtask);
        if (!explicit_paths.empty()) {
          for (const auto& p : explicit_paths) {
            session.record_input(p);
            corpora.push_back(load_semeval_csv(p, t, Split::kTest));
          }
          return corpora;
        }
        // Subtask B shares its training split with A, so only dev+test describe hotels.
        const std::vector<std::string> splits =
            t == Subtask::kA ? std::vector<std::string>{"train", "dev", "test"} : std::vector<std::string>{"dev", "test"};
        const auto configured = config.datasets.find(subtask);
        for (const auto& split : splits) {
          if (configured == config.datasets.end() || !configured->second.count(split)) continue;
          corpora.push_back(session.corpus(subtask, split, ""));
        }
        if (corpora.empty()) {
          throw Error(ErrorKind::kUsage, "freq: no datasets configured for subtask " + subtask +
                                             " (use --dataset or --data-" + (subtask == first ? "a" : "b") + ")");
        }
        return corpora;
      };
      std::set<std::string> stopwords;
      if (!stopwords_path.empty()) {
        std::istringstream in(read_file(stopwords_path));
        for (std::string w; std::getline(in, w);) {
          if (!trim(w).empty()) stopwords.insert(ascii_lower(trim(w)));
        }
      }
      const ClassFilter filter = parse_class_filter(freq_classes);
      const auto a = profile(load(first, data_a), filter, first, stopwords);
      const auto b = profile(load(second, data_b), filter, second, stopwords);
      const auto rows = compare(a, b, top_k);
      const std::string csv = comparison_csv(rows);
      session.write_artifact("freq-" + freq_classes + "-" + first + "-vs-" + second + ".csv", csv);
      out << csv;
      session.finish("freq-" + freq_classes + "-" + first + "-vs-" + second);
      return 0;
    }
    throw Error(ErrorKind::kUsage, "no command given");
  } catch (const Error& e) {
    err << "zss: " << to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "zss: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace zss::cli
