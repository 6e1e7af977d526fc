#pragma once

// Pair scoring front-end: serves (premise, hypothesis) logits from a
// persistent cache and/or a remote NLI inference service.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zss/entailment.hpp"
#include "zss/score_cache.hpp"

namespace zss {

struct PremiseHypothesis {
  std::string premise;
  std::string hypothesis;

  bool operator==(const PremiseHypothesis&) const = default;
};

/// Anything that can turn a batch of pairs into logits, in request order.
/// Implementations throw Error(kBackend) for retryable transport failures
/// and Error(kProtocol) for unusable answers.
class EntailmentBackend {
 public:
  virtual ~EntailmentBackend() = default;
  virtual std::vector<Logits> score_batch(const std::string& model_id,
                                          std::span<const PremiseHypothesis> pairs) = 0;
};

/// Client for the JSON-over-HTTP entailment service:
///   POST {endpoint}/v1/entailment  {model_id, pairs: [{premise, hypothesis}]}
///   -> {model_id, logits: [[e, n, c], ...], label_order: [...]}
class HttpBackend : public EntailmentBackend {
 public:
  HttpBackend(std::string endpoint, std::chrono::milliseconds timeout);
  std::vector<Logits> score_batch(const std::string& model_id,
                                  std::span<const PremiseHypothesis> pairs) override;

 private:
  std::string scheme_host_port_;
  std::string base_path_;
  std::chrono::milliseconds timeout_;
};

enum class BackendKind { kRemote, kCacheOnly, kRemoteWithCache };

const char* to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view text);

/// Request limit of the inference service.
inline constexpr std::size_t kMaxServiceBatch = 256;

struct ScorerConfig {
  BackendKind backend = BackendKind::kRemoteWithCache;
  std::string endpoint = "http://127.0.0.1:8000";
  std::string model_id = std::string(kDefaultModelId);
  std::size_t batch_size = 16;
  std::chrono::milliseconds request_timeout{60'000};
  int retries = 3;
  std::chrono::milliseconds backoff{500};  // doubles after every failed attempt
  std::optional<std::filesystem::path> cache_path;
  std::size_t jobs = 1;  // concurrent in-flight batches
};

/// Throws Error(kUsage) when the configuration is inconsistent.
void validate(const ScorerConfig& config);

class Scorer {
 public:
  /// `backend` defaults to an HttpBackend for config.endpoint; `cache`
  /// defaults to opening config.cache_path when one is set.
  explicit Scorer(ScorerConfig config, std::shared_ptr<EntailmentBackend> backend = nullptr,
                  std::shared_ptr<ScoreCache> cache = nullptr);

  /// One record per pair, in input order. Cache hits never touch the
  /// backend; misses are fetched in batches of at most batch_size and written
  /// back (remote_with_cache). Throws CacheMissError in cache_only mode,
  /// Error(kBackend) once retries are exhausted, Error(kProtocol) on bad
  /// service answers, Error(kContract) for an empty request.
  std::vector<ScoreRecord> score_pairs(std::span<const PremiseHypothesis> pairs);

  const ScorerConfig& config() const { return config_; }
  const std::shared_ptr<ScoreCache>& cache() const { return cache_; }
  /// Number of score_batch calls issued so far, including retries.
  std::size_t remote_calls() const { return remote_calls_.load(); }

 private:
  std::vector<Logits> fetch_with_retry(std::span<const PremiseHypothesis> batch);

  ScorerConfig config_;
  std::shared_ptr<EntailmentBackend> backend_;
  std::shared_ptr<ScoreCache> cache_;
  std::atomic<std::size_t> remote_calls_{0};
};

}  // namespace zss
