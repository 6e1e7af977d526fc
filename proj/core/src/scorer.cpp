#include "zss/scorer.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "zss/error.hpp"

namespace zss {

const char* to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kRemote: return "remote";
    case BackendKind::kCacheOnly: return "cache_only";
    case BackendKind::kRemoteWithCache: return "remote_with_cache";
  }
  return "?";
}

BackendKind parse_backend_kind(std::string_view text) {
  for (BackendKind k : {BackendKind::kRemote, BackendKind::kCacheOnly, BackendKind::kRemoteWithCache}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::kUsage, "unknown backend '" + std::string(text) + "'");
}

void validate(const ScorerConfig& c) {
  const auto usage = [](const std::string& what) { return Error(ErrorKind::kUsage, "scorer config: " + what); };
  if (c.batch_size < 1 || c.batch_size > kMaxServiceBatch) {
    throw usage("batch_size must be in [1, " + std::to_string(kMaxServiceBatch) + "]");
  }
  if (c.retries < 0) throw usage("retries must be non-negative");
  if (c.model_id.empty()) throw usage("model_id must be non-empty");
  if (c.jobs < 1) throw usage("jobs must be >= 1");
  if (c.backend != BackendKind::kRemote && !c.cache_path) {
    throw usage(std::string(to_string(c.backend)) + " requires a cache path");
  }
}

Scorer::Scorer(ScorerConfig config, std::shared_ptr<EntailmentBackend> backend,
               std::shared_ptr<ScoreCache> cache)
    : config_(std::move(config)), backend_(std::move(backend)), cache_(std::move(cache)) {
  validate(config_);
  if (!cache_ && config_.cache_path && config_.backend != BackendKind::kRemote) {
    cache_ = std::make_shared<ScoreCache>(*config_.cache_path);
  }
  if (!backend_ && config_.backend != BackendKind::kCacheOnly) {
    backend_ = std::make_shared<HttpBackend>(config_.endpoint, config_.request_timeout);
  }
}

std::vector<Logits> Scorer::fetch_with_retry(std::span<const PremiseHypothesis> batch) {
  auto delay = config_.backoff;
  for (int attempt = 0;; ++attempt) {
    ++remote_calls_;
    try {
      auto logits = backend_->score_batch(config_.model_id, batch);
      if (logits.size() != batch.size()) {
        throw Error(ErrorKind::kProtocol, "backend returned " + std::to_string(logits.size()) +
                                              " results for " + std::to_string(batch.size()) + " pairs");
      }
      return logits;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBackend || attempt >= config_.retries) throw;
    }
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

std::vector<ScoreRecord> Scorer::score_pairs(std::span<const PremiseHypothesis> pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kContract, "score_pairs: no pairs given");

  std::vector<std::optional<ScoreRecord>> results(pairs.size());
  // Unique missing pairs, each with every request index that needs it.
  std::vector<PremiseHypothesis> todo;
  std::vector<std::vector<std::size_t>> todo_targets;
  std::unordered_map<std::string, std::size_t> todo_by_key;

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (cache_) {
      if (auto hit = cache_->get(config_.model_id, p.premise, p.hypothesis)) {
        results[i] = std::move(*hit);
        continue;
      }
    }
    const std::string key = CacheKey::of(config_.model_id, p.premise, p.hypothesis).digest;
    const auto [it, fresh] = todo_by_key.emplace(key, todo.size());
    if (fresh) {
      todo.push_back(p);
      todo_targets.emplace_back();
    }
    todo_targets[it->second].push_back(i);
  }

  if (todo.empty()) {
    std::vector<ScoreRecord> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
  }

  if (config_.backend == BackendKind::kCacheOnly) {
    std::vector<std::size_t> missing;
    for (const auto& targets : todo_targets) missing.insert(missing.end(), targets.begin(), targets.end());
    std::sort(missing.begin(), missing.end());
    throw CacheMissError(std::move(missing));
  }

  const std::size_t batch = config_.batch_size;
  const std::size_t n_batches = (todo.size() + batch - 1) / batch;
  std::vector<std::vector<Logits>> fetched(n_batches);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      const std::size_t begin = b * batch;
      const std::size_t len = std::min(batch, todo.size() - begin);
      try {
        fetched[b] = fetch_with_retry(std::span(todo).subspan(begin, len));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_threads = std::min(config_.jobs, n_batches);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  }
  // Batches that did complete are kept even when another one failed.
  for (std::size_t b = 0; b < n_batches; ++b) {
    for (std::size_t j = 0; j < fetched[b].size(); ++j) {
      const std::size_t u = b * batch + j;
      ScoreRecord record{config_.model_id, todo[u].premise, todo[u].hypothesis, fetched[b][j]};
      if (cache_) cache_->put(record);
      for (std::size_t target : todo_targets[u]) results[target] = record;
    }
  }
  if (cache_) cache_->flush();
  if (failure) std::rethrow_exception(failure);

  std::vector<ScoreRecord> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace zss
