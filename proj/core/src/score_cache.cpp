#include "zss/score_cache.hpp"

#include <unistd.h>

#include <fstream>

#include "json.hpp"
#include "zss/error.hpp"

namespace zss {

using nlohmann::json;

std::string encode_cache_line(const ScoreRecord& r) {
  json line = {{"key", CacheKey::of(r).digest},
               {"model_id", r.model_id},
               {"premise", r.premise},
               {"hypothesis", r.hypothesis},
               {"logits", {r.logits.entailment, r.logits.neutral, r.logits.contradiction}}};
  return line.dump();
}

namespace {

std::optional<ScoreRecord> decode_line(const std::string& text) {
  try {
    const json line = json::parse(text);
    ScoreRecord r;
    r.model_id = line.at("model_id").get<std::string>();
    r.premise = line.at("premise").get<std::string>();
    r.hypothesis = line.at("hypothesis").get<std::string>();
    const json& logits = line.at("logits");
    if (!logits.is_array() || logits.size() != 3) return std::nullopt;
    r.logits = {logits[0].get<double>(), logits[1].get<double>(), logits[2].get<double>()};
    if (!is_complete(r)) return std::nullopt;
    if (line.at("key").get<std::string>() != CacheKey::of(r).digest) return std::nullopt;
    return r;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

ScoreCache::ScoreCache(std::filesystem::path path) : path_(std::move(path)) {
  bool needs_newline = false;
  {
    std::ifstream in(path_, std::ios::binary);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      if (auto r = decode_line(line)) {
        records_.insert_or_assign(CacheKey::of(*r).digest, std::move(*r));
      } else {
        corrupt_line_numbers_.push_back(lineno);
      }
    }
    // A torn final line has no newline; start the next append on a fresh line.
    if (lineno > 0) {
      in.clear();
      in.seekg(-1, std::ios::end);
      char last = '\n';
      if (in.get(last) && last != '\n') needs_newline = true;
    }
  }
  file_.reset(std::fopen(path_.c_str(), "ab"));
  if (!file_) throw Error(ErrorKind::kIo, "cannot open score cache for appending: " + path_.string());
  if (needs_newline) std::fputc('\n', file_.get());
}

ScoreCache::~ScoreCache() {
  if (file_) std::fflush(file_.get());
}

std::optional<ScoreRecord> ScoreCache::get(const CacheKey& key) const {
  std::shared_lock lock(records_mutex_);
  const auto it = records_.find(key.digest);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::optional<ScoreRecord> ScoreCache::get(std::string_view model_id, std::string_view premise,
                                           std::string_view hypothesis) const {
  auto r = get(CacheKey::of(model_id, premise, hypothesis));
  if (r && (r->model_id != model_id || r->premise != premise || r->hypothesis != hypothesis)) {
    return std::nullopt;
  }
  return r;
}

void ScoreCache::put(const ScoreRecord& record) {
  if (!is_complete(record)) {
    throw Error(ErrorKind::kContract, "score cache: refusing incomplete record for premise '" +
                                          record.premise + "'");
  }
  const std::string line = encode_cache_line(record) + "\n";
  std::lock_guard write_lock(write_mutex_);
  if (std::fwrite(line.data(), 1, line.size(), file_.get()) != line.size()) {
    throw Error(ErrorKind::kIo, "score cache: write failed: " + path_.string());
  }
  std::unique_lock lock(records_mutex_);
  records_.insert_or_assign(CacheKey::of(record).digest, record);
}

void ScoreCache::flush() {
  std::lock_guard write_lock(write_mutex_);
  if (std::fflush(file_.get()) != 0 || ::fsync(::fileno(file_.get())) != 0) {
    throw Error(ErrorKind::kIo, "score cache: flush failed: " + path_.string());
  }
}

std::size_t ScoreCache::size() const {
  std::shared_lock lock(records_mutex_);
  return records_.size();
}

}  // namespace zss
