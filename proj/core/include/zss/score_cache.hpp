#pragma once

#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "zss/entailment.hpp"

namespace zss {

/// Append-only JSON Lines store of ScoreRecords keyed by CacheKey.
///
/// Each line is {key, model_id, premise, hypothesis, logits: [e, n, c]}.
/// On open the whole file is replayed; later lines for a key supersede
/// earlier ones. Lines that fail to parse, or whose key does not match the
/// digest of their own fields, are skipped and counted. Readers run
/// concurrently; writers are serialized.
class ScoreCache {
 public:
  /// Creates the file if missing. Throws Error(kIo) when the path cannot be
  /// opened for appending.
  explicit ScoreCache(std::filesystem::path path);
  ~ScoreCache();

  ScoreCache(const ScoreCache&) = delete;
  ScoreCache& operator=(const ScoreCache&) = delete;

  std::optional<ScoreRecord> get(std::string_view model_id, std::string_view premise,
                                 std::string_view hypothesis) const;
  std::optional<ScoreRecord> get(const CacheKey& key) const;

  /// Throws Error(kContract) for incomplete records.
  void put(const ScoreRecord& record);

  /// Everything put before this call is on disk when it returns.
  void flush();

  std::size_t size() const;
  std::size_t corrupt_lines() const { return corrupt_line_numbers_.size(); }
  const std::vector<std::size_t>& corrupt_line_numbers() const { return corrupt_line_numbers_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };

  std::filesystem::path path_;
  mutable std::shared_mutex records_mutex_;
  std::unordered_map<std::string, ScoreRecord> records_;
  std::mutex write_mutex_;
  std::unique_ptr<std::FILE, FileCloser> file_;
  std::vector<std::size_t> corrupt_line_numbers_;
};

/// One JSON Lines entry for `record` (no trailing newline).
std::string encode_cache_line(const ScoreRecord& record);

}  // namespace zss
