#pragma once

// In-memory view of the WordNet noun database: synsets, their lemma lists
// and glosses, hypernym/hyponym edges, and the lemma sense index.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zss::wordnet {

enum class Pos : char { kNoun = 'n' };

struct SynsetId {
  std::uint32_t offset = 0;
  Pos pos = Pos::kNoun;

  auto operator<=>(const SynsetId&) const = default;
};

/// Eight-digit zero-padded offset followed by the pos tag, e.g. "06598915-n".
std::string to_string(SynsetId id);

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;  // file order, underscores kept
  std::string gloss;                // everything after the first '|', trimmed
  std::vector<SynsetId> hyponyms;   // '~' pointers, file order
  std::vector<SynsetId> hypernyms;  // '@' pointers, file order

  bool operator==(const Synset&) const = default;
};

/// `lemma.pos.NN` handle, e.g. message.n.02.
struct SenseName {
  std::string lemma;
  Pos pos = Pos::kNoun;
  int sense_number = 1;

  /// Throws Error(kParse) unless `text` has the form lemma.n.<positive int>.
  static SenseName parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const SenseName&) const = default;
};

const std::string& first_lemma(const Synset& synset);
const std::vector<std::string>& all_lemmas(const Synset& synset);

/// Gloss text before the first `; "` example quote.
std::string definition(const Synset& synset);

class LexiconSnapshot {
 public:
  using SenseIndex = std::map<SenseName, SynsetId>;

  LexiconSnapshot() = default;

  /// Throws Error(kIntegrity) if any edge or index entry names a synset that
  /// is not in `synsets`, or if an offset repeats.
  LexiconSnapshot(std::string release_id, std::vector<Synset> synsets, SenseIndex sense_index);

  const std::string& release_id() const { return release_id_; }
  const std::vector<Synset>& synsets() const { return synsets_; }
  const SenseIndex& sense_index() const { return sense_index_; }
  std::size_t size() const { return synsets_.size(); }
  bool empty() const { return synsets_.empty(); }

  const Synset* find(SynsetId id) const;
  /// Throws Error(kNotFound) for unknown ids.
  const Synset& at(SynsetId id) const;

  /// Canonical name: first lemma plus that synset's position on the first
  /// lemma's index line. Empty when the first lemma has no index line.
  std::optional<SenseName> name_of(SynsetId id) const;

  bool operator==(const LexiconSnapshot& other) const;

 private:
  std::string release_id_;
  std::vector<Synset> synsets_;
  SenseIndex sense_index_;
  std::unordered_map<std::uint32_t, std::size_t> by_offset_;
};

/// Parses WordNet `index.noun` and `data.noun` streams. License header lines
/// (two leading spaces) are skipped. Throws ParseError on malformed lines and
/// Error(kIntegrity) on dangling pointer or index offsets.
LexiconSnapshot load_wordnet(std::istream& index_file, std::istream& data_file,
                             std::string release_id = "wordnet-3.0");

/// Convenience wrapper reading `<dir>/index.noun` and `<dir>/data.noun`.
LexiconSnapshot load_wordnet_dir(const std::filesystem::path& dir,
                                 std::string release_id = "wordnet-3.0");

/// Throws Error(kNotFound) when the lemma or sense number is unknown.
SynsetId resolve_sense(const LexiconSnapshot& snapshot, const SenseName& name);

/// Direct hyponyms of `id` in file order. Throws Error(kNotFound) for unknown ids.
std::vector<Synset> hyponyms(const LexiconSnapshot& snapshot, SynsetId id);

inline constexpr int kSnapshotVersion = 1;

/// Versioned JSON document: {version, release_id, synsets, sense_index}.
std::string encode_snapshot(const LexiconSnapshot& snapshot);
/// Throws Error(kParse) on schema/version problems, Error(kIntegrity) on
/// dangling ids.
LexiconSnapshot decode_snapshot(std::string_view document);

void write_snapshot(const LexiconSnapshot& snapshot, const std::filesystem::path& path);
LexiconSnapshot read_snapshot(const std::filesystem::path& path);

}  // namespace zss::wordnet
