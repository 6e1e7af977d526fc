#include "zss/wordnet.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>

#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss::wordnet {

std::string to_string(SynsetId id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08u-%c", static_cast<unsigned>(id.offset),
                static_cast<char>(id.pos));
  return buf;
}

SenseName SenseName::parse(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorKind::kParse, "malformed sense name '" + std::string(text) +
                                        "' (expected lemma.n.NN)");
  };
  const auto last_dot = text.rfind('.');
  if (last_dot == std::string_view::npos || last_dot == 0) throw bad();
  const auto pos_dot = text.rfind('.', last_dot - 1);
  if (pos_dot == std::string_view::npos || pos_dot == 0) throw bad();
  const std::string_view lemma = text.substr(0, pos_dot);
  const std::string_view pos = text.substr(pos_dot + 1, last_dot - pos_dot - 1);
  const std::string_view number = text.substr(last_dot + 1);
  if (pos != "n") throw bad();
  int sense = 0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), sense);
  if (ec != std::errc{} || ptr != number.data() + number.size() || sense <= 0) throw bad();
  SenseName out;
  out.lemma = ascii_lower(lemma);
  out.sense_number = sense;
  return out;
}

std::string SenseName::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, ".%c.%02d", static_cast<char>(pos), sense_number);
  return lemma + buf;
}

const std::string& first_lemma(const Synset& synset) { return synset.lemmas.front(); }

const std::vector<std::string>& all_lemmas(const Synset& synset) { return synset.lemmas; }

std::string definition(const Synset& synset) {
  const auto cut = synset.gloss.find("; \"");
  return std::string(trim(std::string_view(synset.gloss).substr(0, cut)));
}

LexiconSnapshot::LexiconSnapshot(std::string release_id, std::vector<Synset> synsets,
                                 SenseIndex sense_index)
    : release_id_(std::move(release_id)),
      synsets_(std::move(synsets)),
      sense_index_(std::move(sense_index)) {
  by_offset_.reserve(synsets_.size());
  for (std::size_t i = 0; i < synsets_.size(); ++i) {
    const Synset& s = synsets_[i];
    if (s.lemmas.empty()) {
      throw Error(ErrorKind::kIntegrity, "synset " + to_string(s.id) + " has no lemmas");
    }
    if (!by_offset_.emplace(s.id.offset, i).second) {
      throw Error(ErrorKind::kIntegrity, "duplicate synset offset " + to_string(s.id));
    }
  }
  for (const Synset& s : synsets_) {
    for (const auto* edges : {&s.hyponyms, &s.hypernyms}) {
      for (SynsetId target : *edges) {
        if (!find(target)) {
          throw Error(ErrorKind::kIntegrity, "synset " + to_string(s.id) +
                                                 " points at missing synset " + to_string(target));
        }
      }
    }
  }
  for (const auto& [name, id] : sense_index_) {
    if (!find(id)) {
      throw Error(ErrorKind::kIntegrity,
                  "sense " + name.str() + " points at missing synset " + to_string(id));
    }
  }
}

const Synset* LexiconSnapshot::find(SynsetId id) const {
  const auto it = by_offset_.find(id.offset);
  if (it == by_offset_.end()) return nullptr;
  const Synset& s = synsets_[it->second];
  return s.id == id ? &s : nullptr;
}

const Synset& LexiconSnapshot::at(SynsetId id) const {
  if (const Synset* s = find(id)) return *s;
  throw Error(ErrorKind::kNotFound, "unknown synset " + to_string(id));
}

std::optional<SenseName> LexiconSnapshot::name_of(SynsetId id) const {
  const Synset& s = at(id);
  const std::string lemma = ascii_lower(first_lemma(s));
  for (auto it = sense_index_.lower_bound(SenseName{lemma, id.pos, 0});
       it != sense_index_.end() && it->first.lemma == lemma; ++it) {
    if (it->second == id) return it->first;
  }
  return std::nullopt;
}

bool LexiconSnapshot::operator==(const LexiconSnapshot& other) const {
  return release_id_ == other.release_id_ && synsets_ == other.synsets_ &&
         sense_index_ == other.sense_index_;
}

namespace {

bool is_license_line(std::string_view line) { return line.size() >= 2 && line.substr(0, 2) == "  "; }

template <typename Int>
bool parse_int(std::string_view field, Int& out, int base = 10) {
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out, base);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

bool parse_offset(std::string_view field, std::uint32_t& out) {
  return field.size() == 8 && parse_int(field, out);
}

}  // namespace

LexiconSnapshot load_wordnet(std::istream& index_file, std::istream& data_file,
                             std::string release_id) {
  std::vector<Synset> synsets;
  std::vector<std::size_t> source_line;
  std::unordered_map<std::uint32_t, std::size_t> by_offset;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(data_file, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF copies
    if (is_license_line(line) || trim(line).empty()) continue;
    const auto fail = [&](const std::string& what) { return ParseError("data.noun", lineno, what); };

    const auto bar = line.find('|');
    if (bar == std::string::npos) throw fail("missing '|' gloss separator");
    const auto fields = split_whitespace(std::string_view(line).substr(0, bar));
    if (fields.size() < 6) throw fail("too few fields");

    Synset synset;
    if (!parse_offset(fields[0], synset.id.offset)) throw fail("bad synset offset");
    if (fields[2] != "n") throw fail("not a noun synset (ss_type '" + std::string(fields[2]) + "')");
    unsigned word_count = 0;
    if (!parse_int(fields[3], word_count, 16) || word_count == 0) throw fail("bad word count");
    std::size_t at = 4;
    if (fields.size() < at + 2 * word_count + 1) throw fail("truncated lemma list");
    for (unsigned w = 0; w < word_count; ++w, at += 2) synset.lemmas.emplace_back(fields[at]);
    unsigned pointer_count = 0;
    if (!parse_int(fields[at], pointer_count)) throw fail("bad pointer count");
    ++at;
    if (fields.size() < at + 4 * static_cast<std::size_t>(pointer_count)) {
      throw fail("truncated pointer list");
    }
    for (unsigned p = 0; p < pointer_count; ++p, at += 4) {
      const std::string_view symbol = fields[at];
      SynsetId target;
      if (!parse_offset(fields[at + 1], target.offset)) throw fail("bad pointer offset");
      if (fields[at + 3].size() != 4) throw fail("bad pointer source/target field");
      if (fields[at + 2] != "n") continue;
      if (symbol == "~") {
        synset.hyponyms.push_back(target);
      } else if (symbol == "@") {
        synset.hypernyms.push_back(target);
      }
    }
    synset.gloss = std::string(trim(std::string_view(line).substr(bar + 1)));

    if (!by_offset.emplace(synset.id.offset, synsets.size()).second) {
      throw Error(ErrorKind::kIntegrity, "data.noun:" + std::to_string(lineno) +
                                             ": duplicate synset offset " + to_string(synset.id));
    }
    synsets.push_back(std::move(synset));
    source_line.push_back(lineno);
  }

  for (std::size_t i = 0; i < synsets.size(); ++i) {
    for (const auto* edges : {&synsets[i].hyponyms, &synsets[i].hypernyms}) {
      for (SynsetId target : *edges) {
        if (!by_offset.count(target.offset)) {
          throw Error(ErrorKind::kIntegrity, "data.noun:" + std::to_string(source_line[i]) +
                                                 ": dangling pointer to " + to_string(target));
        }
      }
    }
  }

  LexiconSnapshot::SenseIndex sense_index;
  lineno = 0;
  while (std::getline(index_file, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF copies
    if (is_license_line(line) || trim(line).empty()) continue;
    const auto fail = [&](const std::string& what) { return ParseError("index.noun", lineno, what); };
    const auto fields = split_whitespace(line);
    if (fields.size() < 6) throw fail("too few fields");
    if (fields[1] != "n") throw fail("not a noun index line");
    unsigned synset_count = 0;
    unsigned pointer_count = 0;
    if (!parse_int(fields[2], synset_count) || synset_count == 0) throw fail("bad synset_cnt");
    if (!parse_int(fields[3], pointer_count)) throw fail("bad p_cnt");
    const std::size_t first_offset = 4 + static_cast<std::size_t>(pointer_count) + 2;
    if (fields.size() != first_offset + synset_count) {
      throw fail("expected " + std::to_string(synset_count) + " synset offsets");
    }
    const std::string lemma = ascii_lower(fields[0]);
    for (unsigned k = 0; k < synset_count; ++k) {
      SynsetId id;
      if (!parse_offset(fields[first_offset + k], id.offset)) throw fail("bad synset offset");
      if (!by_offset.count(id.offset)) {
        throw Error(ErrorKind::kIntegrity, "index.noun:" + std::to_string(lineno) +
                                               ": dangling synset offset " + to_string(id));
      }
      sense_index.emplace(SenseName{lemma, Pos::kNoun, static_cast<int>(k + 1)}, id);
    }
  }

  return LexiconSnapshot(std::move(release_id), std::move(synsets), std::move(sense_index));
}

LexiconSnapshot load_wordnet_dir(const std::filesystem::path& dir, std::string release_id) {
  std::ifstream index(dir / "index.noun", std::ios::binary);
  if (!index) throw Error(ErrorKind::kIo, "cannot open " + (dir / "index.noun").string());
  std::ifstream data(dir / "data.noun", std::ios::binary);
  if (!data) throw Error(ErrorKind::kIo, "cannot open " + (dir / "data.noun").string());
  return load_wordnet(index, data, std::move(release_id));
}

SynsetId resolve_sense(const LexiconSnapshot& snapshot, const SenseName& name) {
  const auto it = snapshot.sense_index().find(name);
  if (it == snapshot.sense_index().end()) {
    throw Error(ErrorKind::kNotFound, "unknown sense " + name.str());
  }
  return it->second;
}

std::vector<Synset> hyponyms(const LexiconSnapshot& snapshot, SynsetId id) {
  const Synset& parent = snapshot.at(id);
  std::vector<Synset> out;
  out.reserve(parent.hyponyms.size());
  for (SynsetId child : parent.hyponyms) out.push_back(snapshot.at(child));
  return out;
}

}  // namespace zss::wordnet
