#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zss/error.hpp"
#include "zss/wordnet.hpp"

namespace zss::wordnet {

using nlohmann::json;

std::string encode_snapshot(const LexiconSnapshot& snapshot) {
  json synsets = json::array();
  for (const Synset& s : snapshot.synsets()) {
    json hypo = json::array();
    for (SynsetId id : s.hyponyms) hypo.push_back(id.offset);
    json hyper = json::array();
    for (SynsetId id : s.hypernyms) hyper.push_back(id.offset);
    synsets.push_back({{"offset", s.id.offset},
                       {"lemmas", s.lemmas},
                       {"gloss", s.gloss},
                       {"hyponyms", std::move(hypo)},
                       {"hypernyms", std::move(hyper)}});
  }
  json index = json::object();
  for (const auto& [name, id] : snapshot.sense_index()) index[name.str()] = id.offset;
  json doc = {{"version", kSnapshotVersion},
              {"release_id", snapshot.release_id()},
              {"synsets", std::move(synsets)},
              {"sense_index", std::move(index)}};
  return doc.dump(1) + "\n";
}

namespace {

SynsetId noun(const json& value) {
  if (!value.is_number_unsigned()) throw Error(ErrorKind::kParse, "synset offset must be unsigned");
  return SynsetId{value.get<std::uint32_t>(), Pos::kNoun};
}

const json& field(const json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw Error(ErrorKind::kParse, std::string("snapshot: missing field '") + name + "'");
  return *it;
}

}  // namespace

LexiconSnapshot decode_snapshot(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("snapshot: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorKind::kParse, "snapshot: top level must be an object");
    const int version = field(doc, "version").get<int>();
    if (version != kSnapshotVersion) {
      throw Error(ErrorKind::kParse, "snapshot: unsupported version " + std::to_string(version));
    }
    std::vector<Synset> synsets;
    for (const json& item : field(doc, "synsets")) {
      Synset s;
      s.id = noun(field(item, "offset"));
      s.lemmas = field(item, "lemmas").get<std::vector<std::string>>();
      s.gloss = field(item, "gloss").get<std::string>();
      for (const json& h : field(item, "hyponyms")) s.hyponyms.push_back(noun(h));
      for (const json& h : field(item, "hypernyms")) s.hypernyms.push_back(noun(h));
      synsets.push_back(std::move(s));
    }
    LexiconSnapshot::SenseIndex index;
    for (const auto& [name, offset] : field(doc, "sense_index").items()) {
      index.emplace(SenseName::parse(name), noun(offset));
    }
    return LexiconSnapshot(field(doc, "release_id").get<std::string>(), std::move(synsets),
                           std::move(index));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("snapshot: schema violation: ") + e.what());
  }
}

void write_snapshot(const LexiconSnapshot& snapshot, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << encode_snapshot(snapshot);
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

LexiconSnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

}  // namespace zss::wordnet
