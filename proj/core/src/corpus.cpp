#include "zss/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include "zss/csv.hpp"
#include "zss/error.hpp"

namespace zss {

const char* to_string(BinaryClass c) {
  return c == BinaryClass::kSuggestion ? "suggestion" : "non_suggestion";
}

const char* to_string(Subtask s) { return s == Subtask::kA ? "A" : "B"; }

const char* to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

BinaryClass parse_binary_class(std::string_view text) {
  if (text == "suggestion" || text == "1") return BinaryClass::kSuggestion;
  if (text == "non_suggestion" || text == "0") return BinaryClass::kNonSuggestion;
  throw Error(ErrorKind::kParse, "unknown class '" + std::string(text) + "'");
}

Subtask parse_subtask(std::string_view text) {
  if (text == "A" || text == "a") return Subtask::kA;
  if (text == "B" || text == "b") return Subtask::kB;
  throw Error(ErrorKind::kUsage, "unknown subtask '" + std::string(text) + "' (expected A or B)");
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "dev") return Split::kDev;
  if (text == "test") return Split::kTest;
  throw Error(ErrorKind::kUsage, "unknown split '" + std::string(text) + "' (expected train, dev or test)");
}

std::size_t LabeledCorpus::count(BinaryClass c) const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.gold == c;
  return n;
}

namespace {

bool is_numeric(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if ((c < '0' || c > '9') && c != '-' && c != '+' && c != '.') return false;
  }
  return true;
}

}  // namespace

LabeledCorpus parse_semeval_csv(std::istream& in, Subtask subtask, Split split, const std::string& source) {
  LabeledCorpus corpus;
  corpus.subtask = subtask;
  corpus.split = split;
  std::unordered_set<std::string> seen;

  const auto rows = read_csv(in, source);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    std::size_t width = row.fields.size();
    while (width > 3 && row.fields[width - 1].empty()) --width;
    if (width != 3) {
      throw ParseError(source, row.line, "expected 3 fields (id,sentence,label), got " +
                                             std::to_string(row.fields.size()));
    }
    const std::string& label = row.fields[2];
    if (r == 0 && !is_numeric(label)) continue;  // header
    if (label != "0" && label != "1") {
      throw ParseError(source, row.line, "label must be 0 or 1, got '" + label + "'");
    }
    if (!seen.insert(row.fields[0]).second) {
      throw ParseError(source, row.line, "duplicate sentence id '" + row.fields[0] + "'");
    }
    corpus.items.push_back({row.fields[0], row.fields[1],
                            label == "1" ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion});
  }
  return corpus;
}

LabeledCorpus load_semeval_csv(const std::filesystem::path& path, Subtask subtask, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open dataset " + path.string());
  return parse_semeval_csv(in, subtask, split, path.string());
}

LabeledCorpus synthetic_corpus(std::size_t positives, std::size_t negatives, Subtask subtask, Split split) {
  LabeledCorpus corpus;
  corpus.subtask = subtask;
  corpus.split = split;
  corpus.items.reserve(positives + negatives);
  for (std::size_t i = 0; i < positives + negatives; ++i) {
    const bool pos = i < positives;
    corpus.items.push_back({"s" + std::to_string(i), (pos ? "suggestion " : "other ") + std::to_string(i),
                            pos ? BinaryClass::kSuggestion : BinaryClass::kNonSuggestion});
  }
  return corpus;
}

}  // namespace zss
