#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace zss {

enum class BinaryClass { kNonSuggestion = 0, kSuggestion = 1 };
enum class Subtask { kA, kB };
enum class Split { kTrain, kDev, kTest };

const char* to_string(BinaryClass c);
const char* to_string(Subtask s);
const char* to_string(Split s);
BinaryClass parse_binary_class(std::string_view text);
Subtask parse_subtask(std::string_view text);
Split parse_split(std::string_view text);

struct CorpusItem {
  std::string sentence_id;
  std::string sentence;
  BinaryClass gold = BinaryClass::kNonSuggestion;

  bool operator==(const CorpusItem&) const = default;
};

struct LabeledCorpus {
  std::vector<CorpusItem> items;
  Subtask subtask = Subtask::kA;
  Split split = Split::kDev;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  std::size_t count(BinaryClass c) const;
};

/// SemEval-2019 Task 9 layout: id,sentence,label per record. A first row
/// whose label field is not numeric is treated as a header. Sentence text
/// is kept verbatim apart from the CSV quoting. Throws ParseError (with the
/// row's line number) for non-binary labels, duplicate ids or a wrong
/// number of fields.
LabeledCorpus parse_semeval_csv(std::istream& in, Subtask subtask, Split split,
                                const std::string& source = "<csv>");
LabeledCorpus load_semeval_csv(const std::filesystem::path& path, Subtask subtask, Split split);

/// Corpus with the given class counts (positives first) and placeholder
/// sentences; used where only label counts matter.
LabeledCorpus synthetic_corpus(std::size_t positives, std::size_t negatives,
                               Subtask subtask = Subtask::kA, Split split = Split::kTest);

}  // namespace zss
