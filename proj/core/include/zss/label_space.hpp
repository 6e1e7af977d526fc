#pragma once

// Hypothesis sentences and their class mappings for the three labelling
// approaches: direct suggestion statements, WordNet definitions of
// "suggestion", and message-type hyponym templates.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zss/wordnet.hpp"

namespace zss {

enum class MappedClass { kSuggestion, kNonSuggestion, kDeferred };

enum class Approach { kA1, kA1Variant, kA2, kA3Plain, kA3Extended };

const char* to_string(MappedClass c);
const char* to_string(Approach a);
MappedClass parse_mapped_class(std::string_view text);
Approach parse_approach(std::string_view text);

struct LabelSpec {
  std::string label_id;
  std::string hypothesis;
  MappedClass mapped_class = MappedClass::kDeferred;

  bool operator==(const LabelSpec&) const = default;
};

struct LabelSpace {
  Approach approach = Approach::kA1;
  std::vector<LabelSpec> labels;
  std::optional<std::string> negative_label_id;

  std::optional<std::size_t> index_of(std::string_view label_id) const;
  const LabelSpec& at(std::string_view label_id) const;

  bool operator==(const LabelSpace&) const = default;
};

/// Throws Error(kContract) describing the first violated invariant.
void validate(const LabelSpace& space);

inline constexpr std::string_view kTemplatePrefix = "This text is ";
inline constexpr std::string_view kNegativeLabelId = "NOT_SUGGESTION";
inline constexpr std::string_view kNegativeHypothesis = "This text is not a suggestion.";

enum class A1Variant { kIsA, kIsSuggesting };

LabelSpace build_approach1(A1Variant variant);

/// The three definitions of "suggestion" kept as labels.
const std::vector<std::string>& suggestion_definition_senses();

/// Throws Error(kNotFound) if any of the three senses cannot be resolved.
LabelSpace build_approach2(const wordnet::LexiconSnapshot& lexicon);

enum class A3Scope { kCandidates8, kAllHyponyms };

/// Root of the message-type label inventory.
inline constexpr std::string_view kMessageSense = "message.n.02";

/// The eight hyponyms of message.n.02 that are candidates for the
/// suggestion class.
const std::vector<std::string>& candidate_senses();

struct RenderOptions {
  bool smart_article = false;      // "an offer" instead of "a offer"
  bool space_underscores = false;  // "promotional material" instead of "promotional_material"
};

/// One deferred label per in-scope hyponym, ordered by canonical synset name.
/// label_id is the first lemma, or the synset name when that lemma was
/// already taken by an earlier label. Throws Error(kIntegrity) when the
/// message.n.02 subtree is missing or incomplete.
LabelSpace build_approach3(const wordnet::LexiconSnapshot& lexicon, A3Scope scope, bool extended,
                           bool include_negative, const RenderOptions& options = {});

std::string export_label_space(const LabelSpace& space);
/// Throws Error(kParse) on malformed JSON or schema problems; the result is validated.
LabelSpace import_label_space(std::string_view document);

}  // namespace zss
