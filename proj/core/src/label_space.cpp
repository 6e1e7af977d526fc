#include "zss/label_space.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "zss/error.hpp"
#include "zss/text.hpp"

namespace zss {

const char* to_string(MappedClass c) {
  switch (c) {
    case MappedClass::kSuggestion: return "suggestion";
    case MappedClass::kNonSuggestion: return "non_suggestion";
    case MappedClass::kDeferred: return "deferred";
  }
  return "?";
}

const char* to_string(Approach a) {
  switch (a) {
    case Approach::kA1: return "A1";
    case Approach::kA1Variant: return "A1_VARIANT";
    case Approach::kA2: return "A2";
    case Approach::kA3Plain: return "A3_PLAIN";
    case Approach::kA3Extended: return "A3_EXTENDED";
  }
  return "?";
}

MappedClass parse_mapped_class(std::string_view text) {
  for (MappedClass c : {MappedClass::kSuggestion, MappedClass::kNonSuggestion, MappedClass::kDeferred}) {
    if (text == to_string(c)) return c;
  }
  throw Error(ErrorKind::kParse, "unknown mapped_class '" + std::string(text) + "'");
}

Approach parse_approach(std::string_view text) {
  for (Approach a : {Approach::kA1, Approach::kA1Variant, Approach::kA2, Approach::kA3Plain,
                     Approach::kA3Extended}) {
    if (text == to_string(a)) return a;
  }
  throw Error(ErrorKind::kParse, "unknown approach '" + std::string(text) + "'");
}

std::optional<std::size_t> LabelSpace::index_of(std::string_view label_id) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].label_id == label_id) return i;
  }
  return std::nullopt;
}

const LabelSpec& LabelSpace::at(std::string_view label_id) const {
  if (const auto i = index_of(label_id)) return labels[*i];
  throw Error(ErrorKind::kNotFound, "label '" + std::string(label_id) + "' not in label space");
}

void validate(const LabelSpace& space) {
  const auto fail = [](const std::string& what) { return Error(ErrorKind::kContract, "label space: " + what); };
  std::set<std::string> ids;
  std::size_t negatives = 0;
  std::size_t positives = 0;
  for (const LabelSpec& l : space.labels) {
    if (l.label_id.empty()) throw fail("empty label_id");
    if (l.hypothesis.empty()) throw fail("empty hypothesis for '" + l.label_id + "'");
    if (!ids.insert(l.label_id).second) throw fail("duplicate label_id '" + l.label_id + "'");
    negatives += l.mapped_class == MappedClass::kNonSuggestion;
    positives += l.mapped_class == MappedClass::kSuggestion;
  }
  if (space.labels.empty()) throw fail("no labels");
  switch (space.approach) {
    case Approach::kA1:
    case Approach::kA1Variant:
    case Approach::kA2:
      if (negatives != 1) throw fail("needs exactly one non_suggestion label");
      if (positives == 0) throw fail("needs at least one suggestion label");
      if (!space.negative_label_id) throw fail("negative_label_id is required");
      break;
    case Approach::kA3Plain:
    case Approach::kA3Extended:
      if (positives != 0) throw fail("A3 labels must be deferred");
      if (negatives > 1) throw fail("at most one non_suggestion label");
      if (negatives == 1 && !space.negative_label_id) throw fail("negative_label_id is required");
      break;
  }
  if (space.negative_label_id) {
    const auto i = space.index_of(*space.negative_label_id);
    if (!i) throw fail("negative_label_id '" + *space.negative_label_id + "' not in labels");
    if (space.labels[*i].mapped_class != MappedClass::kNonSuggestion) {
      throw fail("negative label must map to non_suggestion");
    }
  }
}

namespace {

LabelSpec negative_label() {
  return {std::string(kNegativeLabelId), std::string(kNegativeHypothesis), MappedClass::kNonSuggestion};
}

bool starts_with_vowel(std::string_view s) {
  return !s.empty() && std::string_view("aeiouAEIOU").find(s.front()) != std::string_view::npos;
}

}  // namespace

LabelSpace build_approach1(A1Variant variant) {
  LabelSpace space;
  if (variant == A1Variant::kIsA) {
    space.approach = Approach::kA1;
    space.labels = {{"SUGGESTION", "This text is a suggestion.", MappedClass::kSuggestion},
                    negative_label()};
  } else {
    space.approach = Approach::kA1Variant;
    space.labels = {{"SUGGESTION", "This text is suggesting.", MappedClass::kSuggestion},
                    {std::string(kNegativeLabelId), "This text is not suggesting.",
                     MappedClass::kNonSuggestion}};
  }
  space.negative_label_id = std::string(kNegativeLabelId);
  return space;
}

const std::vector<std::string>& suggestion_definition_senses() {
  static const std::vector<std::string> senses = {"suggestion.n.01", "suggestion.n.02",
                                                  "suggestion.n.04"};
  return senses;
}

LabelSpace build_approach2(const wordnet::LexiconSnapshot& lexicon) {
  LabelSpace space;
  space.approach = Approach::kA2;
  for (const std::string& name : suggestion_definition_senses()) {
    const auto id = wordnet::resolve_sense(lexicon, wordnet::SenseName::parse(name));
    const std::string def = wordnet::definition(lexicon.at(id));
    if (def.empty()) throw Error(ErrorKind::kNotFound, "no definition for " + name);
    // Glosses already open with their article ("an idea ...", "a proposal
    // ...") or need none ("persuasion ...").
    space.labels.push_back({name, std::string(kTemplatePrefix) + def + ".", MappedClass::kSuggestion});
  }
  space.labels.push_back(negative_label());
  space.negative_label_id = std::string(kNegativeLabelId);
  return space;
}

const std::vector<std::string>& candidate_senses() {
  static const std::vector<std::string> senses = {
      "direction.n.06", "guidance.n.01", "offer.n.02",   "promotion.n.01",
      "proposal.n.01",  "reminder.n.01", "request.n.01", "submission.n.01"};
  return senses;
}

LabelSpace build_approach3(const wordnet::LexiconSnapshot& lexicon, A3Scope scope, bool extended,
                           bool include_negative, const RenderOptions& options) {
  using wordnet::SenseName;
  const auto integrity = [](const std::string& what) {
    return Error(ErrorKind::kIntegrity, "message subtree: " + what);
  };

  wordnet::SynsetId root;
  try {
    root = wordnet::resolve_sense(lexicon, SenseName::parse(kMessageSense));
  } catch (const Error& e) {
    throw integrity(e.what());
  }
  const wordnet::Synset& parent = lexicon.at(root);

  struct Named {
    std::string name;
    const wordnet::Synset* synset;
  };
  std::vector<Named> members;
  for (wordnet::SynsetId child : parent.hyponyms) {
    const auto name = lexicon.name_of(child);
    if (!name) throw integrity("hyponym " + wordnet::to_string(child) + " has no sense name");
    members.push_back({name->str(), &lexicon.at(child)});
  }

  if (scope == A3Scope::kCandidates8) {
    std::vector<Named> picked;
    for (const std::string& candidate : candidate_senses()) {
      const auto it = std::find_if(members.begin(), members.end(),
                                   [&](const Named& m) { return m.name == candidate; });
      if (it == members.end()) throw integrity(candidate + " is not a direct hyponym of message.n.02");
      picked.push_back(*it);
    }
    members = std::move(picked);
  }
  std::stable_sort(members.begin(), members.end(),
                   [](const Named& a, const Named& b) { return a.name < b.name; });

  LabelSpace space;
  space.approach = extended ? Approach::kA3Extended : Approach::kA3Plain;
  std::set<std::string> taken;
  for (const Named& m : members) {
    std::vector<std::string> lemmas =
        extended ? wordnet::all_lemmas(*m.synset) : std::vector<std::string>{wordnet::first_lemma(*m.synset)};
    if (options.space_underscores) {
      for (std::string& l : lemmas) std::replace(l.begin(), l.end(), '_', ' ');
    }
    const std::string phrase = join(lemmas, " or ");
    const char* article = options.smart_article && starts_with_vowel(phrase) ? "an " : "a ";

    std::string id = wordnet::first_lemma(*m.synset);
    if (!taken.insert(id).second) {
      id = m.name;
      taken.insert(id);
    }
    space.labels.push_back({id, std::string(kTemplatePrefix) + article + phrase + ".", MappedClass::kDeferred});
  }
  if (include_negative) {
    space.labels.push_back(negative_label());
    space.negative_label_id = std::string(kNegativeLabelId);
  }
  return space;
}

std::string export_label_space(const LabelSpace& space) {
  using nlohmann::json;
  json labels = json::array();
  for (const LabelSpec& l : space.labels) {
    labels.push_back({{"label_id", l.label_id}, {"hypothesis", l.hypothesis},
                      {"mapped_class", to_string(l.mapped_class)}});
  }
  json doc = {{"approach", to_string(space.approach)}, {"labels", std::move(labels)}};
  doc["negative_label_id"] = space.negative_label_id ? json(*space.negative_label_id) : json(nullptr);
  return doc.dump(2) + "\n";
}

LabelSpace import_label_space(std::string_view document) {
  using nlohmann::json;
  LabelSpace space;
  try {
    const json doc = json::parse(document);
    space.approach = parse_approach(doc.at("approach").get<std::string>());
    for (const json& l : doc.at("labels")) {
      space.labels.push_back({l.at("label_id").get<std::string>(), l.at("hypothesis").get<std::string>(),
                              parse_mapped_class(l.at("mapped_class").get<std::string>())});
    }
    if (doc.contains("negative_label_id") && !doc.at("negative_label_id").is_null()) {
      space.negative_label_id = doc.at("negative_label_id").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("label space document: ") + e.what());
  }
  try {
    validate(space);
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
  return space;
}

}  // namespace zss
