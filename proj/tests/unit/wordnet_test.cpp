#include <set>
#include <sstream>

#include "doctest.h"
#include "support/test_support.hpp"

using namespace zss;
using namespace zss::wordnet;
using zss::testing::fixture;

namespace {

const char* kIndex =
    "  1 test license line\n"
    "alpha n 1 1 ~ 1 0 00000100  \n"
    "beta n 2 1 @ 2 0 00000200 00000300  \n";

const char* kData =
    "  1 test license line\n"
    "00000100 03 n 01 alpha 0 002 ~ 00000200 n 0000 ~ 00000300 n 0000 | the root; \"an example\"\n"
    "00000200 03 n 02 beta 0 beta_prime 0 001 @ 00000100 n 0000 | first child  \n"
    "00000300 03 n 01 beta 1 001 @ 00000100 n 0000 | second child\n";

LexiconSnapshot tiny() {
  std::istringstream index(kIndex), data(kData);
  return load_wordnet(index, data, "tiny");
}

}  // namespace

TEST_CASE("parses synsets, pointers and the sense index") {
  const auto lex = tiny();
  CHECK(lex.size() == 3);
  const auto root = resolve_sense(lex, SenseName::parse("alpha.n.01"));
  CHECK(to_string(root) == "00000100-n");
  const auto& s = lex.at(root);
  CHECK(s.gloss == "the root; \"an example\"");
  CHECK(definition(s) == "the root");
  const auto kids = hyponyms(lex, root);
  REQUIRE(kids.size() == 2);
  CHECK(all_lemmas(kids[0]) == std::vector<std::string>{"beta", "beta_prime"});
  CHECK(kids[0].hypernyms == std::vector<SynsetId>{root});
  CHECK(lex.name_of(kids[1].id)->str() == "beta.n.02");
}

TEST_CASE("sense names") {
  const auto n = SenseName::parse("Latent_Content.n.01");
  CHECK(n.lemma == "latent_content");
  CHECK(n.sense_number == 1);
  CHECK(n.str() == "latent_content.n.01");
  CHECK(SenseName::parse("a.b.c.n.12").lemma == "a.b.c");
  CHECK_THROWS_AS(SenseName::parse("message"), Error);
  CHECK_THROWS_AS(SenseName::parse("message.v.01"), Error);
  CHECK_THROWS_AS(SenseName::parse("message.n.0"), Error);
  CHECK_THROWS_AS(SenseName::parse("message.n.x"), Error);
}

TEST_CASE("unknown senses and synsets are not_found") {
  const auto lex = tiny();
  try {
    resolve_sense(lex, SenseName::parse("alpha.n.02"));
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotFound);
  }
  CHECK_THROWS_AS(resolve_sense(lex, SenseName::parse("gamma.n.01")), Error);
  CHECK_THROWS_AS(hyponyms(lex, SynsetId{999}), Error);
}

TEST_CASE("malformed data lines report file and line") {
  std::istringstream index(kIndex);
  std::istringstream data(
      "  header\n"
      "00000100 03 n 01 alpha 0 00x | broken pointer count\n");
  try {
    load_wordnet(index, data);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.source() == "data.noun");
    CHECK(e.line() == 2);
  }
}

TEST_CASE("dangling pointers are integrity errors") {
  std::istringstream index("alpha n 1 0 1 0 00000100  \n");
  std::istringstream data("00000100 03 n 01 alpha 0 001 ~ 00000777 n 0000 | orphan edge\n");
  try {
    load_wordnet(index, data);
    FAIL("expected integrity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIntegrity);
  }
}

TEST_CASE("snapshot round trip is lossless") {
  const auto lex = load_wordnet_dir(fixture("wordnet_senses"));
  const std::string doc = encode_snapshot(lex);
  const auto back = decode_snapshot(doc);
  CHECK(back == lex);
  CHECK(encode_snapshot(back) == doc);
  CHECK_THROWS_AS(decode_snapshot("{\"version\": 99}"), Error);
  CHECK_THROWS_AS(decode_snapshot("not json"), Error);
}

TEST_CASE("message.n.02 hyponyms on the fixture contain the published inventory") {
  const auto lex = load_wordnet_dir(fixture("wordnet_senses"));
  const auto root = resolve_sense(lex, SenseName::parse("message.n.02"));
  CHECK(definition(lex.at(root)) == "what a communication that is about something is about");
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& h : hyponyms(lex, root)) got.emplace(lex.name_of(h.id)->str(), first_lemma(h));
  // The 3.0 release also lists memorial.n.02 here.
  CHECK(got.size() == 33);
  CHECK(got.count({"memorial.n.02", "memorial"}) == 1);
  for (const auto& row : zss::testing::message_hyponym_table()) {
    CAPTURE(row.first);
    CHECK(got.count(row) == 1);
  }
}

TEST_CASE("subtree fixture: every hyponym named without an index") {
  const auto lex = load_wordnet_dir(fixture("wordnet_subtree"));
  CHECK(lex.size() == 34);
  CHECK(lex.sense_index().empty());
  const auto root = SynsetId{6598915};
  CHECK(hyponyms(lex, root).size() == 33);
  CHECK_FALSE(lex.name_of(root).has_value());
}

TEST_CASE("full WordNet database, when available") {
  const auto dir = zss::testing::full_wordnet_dir();
  if (dir.empty() || !std::filesystem::exists(dir / "data.noun")) {
    MESSAGE("ZSS_WORDNET_DIR not set; skipping");
    return;
  }
  const auto lex = load_wordnet_dir(dir);
  CHECK(lex.size() == 82115);
  const auto root = resolve_sense(lex, SenseName::parse("message.n.02"));
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& h : hyponyms(lex, root)) got.emplace(lex.name_of(h.id)->str(), first_lemma(h));
  for (const auto& row : zss::testing::message_hyponym_table()) CHECK(got.count(row) == 1);
  const auto small = load_wordnet_dir(fixture("wordnet_senses"));
  for (const auto& s : small.synsets()) {
    CAPTURE(to_string(s.id));
    const auto& full = lex.at(s.id);
    CHECK(full.lemmas == s.lemmas);
    CHECK(full.gloss == s.gloss);
  }
}

TEST_CASE("CRLF line endings are accepted") {
  std::string index = kIndex, data = kData;
  for (auto* text : {&index, &data}) {
    std::string crlf;
    for (char c : *text) crlf += c == '\n' ? std::string("\r\n") : std::string(1, c);
    *text = crlf;
  }
  std::istringstream index_in(index), data_in(data);
  const auto lex = load_wordnet(index_in, data_in, "tiny");
  CHECK(lex == tiny());
}
