#include <cmath>
#include <random>
#include <thread>

#include "doctest.h"
#include "support/test_support.hpp"

using namespace zss;
using zss::testing::ScratchDir;

TEST_CASE("entail_prob matches the two- and three-way softmax") {
  const Logits l{2.0, 0.5, -1.0};
  const double two = std::exp(2.0) / (std::exp(2.0) + std::exp(-1.0));
  const double three = std::exp(2.0) / (std::exp(2.0) + std::exp(0.5) + std::exp(-1.0));
  CHECK(entail_prob(l, ProbMode::kDropNeutral) == doctest::Approx(two).epsilon(1e-12));
  CHECK(entail_prob(l, ProbMode::kThreeWay) == doctest::Approx(three).epsilon(1e-12));
  CHECK(entail_prob(Logits{0, 0, 0}, ProbMode::kDropNeutral) == doctest::Approx(0.5));
}

TEST_CASE("entail_prob survives extreme logits") {
  const double hi = entail_prob(Logits{1000.0, 0.0, -1000.0}, ProbMode::kDropNeutral);
  const double lo = entail_prob(Logits{-1000.0, 0.0, 1000.0}, ProbMode::kThreeWay);
  CHECK(std::isfinite(hi));
  CHECK(hi == doctest::Approx(1.0));
  CHECK(lo == doctest::Approx(0.0));
}

TEST_CASE("entail_prob: bounded, monotone in entailment, shift invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const Logits l{u(rng), u(rng), u(rng)};
    const double shift = u(rng);
    for (const auto mode : {ProbMode::kDropNeutral, ProbMode::kThreeWay}) {
      const double p = entail_prob(l, mode);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(entail_prob(Logits{l.entailment + 0.5, l.neutral, l.contradiction}, mode) >= p);
      CHECK(entail_prob(Logits{l.entailment + shift, l.neutral + shift, l.contradiction + shift}, mode) ==
            doctest::Approx(p).epsilon(1e-9));
    }
  }
}

TEST_CASE("cache keys are length-prefixed") {
  CHECK(CacheKey::of("m", "ab", "c").digest != CacheKey::of("m", "a", "bc").digest);
  CHECK(CacheKey::of("m", "ab", "c") == CacheKey::of("m", "ab", "c"));
  CHECK(CacheKey::of("m", "x", "y").digest.size() == 64);
  CHECK(CacheKey::of("m1", "x", "y") != CacheKey::of("m2", "x", "y"));
}

TEST_CASE("cache persists, reopens and lets the last write win") {
  ScratchDir dir("cache");
  const auto path = dir / "scores.jsonl";
  const ScoreRecord a{"m", "premise, with comma", "This text is a reminder.", {1.5, 0.0, -2.0}};
  ScoreRecord a2 = a;
  a2.logits.entailment = 3.0;
  {
    ScoreCache cache(path);
    cache.put(a);
    cache.put({"m", "other", "h", {0.1, 0.2, 0.3}});
    cache.put(a2);
    cache.flush();
    CHECK(cache.size() == 2);
  }
  ScoreCache reopened(path);
  CHECK(reopened.size() == 2);
  CHECK(reopened.corrupt_lines() == 0);
  const auto hit = reopened.get("m", a.premise, a.hypothesis);
  REQUIRE(hit.has_value());
  CHECK(*hit == a2);
  CHECK_FALSE(reopened.get("other-model", a.premise, a.hypothesis).has_value());
}

TEST_CASE("cache skips torn and tampered lines and keeps appending cleanly") {
  ScratchDir dir("cache-torn");
  const auto path = dir / "scores.jsonl";
  const ScoreRecord good{"m", "p", "h", {1, 2, 3}};
  ScoreRecord tampered = good;
  tampered.premise = "q";
  std::string line = encode_cache_line(tampered);
  line.replace(line.find("\"q\""), 3, "\"z\"");  // key no longer matches the fields
  zss::testing::spit(path, encode_cache_line(good) + "\n" + line + "\n{\"key\": \"abc\", \"model_i");
  {
    ScoreCache cache(path);
    CHECK(cache.size() == 1);
    CHECK(cache.corrupt_lines() == 2);
    CHECK(cache.corrupt_line_numbers() == std::vector<std::size_t>{2, 3});
    cache.put({"m", "p2", "h", {0, 0, 0}});
    cache.flush();
  }
  ScoreCache reopened(path);
  CHECK(reopened.size() == 2);
  CHECK(reopened.corrupt_lines() == 2);
}

TEST_CASE("cache rejects incomplete records") {
  ScratchDir dir("cache-bad");
  ScoreCache cache(dir / "c.jsonl");
  CHECK_THROWS_AS(cache.put({"m", "p", "h", {std::nan(""), 0, 0}}), Error);
  CHECK_THROWS_AS(cache.put({"", "p", "h", {0, 0, 0}}), Error);
  CHECK(cache.size() == 0);
}

TEST_CASE("cache tolerates concurrent readers and writers") {
  ScratchDir dir("cache-mt");
  ScoreCache cache(dir / "c.jsonl");
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < 4; ++t) {
      workers.emplace_back([&cache, t] {
        for (int i = 0; i < 200; ++i) {
          const std::string p = "p" + std::to_string(t) + "-" + std::to_string(i);
          cache.put({"m", p, "h", {double(i), 0, 0}});
          CHECK(cache.get("m", p, "h").has_value());
        }
      });
    }
  }
  cache.flush();
  CHECK(cache.size() == 800);
  ScoreCache reopened(dir / "c.jsonl");
  CHECK(reopened.size() == 800);
  CHECK(reopened.corrupt_lines() == 0);
}
