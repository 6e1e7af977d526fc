#include "zss/domain_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "zss/csv.hpp"
#include "zss/error.hpp"

namespace zss {

ClassFilter parse_class_filter(std::string_view text) {
  if (text == "suggestion") return ClassFilter::kSuggestion;
  if (text == "non_suggestion") return ClassFilter::kNonSuggestion;
  if (text == "all") return ClassFilter::kAll;
  throw Error(ErrorKind::kUsage, "unknown class filter '" + std::string(text) + "'");
}

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool keep(ClassFilter filter, BinaryClass gold) {
  switch (filter) {
    case ClassFilter::kSuggestion: return gold == BinaryClass::kSuggestion;
    case ClassFilter::kNonSuggestion: return gold == BinaryClass::kNonSuggestion;
    case ClassFilter::kAll: return true;
  }
  return false;
}

std::vector<std::string> top_tokens(const FrequencyProfile& p, std::size_t k) {
  std::vector<std::pair<std::string, std::size_t>> items(p.counts.begin(), p.counts.end());
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, items.size()); ++i) out.push_back(items[i].first);
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

FrequencyProfile profile(std::span<const LabeledCorpus> corpora, ClassFilter filter, std::string domain,
                         const std::set<std::string>& stopwords) {
  FrequencyProfile p;
  p.domain = std::move(domain);
  for (const LabeledCorpus& corpus : corpora) {
    for (const CorpusItem& item : corpus.items) {
      if (!keep(filter, item.gold)) continue;
      for (std::string& token : tokenize(item.sentence)) {
        if (stopwords.count(token)) continue;
        ++p.counts[std::move(token)];
        ++p.total_tokens;
      }
    }
  }
  if (p.total_tokens == 0) {
    throw Error(ErrorKind::kContract, "profile '" + p.domain + "': no tokens after filtering (empty input)");
  }
  for (const auto& [token, count] : p.counts) {
    p.rel_freq[token] = static_cast<double>(count) / static_cast<double>(p.total_tokens);
  }
  return p;
}

std::vector<ComparisonRow> compare(const FrequencyProfile& a, const FrequencyProfile& b, std::size_t top_k) {
  std::set<std::string> tokens;
  for (auto& t : top_tokens(a, top_k)) tokens.insert(std::move(t));
  for (auto& t : top_tokens(b, top_k)) tokens.insert(std::move(t));

  const double eps = 1.0 / static_cast<double>(a.total_tokens + b.total_tokens);
  std::vector<ComparisonRow> rows;
  rows.reserve(tokens.size());
  for (const std::string& t : tokens) {
    const auto fa = a.rel_freq.find(t);
    const auto fb = b.rel_freq.find(t);
    ComparisonRow row;
    row.token = t;
    row.rel_freq_a = fa == a.rel_freq.end() ? 0.0 : fa->second;
    row.rel_freq_b = fb == b.rel_freq.end() ? 0.0 : fb->second;
    row.log_ratio = std::log(row.rel_freq_a + eps) - std::log(row.rel_freq_b + eps);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ComparisonRow& x, const ComparisonRow& y) {
    const double ax = std::fabs(x.log_ratio);
    const double ay = std::fabs(y.log_ratio);
    return ax != ay ? ax > ay : x.token < y.token;
  });
  return rows;
}

std::string comparison_csv(std::span<const ComparisonRow> rows) {
  std::string out = "token,rel_freq_a,rel_freq_b,log_ratio\n";
  char buf[96];
  for (const ComparisonRow& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.8f,%.8f,%.6f\n", r.rel_freq_a, r.rel_freq_b, r.log_ratio);
    out += csv_escape(r.token) + buf;
  }
  return out;
}

}  // namespace zss
