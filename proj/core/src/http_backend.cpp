#include <cmath>

#include "httplib.h"
#include "json.hpp"
#include "zss/error.hpp"
#include "zss/scorer.hpp"

namespace zss {

using nlohmann::json;

HttpBackend::HttpBackend(std::string endpoint, std::chrono::milliseconds timeout) : timeout_(timeout) {
  const auto scheme = endpoint.find("://");
  if (scheme == std::string::npos || endpoint.compare(0, scheme, "http") != 0) {
    throw Error(ErrorKind::kUsage, "endpoint must be an http:// URL, got '" + endpoint + "'");
  }
  const auto path = endpoint.find('/', scheme + 3);
  scheme_host_port_ = endpoint.substr(0, path);
  if (path != std::string::npos) base_path_ = endpoint.substr(path);
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
}

std::vector<Logits> HttpBackend::score_batch(const std::string& model_id,
                                             std::span<const PremiseHypothesis> pairs) {
  json body = {{"model_id", model_id}, {"pairs", json::array()}};
  for (const auto& p : pairs) body["pairs"].push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});

  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const std::string url = base_path_ + "/v1/entailment";
  auto res = client.Post(url, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::kBackend, "POST " + scheme_host_port_ + url + " failed: " +
                                         httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw Error(ErrorKind::kBackend, "inference service returned HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::kProtocol, "inference service rejected request: HTTP " +
                                          std::to_string(res->status) + " " + res->body);
  }

  const auto protocol = [](const std::string& what) {
    return Error(ErrorKind::kProtocol, "malformed inference response: " + what);
  };
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw protocol(e.what());
  }
  try {
    const json expected_order = {"entailment", "neutral", "contradiction"};
    if (reply.at("label_order") != expected_order) {
      throw protocol("label_order " + reply.at("label_order").dump() + " is not " + expected_order.dump());
    }
    if (reply.at("model_id").get<std::string>() != model_id) {
      throw protocol("model_id '" + reply.at("model_id").get<std::string>() + "' does not echo '" +
                     model_id + "'");
    }
    const json& rows = reply.at("logits");
    if (!rows.is_array() || rows.size() != pairs.size()) {
      throw protocol("expected " + std::to_string(pairs.size()) + " logit rows");
    }
    std::vector<Logits> out;
    out.reserve(rows.size());
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != 3) throw protocol("logit row must have 3 entries");
      Logits l{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
      if (!std::isfinite(l.entailment) || !std::isfinite(l.neutral) || !std::isfinite(l.contradiction)) {
        throw protocol("non-finite logit");
      }
      out.push_back(l);
    }
    return out;
  } catch (const json::exception& e) {
    throw protocol(e.what());
  }
}

}  // namespace zss
