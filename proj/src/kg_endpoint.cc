// Copyright 2026 The kgqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgqa/kg_endpoint.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <thread>

#include <spdlog/spdlog.h>

#include "kgqa/canon.h"
#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxGetQueryLength = 2000;

bool MentionsSyntax(std::string_view body) {
  std::string lower(body.substr(0, 4096));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.find("syntax") != std::string::npos || lower.find("parse") != std::string::npos;
}

std::string Snippet(std::string_view body) {
  return CollapseWhitespace(body.substr(0, 200));
}

bool IsEmptyAsk(const std::vector<sparql::Token>& tokens) {
  std::size_t i = 0;
  if (i == tokens.size() || !sparql::IsKeyword(tokens[i], "ASK")) return false;
  ++i;
  if (i < tokens.size() && sparql::IsKeyword(tokens[i], "WHERE")) ++i;
  return tokens.size() == i + 2 && tokens[i].text == "{" && tokens[i + 1].text == "}";
}

}  // namespace

std::string_view FailureKindName(QueryFailure::Kind kind) {
  switch (kind) {
    case QueryFailure::Kind::kSyntax: return "SYNTAX";
    case QueryFailure::Kind::kTimeout: return "TIMEOUT";
    case QueryFailure::Kind::kNetwork: return "NETWORK";
    case QueryFailure::Kind::kEndpointError: return "ENDPOINT_ERROR";
  }
  return "ENDPOINT_ERROR";
}

EndpointConfig EndpointConfig::FromJson(const json& j) {
  EndpointConfig cfg;
  try {
    cfg.url = j.at("url").get<std::string>();
    cfg.timeout_s = j.value("timeout_s", cfg.timeout_s);
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.user_agent = j.value("user_agent", cfg.user_agent);
    cfg.max_concurrent = j.value("max_concurrent", cfg.max_concurrent);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("endpoint config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

json EndpointConfig::ToJson() const {
  return json{{"url", url},
              {"timeout_s", timeout_s},
              {"max_retries", max_retries},
              {"user_agent", user_agent},
              {"max_concurrent", max_concurrent}};
}

void EndpointConfig::Validate() const {
  if (url.empty()) throw Error(ErrorCode::kInvalidConfig, "endpoint url is empty");
  if (!(timeout_s > 0)) throw Error(ErrorCode::kInvalidConfig, "timeout_s must be > 0");
  if (max_retries < 0) throw Error(ErrorCode::kInvalidConfig, "max_retries must be >= 0");
  if (max_concurrent < 1) throw Error(ErrorCode::kInvalidConfig, "max_concurrent must be >= 1");
}

QueryOutcome ParseResponseBody(std::string_view body) {
  try {
    return ParseResultsJson(json::parse(body));
  } catch (const json::exception& e) {
    return QueryFailure{QueryFailure::Kind::kEndpointError,
                        std::string("response is not JSON: ") + e.what()};
  } catch (const Error& e) {
    return QueryFailure{QueryFailure::Kind::kEndpointError, e.what()};
  }
}

HttpEndpoint::HttpEndpoint(EndpointConfig config)
    : config_((config.Validate(), std::move(config))),
      client_(config_.url,
              std::chrono::milliseconds(static_cast<long long>(config_.timeout_s * 1000)),
              config_.user_agent),
      limiter_(config_.max_concurrent) {}

std::variant<std::string, QueryFailure> HttpEndpoint::Fetch(std::string_view query) const {
  const HttpClient::Headers headers = {{"Accept", "application/sparql-results+json"}};
  const HttpClient::Params params = {{"query", std::string(query)}};
  for (int attempt = 0;; ++attempt) {
    HttpResponse response;
    try {
      auto slot = limiter_.Acquire();
      response = query.size() > kMaxGetQueryLength ? client_.PostForm("", params, headers)
                                                   : client_.Get("", params, headers);
    } catch (const HttpError& e) {
      if (e.kind() == HttpError::Kind::kTimeout) {
        return QueryFailure{QueryFailure::Kind::kTimeout, e.what()};
      }
      if (attempt >= config_.max_retries) {
        return QueryFailure{QueryFailure::Kind::kNetwork, e.what()};
      }
      spdlog::debug("{}: network failure ({}), retry {}/{}", config_.url, e.what(), attempt + 1,
                    config_.max_retries);
      std::this_thread::sleep_for(std::chrono::milliseconds(100) * (1 << std::min(attempt, 5)));
      continue;
    }
    const int status = response.status;
    if (status == 200) return std::move(response.body);
    std::string message = "HTTP " + std::to_string(status) + ": " + Snippet(response.body);
    if (status == 400 || (status >= 500 && MentionsSyntax(response.body))) {
      return QueryFailure{QueryFailure::Kind::kSyntax, message};
    }
    if (status == 408 || status == 504) {
      return QueryFailure{QueryFailure::Kind::kTimeout, message};
    }
    return QueryFailure{QueryFailure::Kind::kEndpointError, message};
  }
}

QueryOutcome HttpEndpoint::Execute(std::string_view query) const {
  auto fetched = Fetch(query);
  if (auto* failure = std::get_if<QueryFailure>(&fetched)) return *failure;
  return ParseResponseBody(std::get<std::string>(fetched));
}

FixtureStore::FixtureStore(sparql::PrefixTable table) : table_(std::move(table)) {}

FixtureStore FixtureStore::Load(const std::filesystem::path& path, sparql::PrefixTable table) {
  FixtureStore store(std::move(table));
  json root;
  try {
    root = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedFile, path.string() + ": " + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kMalformedFile, path.string() + ": fixture store is not an object");
  }
  for (auto& [key, value] : root.items()) store.responses_[key] = value;
  return store;
}

void FixtureStore::Save(const std::filesystem::path& path) const {
  json root = json::object();
  {
    std::lock_guard lock(*mu_);
    for (const auto& [key, value] : responses_) root[key] = value;
  }
  WriteFile(path, root.dump(1) + "\n");
}

FixtureStore FixtureStore::FromGoldAnswers(const Benchmark& benchmark, sparql::PrefixTable table) {
  FixtureStore store(std::move(table));
  for (const QaItem& item : benchmark.items) {
    if (sparql::CheckStructure(item.gold_sparql)) continue;
    store.Record(item.gold_sparql, ToResultsJson(item.gold_answers));
  }
  return store;
}

std::string FixtureStore::Key(std::string_view query) const {
  try {
    return Sha256Hex(sparql::Render(sparql::NormalizeQuery(query, table_)));
  } catch (const Error&) {
    return Sha256Hex(CollapseWhitespace(query));
  }
}

void FixtureStore::Record(std::string_view query, json response) {
  std::string key = Key(query);
  std::lock_guard lock(*mu_);
  responses_[std::move(key)] = std::move(response);
}

std::size_t FixtureStore::size() const {
  std::lock_guard lock(*mu_);
  return responses_.size();
}

QueryOutcome FixtureStore::Execute(std::string_view query) const {
  if (auto problem = sparql::CheckStructure(query)) {
    return QueryFailure{QueryFailure::Kind::kSyntax, *problem};
  }
  const std::string key = Key(query);
  {
    std::lock_guard lock(*mu_);
    if (auto it = responses_.find(key); it != responses_.end()) {
      try {
        return ParseResultsJson(it->second);
      } catch (const Error& e) {
        return QueryFailure{QueryFailure::Kind::kEndpointError, e.what()};
      }
    }
  }
  if (IsEmptyAsk(sparql::NormalizeQuery(query, table_))) return AnswerSet::Boolean(true);
  return QueryFailure{QueryFailure::Kind::kEndpointError, "no recorded response for " + key};
}

QueryOutcome RecordingEndpoint::Execute(std::string_view query) const {
  auto fetched = live_.Fetch(query);
  if (auto* failure = std::get_if<QueryFailure>(&fetched)) return *failure;
  const std::string& body = std::get<std::string>(fetched);
  QueryOutcome outcome = ParseResponseBody(body);
  if (std::holds_alternative<AnswerSet>(outcome)) store_.Record(query, json::parse(body));
  return outcome;
}

QueryOutcome Execute(std::string_view query, const EndpointConfig& config) {
  try {
    return HttpEndpoint(config).Execute(query);
  } catch (const Error& e) {
    return QueryFailure{QueryFailure::Kind::kEndpointError, e.what()};
  }
}

}  // namespace kgqa
