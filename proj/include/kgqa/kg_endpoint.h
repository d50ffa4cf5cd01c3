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

#ifndef KGQA_KG_ENDPOINT_H_
#define KGQA_KG_ENDPOINT_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "kgqa/answer_set.h"
#include "kgqa/datasets.h"
#include "kgqa/http.h"
#include "kgqa/prefix_table.h"

namespace kgqa {

struct EndpointConfig {
  std::string url;
  double timeout_s = 60;
  int max_retries = 2;
  std::string user_agent = "kgqa/1.0 (knowledge-graph QA evaluation)";
  // Politeness cap on concurrent requests to this endpoint.
  int max_concurrent = 4;

  static EndpointConfig FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  // Throws Error(kInvalidConfig).
  void Validate() const;
};

struct QueryFailure {
  enum class Kind { kSyntax, kTimeout, kNetwork, kEndpointError };
  Kind kind = Kind::kEndpointError;
  std::string message;
};

std::string_view FailureKindName(QueryFailure::Kind kind);

using QueryOutcome = std::variant<AnswerSet, QueryFailure>;

// Every failure mode is reported in-band; Execute never throws.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual std::string name() const = 0;
  virtual QueryOutcome Execute(std::string_view query) const = 0;
};

// Turns a SPARQL results body into an outcome (ENDPOINT_ERROR when the body
// is not a valid results document).
QueryOutcome ParseResponseBody(std::string_view body);

// SPARQL protocol over HTTP(S). Only network failures are retried.
class HttpEndpoint : public Endpoint {
 public:
  explicit HttpEndpoint(EndpointConfig config);

  std::string name() const override { return config_.url; }
  QueryOutcome Execute(std::string_view query) const override;

  // Raw response body on success, failure otherwise.
  std::variant<std::string, QueryFailure> Fetch(std::string_view query) const;

 private:
  EndpointConfig config_;
  HttpClient client_;
  ConcurrencyLimiter limiter_;
};

// Recorded request -> response map keyed by the SHA-256 of the query's
// normalized token form, so formatting and prefix spelling do not matter.
// Queries failing the structural check are SYNTAX failures; an ASK over an
// empty group is true; other unrecorded queries are ENDPOINT_ERROR.
// File format: JSON object {hash: results-document}.
class FixtureStore : public Endpoint {
 public:
  explicit FixtureStore(sparql::PrefixTable table = sparql::PrefixTable::WikidataDefault());

  static FixtureStore Load(const std::filesystem::path& path,
                           sparql::PrefixTable table = sparql::PrefixTable::WikidataDefault());
  void Save(const std::filesystem::path& path) const;

  // Canned responses from each item's stored gold answers.
  static FixtureStore FromGoldAnswers(const Benchmark& benchmark,
                                      sparql::PrefixTable table = sparql::PrefixTable::WikidataDefault());

  std::string Key(std::string_view query) const;
  void Record(std::string_view query, nlohmann::json response);
  std::size_t size() const;

  std::string name() const override { return "fixture"; }
  QueryOutcome Execute(std::string_view query) const override;

 private:
  sparql::PrefixTable table_;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::map<std::string, nlohmann::json> responses_;
};

// Forwards to a live endpoint and records every successful response.
class RecordingEndpoint : public Endpoint {
 public:
  RecordingEndpoint(const HttpEndpoint& live, FixtureStore& store)
      : live_(live), store_(store) {}

  std::string name() const override { return "recording:" + live_.name(); }
  QueryOutcome Execute(std::string_view query) const override;

 private:
  const HttpEndpoint& live_;
  FixtureStore& store_;
};

// Convenience wrapper over HttpEndpoint.
QueryOutcome Execute(std::string_view query, const EndpointConfig& config);

}  // namespace kgqa

#endif  // KGQA_KG_ENDPOINT_H_
