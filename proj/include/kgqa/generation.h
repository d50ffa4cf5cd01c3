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

#ifndef KGQA_GENERATION_H_
#define KGQA_GENERATION_H_

#include <chrono>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kgqa/canon.h"
#include "kgqa/composer.h"
#include "kgqa/datasets.h"
#include "kgqa/http.h"

namespace kgqa {

struct GenerationRequest {
  std::string question_id;
  ComposedInput input;
  int max_output_tokens = 256;
  nlohmann::json backend_params = nlohmann::json::object();
};

struct GenerationResult {
  sparql::CanonicalQuery canonical{{}, sparql::Provenance::kModelOutput};
  double latency_ms = 0;
  std::string backend;
};

// Produces the single best canonical query for a composed input.
// Implementations must tolerate concurrent calls.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual std::string name() const = 0;
  // Throws Error(kBackendUnavailable) when the backend cannot serve.
  virtual void CheckHealth() const {}
  // Throws Error(kBackendUnavailable) or Error(kTimeout).
  virtual std::string Generate(const GenerationRequest& request) const = 0;
};

// Answers each question with its own encoded gold query; abstains (empty
// output) for unknown ids and unencodable gold.
class GoldEchoBackend : public GeneratorBackend {
 public:
  GoldEchoBackend(const Benchmark& benchmark, const sparql::PrefixTable& table);

  std::string name() const override { return "gold-echo"; }
  std::string Generate(const GenerationRequest& request) const override;

 private:
  std::map<std::string, std::string, std::less<>> canonical_by_id_;
};

// Always abstains.
class EmptyBackend : public GeneratorBackend {
 public:
  std::string name() const override { return "empty"; }
  std::string Generate(const GenerationRequest&) const override { return {}; }
};

// Model server client: POST /generate {"input","max_new_tokens","params"}
// -> {"output"}; GET /health. Sampling is off unless params enable it.
class RemoteGenerator : public GeneratorBackend {
 public:
  struct Options {
    std::string url;
    std::chrono::milliseconds timeout{60000};
    int max_in_flight = 2;
  };

  explicit RemoteGenerator(Options options);

  std::string name() const override { return "remote:" + options_.url; }
  void CheckHealth() const override;
  std::string Generate(const GenerationRequest& request) const override;

 private:
  Options options_;
  HttpClient client_;
  ConcurrencyLimiter limiter_;
};

// Validates the request, calls the backend and stamps provenance/latency.
// Throws Error(kInvalidArgument) for max_output_tokens <= 0 and propagates
// backend errors.
GenerationResult Generate(const GenerationRequest& request, const GeneratorBackend& backend);

}  // namespace kgqa

#endif  // KGQA_GENERATION_H_
