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

#include "kgqa/generation.h"

#include "kgqa/error.h"

namespace kgqa {

using nlohmann::json;

GoldEchoBackend::GoldEchoBackend(const Benchmark& benchmark, const sparql::PrefixTable& table) {
  for (const QaItem& item : benchmark.items) {
    if (item.unparseable) continue;
    try {
      canonical_by_id_[item.id] = sparql::EncodeTarget(item.gold_sparql, table).text;
    } catch (const Error&) {
      // Left out; Generate abstains for this id.
    }
  }
}

std::string GoldEchoBackend::Generate(const GenerationRequest& request) const {
  auto it = canonical_by_id_.find(request.question_id);
  return it == canonical_by_id_.end() ? std::string() : it->second;
}

RemoteGenerator::RemoteGenerator(Options options)
    : options_(std::move(options)),
      client_(options_.url, options_.timeout),
      limiter_(options_.max_in_flight) {}

void RemoteGenerator::CheckHealth() const {
  HttpResponse response;
  try {
    response = client_.Get("/health");
  } catch (const HttpError& e) {
    throw Error(ErrorCode::kBackendUnavailable, e.what());
  }
  if (response.status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                "health check returned HTTP " + std::to_string(response.status));
  }
}

std::string RemoteGenerator::Generate(const GenerationRequest& request) const {
  json params = json{{"do_sample", false}};
  if (request.backend_params.is_object()) params.update(request.backend_params);
  json body{{"input", request.input.text},
            {"max_new_tokens", request.max_output_tokens},
            {"params", params}};
  HttpResponse response;
  try {
    auto slot = limiter_.Acquire();
    response = client_.PostJson("/generate", body.dump());
  } catch (const HttpError& e) {
    throw Error(e.kind() == HttpError::Kind::kTimeout ? ErrorCode::kTimeout
                                                      : ErrorCode::kBackendUnavailable,
                e.what());
  }
  if (response.status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                "generate returned HTTP " + std::to_string(response.status));
  }
  try {
    return json::parse(response.body).at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad generate response: ") + e.what());
  }
}

GenerationResult Generate(const GenerationRequest& request, const GeneratorBackend& backend) {
  if (request.max_output_tokens <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_output_tokens must be positive");
  }
  auto start = std::chrono::steady_clock::now();
  std::string output = backend.Generate(request);
  std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  GenerationResult result;
  result.canonical = {std::move(output), sparql::Provenance::kModelOutput};
  result.latency_ms = elapsed.count();
  result.backend = backend.name();
  return result;
}

}  // namespace kgqa
