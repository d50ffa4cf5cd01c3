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

#ifndef KGQA_PIPELINE_H_
#define KGQA_PIPELINE_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/composer.h"
#include "kgqa/datasets.h"
#include "kgqa/entity_links.h"
#include "kgqa/evaluation.h"
#include "kgqa/generation.h"
#include "kgqa/kg_endpoint.h"
#include "kgqa/ling_features.h"
#include "kgqa/prefix_table.h"
#include "kgqa/tokenizer.h"

namespace kgqa {

// Everything the per-question pipeline talks to. Providers may be null when
// the corresponding feature is disabled.
struct PipelineContext {
  std::shared_ptr<const AnnotationProvider> annotation;
  std::shared_ptr<const EntityProvider> entities;
  std::shared_ptr<const Tokenizer> tokenizer;
  std::shared_ptr<const GeneratorBackend> backend;
  std::shared_ptr<const Endpoint> endpoint;
  sparql::PrefixTable table = sparql::PrefixTable::WikidataDefault();
};

struct PipelineOptions {
  std::string lang = "en";
  ComposerConfig composer = ComposerConfig::Default();
  int workers = 4;
  int max_output_tokens = 256;
  nlohmann::json backend_params = nlohmann::json::object();
};

// Annotates and links as the config requires, then composes.
ComposedInput ComposeQuestion(std::string_view id, std::string_view question,
                              std::string_view lang, const ComposerConfig& cfg,
                              const PipelineContext& ctx);

struct QuestionTrace {
  std::string id;
  std::string input;
  std::string prediction;
  std::string decoded;
  // "ok", the failure kind or error code that stopped the question, or
  // "ERROR" for any other exception.
  std::string status = "ok";
  std::string message;
};

struct EvaluationRun {
  EvalReport report;
  std::vector<QuestionTrace> traces;  // benchmark order
};

// Runs fn(i) for i in [0, n) on at most `workers` threads. The first
// exception thrown by fn is rethrown after all workers stop.
void ParallelFor(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// Full per-question pipeline over the benchmark. A failure at any stage
// scores that question as unanswered. Checks backend health first and
// propagates Error(kBackendUnavailable) from it.
EvaluationRun RunEvaluation(const Benchmark& benchmark, const PipelineOptions& options,
                            const PipelineContext& ctx, std::string fingerprint = {});

}  // namespace kgqa

#endif  // KGQA_PIPELINE_H_
