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

#include "kgqa/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

#include "kgqa/canon.h"
#include "kgqa/error.h"

namespace kgqa {

ComposedInput ComposeQuestion(std::string_view id, std::string_view question,
                              std::string_view lang, const ComposerConfig& cfg,
                              const PipelineContext& ctx) {
  std::optional<AnnotatedQuestion> annotation;
  std::optional<std::vector<EntityLink>> links;
  if (cfg.use_ling) {
    if (!ctx.annotation) {
      throw Error(ErrorCode::kMissingAux, "no annotation provider configured");
    }
    annotation = Annotate(question, lang, *ctx.annotation);
  }
  if (cfg.use_ent) {
    if (!ctx.entities) throw Error(ErrorCode::kMissingAux, "no entity provider configured");
    links = LinkEntities(question, lang, *ctx.entities);
  }
  AuxiliaryBundle aux = AuxiliaryBundle::From(annotation ? &*annotation : nullptr,
                                              links ? &*links : nullptr);
  return Compose(question, aux, cfg, *ctx.tokenizer, id);
}

void ParallelFor(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (!stop) {
        const std::size_t i = next++;
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

QuestionTrace RunOne(const QaItem& item, const PipelineOptions& options,
                     const PipelineContext& ctx, QueryOutcome& outcome) {
  QuestionTrace trace;
  trace.id = item.id;
  outcome = QueryFailure{QueryFailure::Kind::kEndpointError, "not executed"};
  auto text = item.texts.find(options.lang);
  if (text == item.texts.end()) {
    trace.status = std::string(ErrorCodeName(ErrorCode::kMissingLanguage));
    trace.message = "no " + options.lang + " text";
    return trace;
  }
  try {
    ComposedInput input =
        ComposeQuestion(item.id, text->second, options.lang, options.composer, ctx);
    trace.input = input.text;
    GenerationRequest request{item.id, std::move(input), options.max_output_tokens,
                              options.backend_params};
    GenerationResult result = Generate(request, *ctx.backend);
    trace.prediction = result.canonical.text;
    trace.decoded = sparql::DecodePrediction(result.canonical, ctx.table);
  } catch (const Error& e) {
    trace.status = std::string(ErrorCodeName(e.code()));
    trace.message = e.what();
    return trace;
  } catch (const std::exception& e) {
    trace.status = "ERROR";
    trace.message = e.what();
    return trace;
  }
  outcome = ctx.endpoint->Execute(trace.decoded);
  if (const auto* failure = std::get_if<QueryFailure>(&outcome)) {
    trace.status = std::string(FailureKindName(failure->kind));
    trace.message = failure->message;
  }
  return trace;
}

}  // namespace

EvaluationRun RunEvaluation(const Benchmark& benchmark, const PipelineOptions& options,
                            const PipelineContext& ctx, std::string fingerprint) {
  if (!ctx.tokenizer || !ctx.backend || !ctx.endpoint) {
    throw Error(ErrorCode::kInvalidConfig, "pipeline needs a tokenizer, backend and endpoint");
  }
  if (options.workers < 1) throw Error(ErrorCode::kInvalidConfig, "workers must be >= 1");
  ctx.backend->CheckHealth();

  const std::size_t n = benchmark.items.size();
  std::vector<PerQuestionScore> scores(n);
  EvaluationRun run;
  run.traces.resize(n);
  ParallelFor(n, options.workers, [&](std::size_t i) {
    const QaItem& item = benchmark.items[i];
    QueryOutcome outcome;
    run.traces[i] = RunOne(item, options, ctx, outcome);
    scores[i] = ScoreQuestion(item.gold_answers, outcome, item.id);
    if (run.traces[i].status != "ok") {
      spdlog::debug("{}: {} {}", item.id, run.traces[i].status, run.traces[i].message);
    }
  });
  run.report = Aggregate(scores, std::move(fingerprint));
  return run;
}

}  // namespace kgqa
