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

#include "kgqa/export.h"

#include <spdlog/spdlog.h>

#include "kgqa/canon.h"
#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {

using nlohmann::json;

std::vector<TrainingRecord> ExportTrainingPairs(const Benchmark& benchmark,
                                                std::string_view lang,
                                                const ComposerConfig& cfg,
                                                const PipelineContext& ctx,
                                                ExportStats* stats) {
  if (!ctx.tokenizer) throw Error(ErrorCode::kInvalidConfig, "export needs a tokenizer");
  for (const QaItem& item : benchmark.items) {
    if (item.texts.find(std::string(lang)) == item.texts.end()) {
      throw Error(ErrorCode::kMissingLanguage,
                  "item " + item.id + " has no '" + std::string(lang) + "' question text");
    }
  }
  ExportStats local;
  std::vector<TrainingRecord> records;
  records.reserve(benchmark.items.size());
  for (const QaItem& item : benchmark.items) {
    if (item.unparseable) {
      ++local.skipped_unparseable;
      continue;
    }
    const std::string& question = item.texts.at(std::string(lang));
    ComposedInput input = ComposeQuestion(item.id, question, lang, cfg, ctx);
    sparql::CanonicalQuery target = sparql::EncodeTarget(item.gold_sparql, ctx.table);
    records.push_back(TrainingRecord{item.id, std::string(lang), std::move(input.text),
                                     std::move(target.text)});
  }
  local.written = records.size();
  if (local.skipped_unparseable > 0) {
    spdlog::warn("export: skipped {} item(s) with unparseable gold SPARQL",
                 local.skipped_unparseable);
  }
  if (stats) *stats = local;
  return records;
}

std::string ToJsonl(const std::vector<TrainingRecord>& records) {
  std::string out;
  for (const TrainingRecord& r : records) {
    out += json{{"id", r.id}, {"lang", r.lang}, {"input", r.input}, {"target", r.target}}.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<TrainingRecord> TrainingRecordsFromJsonl(std::string_view jsonl) {
  std::vector<TrainingRecord> records;
  int line_no = 0;
  for (const std::string& line : SplitLines(jsonl)) {
    ++line_no;
    if (CollapseWhitespace(line).empty()) continue;
    try {
      json j = json::parse(line);
      records.push_back(TrainingRecord{j.at("id").get<std::string>(),
                                       j.at("lang").get<std::string>(),
                                       j.at("input").get<std::string>(),
                                       j.at("target").get<std::string>()});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedFile,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace kgqa
