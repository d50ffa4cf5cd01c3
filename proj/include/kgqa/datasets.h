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

#ifndef KGQA_DATASETS_H_
#define KGQA_DATASETS_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/answer_set.h"

namespace kgqa {

enum class Source { kQald9Plus, kQald10, kLcQuad2 };
enum class KgTarget { kWikidata, kDbpedia, kOther };

std::string_view SourceName(Source source);
Source ParseSource(std::string_view name);  // "qald9plus", "qald10", "lcquad2"
std::string_view KgTargetName(KgTarget target);

struct QaItem {
  std::string id;
  // ISO 639-1 code -> question text.
  std::map<std::string, std::string> texts;
  std::string gold_sparql;
  AnswerSet gold_answers;
  Source source = Source::kQald9Plus;
  // Set at load time when the gold query cannot be canonicalized.
  bool unparseable = false;
  // Question-level fields this model does not interpret (answertype,
  // aggregation, ...), kept so that a saved benchmark loses nothing.
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const QaItem&) const = default;
};

struct Benchmark {
  std::string name;
  std::vector<QaItem> items;
  KgTarget kg_target = KgTarget::kWikidata;
  // Top-level fields other than "questions" (QALD "dataset" block).
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const Benchmark&) const = default;
};

// QALD JSON. Throws Error(kMalformedFile) with a JSON path to the offending
// element, or Error(kDuplicateId).
Benchmark LoadQald(const std::filesystem::path& path, Source source);
Benchmark ParseQald(std::string_view json_text, Source source, std::string name);

std::string SerializeQald(const Benchmark& benchmark);
void SaveQald(const Benchmark& benchmark, const std::filesystem::path& path);

struct LcQuadOptions {
  // Also ingest "paraphrased_question" as a separate item ("<uid>-p").
  bool include_paraphrases = false;
};

// LC-QuAD 2.0 JSON. Items carry English text only and EMPTY gold answers.
// Records whose question text is null or blank are skipped and logged.
Benchmark LoadLcQuad(const std::filesystem::path& path, LcQuadOptions options = {});
Benchmark ParseLcQuad(std::string_view json_text, std::string name,
                      LcQuadOptions options = {});

// Items whose gold answer set is non-empty, in original order.
Benchmark FilterEmptyGold(const Benchmark& benchmark);

// Hash of the serialized benchmark, used in fingerprints and manifests.
std::string BenchmarkHash(const Benchmark& benchmark);

}  // namespace kgqa

#endif  // KGQA_DATASETS_H_
