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

#ifndef KGQA_EXPORT_H_
#define KGQA_EXPORT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/composer.h"
#include "kgqa/datasets.h"
#include "kgqa/pipeline.h"

namespace kgqa {

struct TrainingRecord {
  std::string id;
  std::string lang;
  std::string input;
  std::string target;

  bool operator==(const TrainingRecord&) const = default;
};

struct ExportStats {
  std::size_t written = 0;
  std::size_t skipped_unparseable = 0;
};

// One (composed input, canonical target) record per parseable item, in
// benchmark order. Throws Error(kMissingLanguage) if any item lacks `lang`
// text, and propagates provider and composer errors.
std::vector<TrainingRecord> ExportTrainingPairs(const Benchmark& benchmark,
                                                std::string_view lang,
                                                const ComposerConfig& cfg,
                                                const PipelineContext& ctx,
                                                ExportStats* stats = nullptr);

// {"id","lang","input","target"} per line.
std::string ToJsonl(const std::vector<TrainingRecord>& records);
std::vector<TrainingRecord> TrainingRecordsFromJsonl(std::string_view jsonl);

}  // namespace kgqa

#endif  // KGQA_EXPORT_H_
