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

#ifndef KGQA_EVALUATION_H_
#define KGQA_EVALUATION_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/answer_set.h"
#include "kgqa/kg_endpoint.h"

namespace kgqa {

struct PerQuestionScore {
  std::string id;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  // The system produced a non-empty answer without failing.
  bool answered = false;
  bool gold_empty = false;

  bool operator==(const PerQuestionScore&) const = default;
};

struct EvalReport {
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  double macro_f1_qald = 0;
  int n_questions = 0;
  int n_answered = 0;
  std::vector<PerQuestionScore> per_question;
  std::string config_fingerprint;

  bool operator==(const EvalReport&) const = default;
};

// Set-based precision/recall/F1 over value tuples. A QueryFailure counts as
// an empty system answer. Both empty scores 1; exactly one empty scores 0.
PerQuestionScore ScoreQuestion(const AnswerSet& gold, const QueryOutcome& system,
                               std::string id = {});

// The Macro F1 QALD population: questions the system answered plus
// questions whose gold answer is empty. Unanswered questions with a
// non-empty gold answer are left out of this one average.
bool CountsForQaldF1(const PerQuestionScore& score);

// Macro averages over all questions, plus macro F1 QALD over the population
// above (0 when that population is empty). Throws Error(kEmptyInput).
EvalReport Aggregate(std::span<const PerQuestionScore> scores, std::string fingerprint = {});

enum class ReportFormat { kJson, kTable };

nlohmann::json ReportToJson(const EvalReport& report);
EvalReport ReportFromJson(const nlohmann::json& j);
// Aligned text with the columns F1, Precision, Recall, F1 QALD.
std::string FormatTable(const EvalReport& report, std::string_view row_label = "system");

// Throws Error(kIoError).
void EmitReport(const EvalReport& report, const std::filesystem::path& path, ReportFormat format);

// Stable hash of a run configuration and the dataset it ran on.
std::string ConfigFingerprint(const nlohmann::json& config, std::string_view dataset_hash);

}  // namespace kgqa

#endif  // KGQA_EVALUATION_H_
