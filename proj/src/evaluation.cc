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

#include "kgqa/evaluation.h"

#include <algorithm>
#include <cstdio>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {

using nlohmann::json;

PerQuestionScore ScoreQuestion(const AnswerSet& gold, const QueryOutcome& system,
                               std::string id) {
  const std::set<Row> g = AnswerTuples(gold);
  std::set<Row> s;
  if (const auto* answers = std::get_if<AnswerSet>(&system)) s = AnswerTuples(*answers);

  PerQuestionScore score;
  score.id = std::move(id);
  score.answered = !s.empty();
  score.gold_empty = g.empty();
  if (g.empty() && s.empty()) {
    score.precision = score.recall = score.f1 = 1.0;
    return score;
  }
  if (g.empty() || s.empty()) return score;

  std::size_t common = 0;
  for (const Row& row : s) common += g.count(row);
  score.precision = static_cast<double>(common) / static_cast<double>(s.size());
  score.recall = static_cast<double>(common) / static_cast<double>(g.size());
  const double sum = score.precision + score.recall;
  score.f1 = sum == 0 ? 0.0 : 2 * score.precision * score.recall / sum;
  return score;
}

bool CountsForQaldF1(const PerQuestionScore& score) {
  return score.answered || score.gold_empty;
}

EvalReport Aggregate(std::span<const PerQuestionScore> scores, std::string fingerprint) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "no per-question scores to aggregate");
  EvalReport r;
  r.per_question.assign(scores.begin(), scores.end());
  r.config_fingerprint = std::move(fingerprint);
  r.n_questions = static_cast<int>(scores.size());
  double p = 0, rc = 0, f = 0, fq = 0;
  int qald_population = 0;
  for (const PerQuestionScore& s : scores) {
    p += s.precision;
    rc += s.recall;
    f += s.f1;
    if (s.answered) ++r.n_answered;
    if (CountsForQaldF1(s)) {
      fq += s.f1;
      ++qald_population;
    }
  }
  const auto n = static_cast<double>(scores.size());
  r.macro_precision = p / n;
  r.macro_recall = rc / n;
  r.macro_f1 = f / n;
  r.macro_f1_qald = qald_population == 0 ? 0.0 : fq / qald_population;
  return r;
}

json ReportToJson(const EvalReport& report) {
  json per = json::array();
  for (const PerQuestionScore& s : report.per_question) {
    per.push_back({{"id", s.id},
                   {"precision", s.precision},
                   {"recall", s.recall},
                   {"f1", s.f1},
                   {"answered", s.answered},
                   {"gold_empty", s.gold_empty}});
  }
  return json{{"macro_precision", report.macro_precision},
              {"macro_recall", report.macro_recall},
              {"macro_f1", report.macro_f1},
              {"macro_f1_qald", report.macro_f1_qald},
              {"n_questions", report.n_questions},
              {"n_answered", report.n_answered},
              {"config_fingerprint", report.config_fingerprint},
              {"per_question", std::move(per)}};
}

EvalReport ReportFromJson(const json& j) {
  EvalReport r;
  try {
    r.macro_precision = j.at("macro_precision").get<double>();
    r.macro_recall = j.at("macro_recall").get<double>();
    r.macro_f1 = j.at("macro_f1").get<double>();
    r.macro_f1_qald = j.at("macro_f1_qald").get<double>();
    r.n_questions = j.at("n_questions").get<int>();
    r.n_answered = j.at("n_answered").get<int>();
    r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    for (const json& s : j.at("per_question")) {
      r.per_question.push_back(PerQuestionScore{
          s.at("id").get<std::string>(), s.at("precision").get<double>(),
          s.at("recall").get<double>(), s.at("f1").get<double>(),
          s.at("answered").get<bool>(), s.at("gold_empty").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("report: ") + e.what());
  }
  return r;
}

std::string FormatTable(const EvalReport& report, std::string_view row_label) {
  const int label_width = std::max<int>(static_cast<int>(row_label.size()), 6);
  char line[256];
  std::string out;
  std::snprintf(line, sizeof(line), "%-*s  %9s  %9s  %9s  %9s\n", label_width, "",
                "F1", "Precision", "Recall", "F1 QALD");
  out += line;
  std::snprintf(line, sizeof(line), "%-*.*s  %9.4f  %9.4f  %9.4f  %9.4f\n", label_width,
                static_cast<int>(row_label.size()), row_label.data(), report.macro_f1,
                report.macro_precision, report.macro_recall, report.macro_f1_qald);
  out += line;
  return out;
}

void EmitReport(const EvalReport& report, const std::filesystem::path& path, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    WriteFile(path, ReportToJson(report).dump(2) + "\n");
  } else {
    WriteFile(path, FormatTable(report));
  }
}

std::string ConfigFingerprint(const json& config, std::string_view dataset_hash) {
  return Sha256Hex(config.dump() + "\n" + std::string(dataset_hash));
}

}  // namespace kgqa
