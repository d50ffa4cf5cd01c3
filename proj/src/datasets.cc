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

#include "kgqa/datasets.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include <spdlog/spdlog.h>

#include "kgqa/canon.h"
#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {
namespace {

using nlohmann::json;

[[noreturn]] void Malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, path + ": " + what);
}

json ParseJsonText(std::string_view text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Malformed(name, e.what());
  }
}

std::string IdString(const json& id, const std::string& path) {
  if (id.is_string()) {
    if (id.get_ref<const std::string&>().empty()) Malformed(path, "empty id");
    return id.get<std::string>();
  }
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  Malformed(path, "id must be a string or integer");
}

KgTarget DetectTarget(std::string_view sparql) {
  if (sparql.find("wikidata.org") != std::string_view::npos ||
      sparql.find("wdt:") != std::string_view::npos ||
      sparql.find("wd:") != std::string_view::npos) {
    return KgTarget::kWikidata;
  }
  if (sparql.find("dbpedia.org") != std::string_view::npos ||
      sparql.find("dbo:") != std::string_view::npos ||
      sparql.find("dbr:") != std::string_view::npos) {
    return KgTarget::kDbpedia;
  }
  return KgTarget::kOther;
}

KgTarget DetectBenchmarkTarget(const std::vector<QaItem>& items,
                               const std::string& name) {
  std::set<KgTarget> seen;
  for (const QaItem& item : items) {
    KgTarget t = DetectTarget(item.gold_sparql);
    if (t != KgTarget::kOther) seen.insert(t);
  }
  if (seen.size() == 1) return *seen.begin();
  if (seen.size() > 1) {
    spdlog::warn("{}: gold queries mix knowledge graphs; target set to OTHER", name);
  }
  return KgTarget::kOther;
}

void FlagUnparseable(std::vector<QaItem>& items, const std::string& name) {
  std::size_t flagged = 0;
  for (QaItem& item : items) {
    if (auto failure = sparql::EncodeFailure(item.gold_sparql)) {
      item.unparseable = true;
      ++flagged;
      spdlog::debug("{}: item {} unparseable gold query: {}", name, item.id, *failure);
    }
  }
  if (flagged > 0) {
    spdlog::warn("{}: {} item(s) have gold queries that cannot be canonicalized", name,
                 flagged);
  }
}

std::string LanguageCode(const json& lang, const std::string& path) {
  if (!lang.is_string()) Malformed(path, "language must be a string");
  std::string code = lang.get<std::string>();
  if (code.size() != 2 || !std::isalpha(static_cast<unsigned char>(code[0])) ||
      !std::isalpha(static_cast<unsigned char>(code[1]))) {
    Malformed(path, "language code '" + code + "' is not a 2-letter ISO 639-1 code");
  }
  std::transform(code.begin(), code.end(), code.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return code;
}

QaItem ParseQaldQuestion(const json& q, const std::string& path, Source source) {
  if (!q.is_object()) Malformed(path, "question entry is not an object");
  QaItem item;
  item.source = source;

  auto id = q.find("id");
  if (id == q.end()) Malformed(path + ".id", "missing");
  item.id = IdString(*id, path + ".id");

  auto texts = q.find("question");
  if (texts == q.end() || !texts->is_array()) {
    Malformed(path + ".question", "missing or not an array");
  }
  for (std::size_t j = 0; j < texts->size(); ++j) {
    const std::string tpath = path + ".question[" + std::to_string(j) + "]";
    const json& t = (*texts)[j];
    if (!t.is_object()) Malformed(tpath, "not an object");
    auto lang = t.find("language");
    auto str = t.find("string");
    if (lang == t.end()) Malformed(tpath + ".language", "missing");
    if (str == t.end() || !str->is_string()) Malformed(tpath + ".string", "missing or not a string");
    std::string code = LanguageCode(*lang, tpath + ".language");
    if (!item.texts.emplace(code, str->get<std::string>()).second) {
      spdlog::warn("{}: duplicate '{}' text ignored", tpath, code);
    }
  }
  if (item.texts.empty()) Malformed(path + ".question", "no question texts");

  auto query = q.find("query");
  if (query == q.end() || !query->is_object()) Malformed(path + ".query", "missing or not an object");
  auto sparql = query->find("sparql");
  if (sparql == query->end() || !sparql->is_string() ||
      sparql->get_ref<const std::string&>().empty()) {
    Malformed(path + ".query.sparql", "missing or empty");
  }
  item.gold_sparql = sparql->get<std::string>();

  if (auto answers = q.find("answers"); answers != q.end() && !answers->is_null()) {
    if (!answers->is_array()) Malformed(path + ".answers", "not an array");
    std::vector<AnswerSet> parts;
    for (std::size_t j = 0; j < answers->size(); ++j) {
      try {
        parts.push_back(ParseResultsJson((*answers)[j]));
      } catch (const Error& e) {
        Malformed(path + ".answers[" + std::to_string(j) + "]", e.what());
      }
    }
    try {
      item.gold_answers = MergeResults(parts);
    } catch (const Error& e) {
      Malformed(path + ".answers", e.what());
    }
  }

  for (const auto& [key, value] : q.items()) {
    if (key != "id" && key != "question" && key != "query" && key != "answers") {
      item.extra[key] = value;
    }
  }
  return item;
}

}  // namespace

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kQald9Plus: return "qald9plus";
    case Source::kQald10: return "qald10";
    case Source::kLcQuad2: return "lcquad2";
  }
  return "unknown";
}

Source ParseSource(std::string_view name) {
  if (name == "qald9plus") return Source::kQald9Plus;
  if (name == "qald10") return Source::kQald10;
  if (name == "lcquad2") return Source::kLcQuad2;
  throw Error(ErrorCode::kInvalidArgument, "unknown dataset source '" + std::string(name) + "'");
}

std::string_view KgTargetName(KgTarget target) {
  switch (target) {
    case KgTarget::kWikidata: return "wikidata";
    case KgTarget::kDbpedia: return "dbpedia";
    case KgTarget::kOther: return "other";
  }
  return "other";
}

Benchmark ParseQald(std::string_view json_text, Source source, std::string name) {
  if (source == Source::kLcQuad2) {
    throw Error(ErrorCode::kInvalidArgument, "use ParseLcQuad for LC-QuAD files");
  }
  json root = ParseJsonText(json_text, name);
  if (!root.is_object()) Malformed(name, "top level is not an object");
  auto questions = root.find("questions");
  if (questions == root.end() || !questions->is_array()) {
    Malformed(name + ": questions", "missing or not an array");
  }
  if (questions->empty()) Malformed(name + ": questions", "benchmark has zero questions");

  Benchmark b;
  b.name = std::move(name);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < questions->size(); ++i) {
    QaItem item = ParseQaldQuestion((*questions)[i],
                                    b.name + ": questions[" + std::to_string(i) + "]", source);
    if (!ids.insert(item.id).second) {
      throw Error(ErrorCode::kDuplicateId, b.name + ": id '" + item.id + "' repeated");
    }
    b.items.push_back(std::move(item));
  }
  for (const auto& [key, value] : root.items()) {
    if (key != "questions") b.extra[key] = value;
  }
  FlagUnparseable(b.items, b.name);
  b.kg_target = DetectBenchmarkTarget(b.items, b.name);
  return b;
}

Benchmark LoadQald(const std::filesystem::path& path, Source source) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedFile, e.what());
  }
  return ParseQald(text, source, path.filename().string());
}

std::string SerializeQald(const Benchmark& benchmark) {
  json root = benchmark.extra.is_object() ? benchmark.extra : json::object();
  json questions = json::array();
  for (const QaItem& item : benchmark.items) {
    json q = item.extra.is_object() ? item.extra : json::object();
    q["id"] = item.id;
    json texts = json::array();
    for (const auto& [lang, text] : item.texts) {
      texts.push_back({{"language", lang}, {"string", text}});
    }
    q["question"] = std::move(texts);
    q["query"] = {{"sparql", item.gold_sparql}};
    q["answers"] = json::array({ToResultsJson(item.gold_answers)});
    questions.push_back(std::move(q));
  }
  root["questions"] = std::move(questions);
  return root.dump(2);
}

void SaveQald(const Benchmark& benchmark, const std::filesystem::path& path) {
  WriteFile(path, SerializeQald(benchmark) + "\n");
}

Benchmark ParseLcQuad(std::string_view json_text, std::string name,
                      LcQuadOptions options) {
  json root = ParseJsonText(json_text, name);
  if (!root.is_array()) Malformed(name, "top level is not an array");
  if (root.empty()) Malformed(name, "benchmark has zero records");

  Benchmark b;
  b.name = std::move(name);
  std::set<std::string> ids;
  std::size_t skipped = 0;
  auto add = [&](QaItem item) {
    if (!ids.insert(item.id).second) {
      throw Error(ErrorCode::kDuplicateId, b.name + ": uid '" + item.id + "' repeated");
    }
    b.items.push_back(std::move(item));
  };
  // LC-QuAD marks missing text as null, "" or the literal string "[]".
  auto usable_text = [](const json& v) {
    if (!v.is_string()) return false;
    const std::string text = CollapseWhitespace(v.get_ref<const std::string&>());
    return !text.empty() && text != "[]";
  };

  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = b.name + ": [" + std::to_string(i) + "]";
    const json& rec = root[i];
    if (!rec.is_object()) Malformed(path, "record is not an object");
    auto uid = rec.find("uid");
    if (uid == rec.end()) Malformed(path + ".uid", "missing");
    auto sparql = rec.find("sparql_wikidata");
    if (sparql == rec.end() || !sparql->is_string() ||
        sparql->get_ref<const std::string&>().empty()) {
      Malformed(path + ".sparql_wikidata", "missing or empty");
    }
    auto question = rec.find("question");
    if (question == rec.end()) Malformed(path + ".question", "missing");

    QaItem item;
    item.source = Source::kLcQuad2;
    item.id = IdString(*uid, path + ".uid");
    item.gold_sparql = sparql->get<std::string>();
    for (const auto& [key, value] : rec.items()) {
      if (key != "uid" && key != "question" && key != "sparql_wikidata") {
        item.extra[key] = value;
      }
    }
    std::optional<QaItem> paraphrase;
    if (options.include_paraphrases) {
      if (auto para = rec.find("paraphrased_question");
          para != rec.end() && usable_text(*para)) {
        paraphrase = item;
        paraphrase->id += "-p";
        paraphrase->texts["en"] = para->get<std::string>();
        paraphrase->extra.erase("paraphrased_question");
      }
    }
    if (usable_text(*question)) {
      item.texts["en"] = question->get<std::string>();
      add(std::move(item));
    } else {
      ++skipped;
    }
    if (paraphrase) add(std::move(*paraphrase));
  }
  if (skipped > 0) {
    spdlog::warn("{}: skipped {} record(s) with null or blank question text", b.name, skipped);
  }
  if (b.items.empty()) Malformed(b.name, "no usable records");
  FlagUnparseable(b.items, b.name);
  b.kg_target = KgTarget::kWikidata;
  return b;
}

Benchmark LoadLcQuad(const std::filesystem::path& path, LcQuadOptions options) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedFile, e.what());
  }
  return ParseLcQuad(text, path.filename().string(), options);
}

Benchmark FilterEmptyGold(const Benchmark& benchmark) {
  Benchmark out;
  out.name = benchmark.name;
  out.kg_target = benchmark.kg_target;
  out.extra = benchmark.extra;
  for (const QaItem& item : benchmark.items) {
    if (item.gold_answers.kind == AnswerSet::Kind::kEmpty) continue;
    if (item.gold_answers.kind == AnswerSet::Kind::kBindings && item.gold_answers.rows.empty())
      continue;
    out.items.push_back(item);
  }
  return out;
}

std::string BenchmarkHash(const Benchmark& benchmark) {
  return Sha256Hex(SerializeQald(benchmark));
}

}  // namespace kgqa
