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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "kgqa/datasets.h"
#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {
namespace {

const std::string kData = KGQA_TEST_DATA_DIR;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(LoadQald, Sample) {
  Benchmark b = LoadQald(kData + "/qald_sample.json", Source::kQald9Plus);
  ASSERT_EQ(b.items.size(), 8u);
  EXPECT_EQ(b.kg_target, KgTarget::kWikidata);
  const QaItem& first = b.items[0];
  EXPECT_EQ(first.id, "1");
  EXPECT_EQ(first.texts.size(), 3u);
  EXPECT_EQ(first.texts.at("ru"), "Кто внуки Брюса Ли?");
  EXPECT_EQ(b.items[1].gold_answers, AnswerSet::Boolean(true));
  EXPECT_EQ(b.items[1].extra.at("answertype"), "boolean");
  EXPECT_EQ(b.items[2].gold_answers.rows.begin()->at(0), Value::Numeric("195"));
  EXPECT_TRUE(b.items[3].gold_answers.IsEmpty());
  EXPECT_EQ(b.items[4].gold_answers.rows.begin()->at(0),
            Value::Iri("http://www.wikidata.org/entity/Q100"));
  EXPECT_EQ(b.items[6].gold_answers.rows.begin()->at(0), Value::Literal("Berlin", "", "en"));
  for (std::size_t i = 0; i < 7; ++i) EXPECT_FALSE(b.items[i].unparseable) << i;
  EXPECT_TRUE(b.items[7].unparseable);
}

TEST(LoadQald, Errors) {
  EXPECT_EQ(CodeOf([] { ParseQald(R"({"questions": []})", Source::kQald10, "t"); }),
            ErrorCode::kMalformedFile);
  EXPECT_EQ(CodeOf([] { ParseQald("{", Source::kQald10, "t"); }), ErrorCode::kMalformedFile);
  const std::string dup = R"({"questions": [
      {"id": 1, "question": [{"language": "en", "string": "a"}], "query": {"sparql": "ASK {}"}, "answers": []},
      {"id": "1", "question": [{"language": "en", "string": "b"}], "query": {"sparql": "ASK {}"}, "answers": []}]})";
  EXPECT_EQ(CodeOf([&] { ParseQald(dup, Source::kQald10, "t"); }), ErrorCode::kDuplicateId);
  const std::string bad_lang = R"({"questions": [
      {"id": 1, "question": [{"language": "eng", "string": "a"}], "query": {"sparql": "ASK {}"}}]})";
  EXPECT_EQ(CodeOf([&] { ParseQald(bad_lang, Source::kQald10, "t"); }), ErrorCode::kMalformedFile);
  const std::string no_query = R"({"questions": [
      {"id": 1, "question": [{"language": "en", "string": "a"}], "query": {}}]})";
  EXPECT_NE(MessageOf([&] { ParseQald(no_query, Source::kQald10, "t"); }).find("questions[0]"),
            std::string::npos);
  EXPECT_EQ(CodeOf([] { LoadQald("/nonexistent/file.json", Source::kQald10); }),
            ErrorCode::kMalformedFile);
}

TEST(LoadQald, SerializeReloadIsLossless) {
  Benchmark b = LoadQald(kData + "/qald_sample.json", Source::kQald9Plus);
  Benchmark again = ParseQald(SerializeQald(b), Source::kQald9Plus, b.name);
  EXPECT_EQ(again, b);
  EXPECT_EQ(BenchmarkHash(again), BenchmarkHash(b));
}

// Round-trip over generated benchmarks with arbitrary texts and answers.
TEST(LoadQald, SerializeReloadProperty) {
  std::mt19937 rng(5);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<std::string> langs = {"en", "de", "ru", "zh", "ja", "uk", "fr"};
  const std::vector<std::string> words = {"Who", "wer", "\"quoted\"", "Ли", "東京", "a\tb", "?", "{x}"};
  for (int iter = 0; iter < 200; ++iter) {
    Benchmark b;
    b.name = "gen";
    const int n = uniform(1, 6);
    for (int i = 0; i < n; ++i) {
      QaItem item;
      item.id = std::to_string(i * 7 + iter);
      for (int l = 0; l < uniform(1, 4); ++l) {
        std::string text;
        for (int w = 0; w < uniform(1, 5); ++w) text += words[uniform(0, 7)] + " ";
        item.texts[langs[uniform(0, 6)]] = text + "?";
      }
      item.gold_sparql = "SELECT ?x WHERE { ?x wdt:P31 wd:Q" + std::to_string(i) + " }";
      switch (uniform(0, 2)) {
        case 0: item.gold_answers = AnswerSet::Boolean(uniform(0, 1)); break;
        case 1: item.gold_answers = AnswerSet::Empty(); break;
        default: {
          std::set<Row> rows;
          for (int r = 0; r < uniform(1, 4); ++r) {
            rows.insert({Value::Iri("http://www.wikidata.org/entity/Q" + std::to_string(r)),
                          r % 2 ? Value::Numeric(std::to_string(r) + ".5")
                                : Value::Literal(words[uniform(0, 7)], "", "en")});
          }
          item.gold_answers = AnswerSet::Bindings({"x", "y"}, std::move(rows));
        }
      }
      b.items.push_back(std::move(item));
    }
    ASSERT_EQ(ParseQald(SerializeQald(b), Source::kQald9Plus, "gen"), b);
  }
}

TEST(FilterEmptyGold, Laws) {
  Benchmark b = LoadQald(kData + "/qald_sample.json", Source::kQald9Plus);
  Benchmark f = FilterEmptyGold(b);
  std::vector<std::string> ids;
  for (const QaItem& item : f.items) ids.push_back(item.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"1", "2", "3", "5", "6", "7"}));
  EXPECT_EQ(FilterEmptyGold(f), f);
  EXPECT_LE(f.items.size(), b.items.size());

  Benchmark all_empty = b;
  for (QaItem& item : all_empty.items) item.gold_answers = AnswerSet::Empty();
  EXPECT_TRUE(FilterEmptyGold(all_empty).items.empty());
}

TEST(LoadLcQuad, Sample) {
  Benchmark b = LoadLcQuad(kData + "/lcquad_sample.json");
  ASSERT_EQ(b.items.size(), 3u);
  for (const QaItem& item : b.items) {
    EXPECT_EQ(item.source, Source::kLcQuad2);
    EXPECT_EQ(item.texts.size(), 1u);
    EXPECT_TRUE(item.texts.contains("en"));
    EXPECT_TRUE(item.gold_answers.IsEmpty());
    EXPECT_FALSE(item.unparseable);
  }
  EXPECT_EQ(b.items[0].id, "19719");

  Benchmark with_para = LoadLcQuad(kData + "/lcquad_sample.json", {.include_paraphrases = true});
  std::vector<std::string> ids;
  for (const QaItem& item : with_para.items) ids.push_back(item.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"19719", "19719-p", "7141", "7141-p", "3002"}));
}

TEST(LoadLcQuad, ThreeEntriesThreeItems) {
  const std::string text = R"([
      {"uid": 1, "question": "a?", "sparql_wikidata": "ASK { wd:Q1 ?p ?o }"},
      {"uid": 2, "question": "b?", "sparql_wikidata": "ASK { wd:Q2 ?p ?o }"},
      {"uid": 3, "question": "c?", "sparql_wikidata": "ASK { wd:Q3 ?p ?o }"}])";
  EXPECT_EQ(ParseLcQuad(text, "t").items.size(), 3u);
}

TEST(LoadLcQuad, MissingSparqlIsMalformed) {
  EXPECT_EQ(CodeOf([] { ParseLcQuad(R"([{"uid": 1, "question": "a?"}])", "t"); }),
            ErrorCode::kMalformedFile);
}

}  // namespace
}  // namespace kgqa
