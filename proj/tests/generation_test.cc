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

#include <atomic>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "kgqa/composer.h"
#include "kgqa/error.h"
#include "kgqa/generation.h"
#include "kgqa/tokenizer.h"
#include "kgqa/util.h"
#include "support/stub_server.h"

namespace kgqa {
namespace {

using nlohmann::json;

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

GenerationRequest Request(std::string id, std::string text = "<q> hi") {
  GenerationRequest r;
  r.question_id = std::move(id);
  r.input.text = std::move(text);
  return r;
}

TEST(GoldEchoBackend, EchoesEncodedGold) {
  const Benchmark b = LoadQald(kData + "/qald_sample.json", Source::kQald9Plus);
  const auto table = sparql::PrefixTable::WikidataDefault();
  GoldEchoBackend backend(b, table);
  for (const QaItem& item : b.items) {
    const std::string out = backend.Generate(Request(item.id));
    if (item.unparseable) {
      EXPECT_EQ(out, "") << item.id;
    } else {
      EXPECT_EQ(out, sparql::EncodeTarget(item.gold_sparql, table).text) << item.id;
    }
  }
  EXPECT_EQ(backend.Generate(Request("no-such-id")), "");
  EXPECT_EQ(EmptyBackend().Generate(Request("1")), "");
}

TEST(Generate, StampsResult) {
  EmptyBackend backend;
  GenerationResult r = Generate(Request("1"), backend);
  EXPECT_EQ(r.backend, "empty");
  EXPECT_EQ(r.canonical.provenance, sparql::Provenance::kModelOutput);
  EXPECT_GE(r.latency_ms, 0);
  GenerationRequest bad = Request("1");
  bad.max_output_tokens = 0;
  EXPECT_EQ(CodeOf([&] { Generate(bad, backend); }), ErrorCode::kInvalidArgument);
}

TEST(RemoteGenerator, Protocol) {
  kgqa::testing::StubServer stub;
  json seen;
  stub.server().Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  stub.server().Post("/generate", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(json{{"output", "SELECT DISTINCT var_x WHERE brack_open brack_close"}}.dump(),
                    "application/json");
  });
  stub.Start();
  RemoteGenerator gen({stub.url(), std::chrono::milliseconds(2000), 2});
  EXPECT_NO_THROW(gen.CheckHealth());
  GenerationRequest req = Request("q1", "<q> Who ? <pad>");
  req.max_output_tokens = 128;
  req.backend_params = {{"num_beams", 4}};
  GenerationResult r = Generate(req, gen);
  EXPECT_EQ(r.canonical.text, "SELECT DISTINCT var_x WHERE brack_open brack_close");
  EXPECT_EQ(seen, (json{{"input", "<q> Who ? <pad>"},
                        {"max_new_tokens", 128},
                        {"params", {{"do_sample", false}, {"num_beams", 4}}}}));
}

TEST(RemoteGenerator, Failures) {
  kgqa::testing::StubServer stub;
  stub.server().Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
  });
  stub.server().Post("/generate", [](const httplib::Request& req, httplib::Response& res) {
    const std::string input = json::parse(req.body)["input"];
    if (input == "slow") std::this_thread::sleep_for(std::chrono::milliseconds(300));
    if (input == "garbage") {
      res.set_content("not json", "text/plain");
      return;
    }
    if (input == "error") res.status = 500;
    res.set_content(R"({"output":"ASK brack_open brack_close"})", "application/json");
  });
  stub.Start();
  RemoteGenerator gen({stub.url(), std::chrono::milliseconds(50), 2});
  EXPECT_EQ(CodeOf([&] { gen.CheckHealth(); }), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(CodeOf([&] { gen.Generate(Request("a", "slow")); }), ErrorCode::kTimeout);
  EXPECT_EQ(CodeOf([&] { gen.Generate(Request("a", "garbage")); }),
            ErrorCode::kBackendUnavailable);
  EXPECT_EQ(CodeOf([&] { gen.Generate(Request("a", "error")); }), ErrorCode::kBackendUnavailable);

  RemoteGenerator nowhere({"http://127.0.0.1:1", std::chrono::milliseconds(200), 1});
  EXPECT_EQ(CodeOf([&] { nowhere.CheckHealth(); }), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(CodeOf([&] { nowhere.Generate(Request("a")); }), ErrorCode::kBackendUnavailable);
}

TEST(WhitespaceTokenizer, StableIdsAndDecode) {
  WhitespaceTokenizer tok;
  std::vector<int> a = tok.Encode("<q> who  is\tit <pad> <pad>");
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a[4], a[5]);
  EXPECT_EQ(tok.Encode("<pad>"), std::vector<int>{a[4]});
  EXPECT_EQ(tok.Decode(a), "<q> who is it <pad> <pad>");
  EXPECT_TRUE(tok.IsAtomic("<dpt>"));
  EXPECT_FALSE(tok.IsAtomic("two words"));
  EXPECT_FALSE(tok.IsAtomic(""));
  EXPECT_EQ(CodeOf([&] { tok.Decode(std::vector<int>{999}); }), ErrorCode::kInvalidArgument);
}

TEST(WhitespaceTokenizer, ConcurrentEncodeAgrees) {
  WhitespaceTokenizer tok;
  std::vector<std::future<std::vector<int>>> futures;
  for (int t = 0; t < 8; ++t) {
    futures.push_back(std::async(std::launch::async, [&] {
      std::vector<int> last;
      for (int i = 0; i < 200; ++i) last = tok.Encode("w" + std::to_string(i) + " shared");
      return tok.Encode("w7 w150 shared");
    }));
  }
  std::vector<int> first = futures[0].get();
  for (std::size_t i = 1; i < futures.size(); ++i) EXPECT_EQ(futures[i].get(), first);
  EXPECT_EQ(tok.Decode(first), "w7 w150 shared");
}

// Stand-in for the model server tokenizer: whitespace pieces, except that
// "<pad>" comes back as two ids when split_pad is set.
void ServeTokenize(httplib::Server& server, bool split_pad, std::atomic<int>* calls) {
  server.Post("/tokenize", [=](const httplib::Request& req, httplib::Response& res) {
    ++*calls;
    json ids = json::array();
    for (const std::string& w : SplitWhitespace(json::parse(req.body).at("text").get<std::string>())) {
      ids.push_back(static_cast<int>(std::hash<std::string>{}(w) % 30000));
      if (split_pad && w == "<pad>") ids.push_back(1);
    }
    res.set_content(json{{"ids", ids}}.dump(), "application/json");
  });
}

TEST(RemoteTokenizer, AtomicityValidation) {
  std::atomic<int> calls{0};
  kgqa::testing::StubServer good;
  ServeTokenize(good.server(), false, &calls);
  good.Start();
  RemoteTokenizer tok(good.url(), std::chrono::milliseconds(2000));
  EXPECT_EQ(tok.Encode("a b c").size(), 3u);
  EXPECT_TRUE(ValidateConfig(ComposerConfig::Default(), tok).AllFit());
  EXPECT_GT(calls.load(), 5);
  EXPECT_EQ(CodeOf([&] { tok.Decode(std::vector<int>{1}); }), ErrorCode::kInvalidArgument);

  kgqa::testing::StubServer bad;
  ServeTokenize(bad.server(), true, &calls);
  bad.Start();
  RemoteTokenizer splitting(bad.url(), std::chrono::milliseconds(2000));
  EXPECT_EQ(CodeOf([&] { ValidateConfig(ComposerConfig::Default(), splitting); }),
            ErrorCode::kSeparatorNotAtomic);

  RemoteTokenizer nowhere("http://127.0.0.1:1", std::chrono::milliseconds(200));
  EXPECT_EQ(CodeOf([&] { nowhere.Encode("a"); }), ErrorCode::kBackendUnavailable);
}

TEST(RemoteTokenizer, ComposeAgreesWithServer) {
  std::atomic<int> calls{0};
  kgqa::testing::StubServer stub;
  ServeTokenize(stub.server(), false, &calls);
  stub.Start();
  RemoteTokenizer remote(stub.url(), std::chrono::milliseconds(2000));
  WhitespaceTokenizer local;
  AuxiliaryBundle aux;
  aux.entity_ids = std::vector<std::string>{"Q5"};
  ComposerConfig cfg = ComposerConfig::Default();
  cfg.use_ling = false;
  EXPECT_EQ(Compose("Who is it?", aux, cfg, remote), Compose("Who is it?", aux, cfg, local));
}

}  // namespace
}  // namespace kgqa
