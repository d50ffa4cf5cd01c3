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
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kgqa/error.h"
#include "kgqa/ling_features.h"
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

// Depth by walking each node up to the root; quadratic but obviously right.
std::vector<int> NaiveDepths(const std::vector<int>& heads) {
  std::vector<int> out;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    int d = 1;
    for (int j = static_cast<int>(i); heads[j] != j; j = heads[j]) ++d;
    out.push_back(d);
  }
  return out;
}

TEST(ComputeDepths, FigureSentence) {
  EXPECT_EQ(ComputeDepths(std::vector<int>{1, 1, 3, 1, 3, 6, 4, 1}),
            (std::vector<int>{2, 1, 3, 2, 3, 5, 4, 2}));
}

TEST(ComputeDepths, SmallCases) {
  EXPECT_EQ(ComputeDepths(std::vector<int>{0}), std::vector<int>{1});
  EXPECT_TRUE(ComputeDepths(std::vector<int>{}).empty());
  EXPECT_EQ(CodeOf([] { ComputeDepths(std::vector<int>{1, 0}); }), ErrorCode::kNotATree);
  EXPECT_EQ(CodeOf([] { ComputeDepths(std::vector<int>{0, 1}); }), ErrorCode::kNotATree);
  EXPECT_EQ(CodeOf([] { ComputeDepths(std::vector<int>{0, 5}); }), ErrorCode::kNotATree);
  EXPECT_EQ(CodeOf([] { ComputeDepths(std::vector<int>{0, -1}); }), ErrorCode::kNotATree);
  EXPECT_EQ(CodeOf([] { ComputeDepths(std::vector<int>{0, 2, 1}); }), ErrorCode::kNotATree);
}

TEST(ComputeDepths, RandomTrees) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 10000; ++iter) {
    const int n = std::uniform_int_distribution<int>(1, 200)(rng);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> heads(n);
    heads[order[0]] = order[0];
    for (int i = 1; i < n; ++i) {
      heads[order[i]] = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
    }
    const std::vector<int> depths = ComputeDepths(heads);
    ASSERT_EQ(depths, NaiveDepths(heads));
    int roots = 0;
    for (int i = 0; i < n; ++i) {
      ASSERT_GE(depths[i], 1);
      ASSERT_LE(depths[i], n);
      if (heads[i] == i) {
        ++roots;
        ASSERT_EQ(depths[i], 1);
      } else {
        ASSERT_EQ(depths[i], depths[heads[i]] + 1);
      }
    }
    ASSERT_EQ(std::count(depths.begin(), depths.end(), 1), 1);
    ASSERT_EQ(roots, 1);
  }
}

TEST(ComputeDepths, RandomCyclesRejected) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    const int n = std::uniform_int_distribution<int>(2, 60)(rng);
    std::vector<int> heads(n);
    for (int i = 0; i < n; ++i) heads[i] = i == 0 ? 0 : i - 1;
    // Re-point a non-root node at one of its descendants.
    const int a = std::uniform_int_distribution<int>(1, n - 1)(rng);
    heads[a] = std::uniform_int_distribution<int>(a, n - 1)(rng);
    ASSERT_EQ(CodeOf([&] { ComputeDepths(heads); }), ErrorCode::kNotATree);
  }
}

TEST(ComputeDepths, LongChainsAreIterative) {
  const int n = 10000;
  std::vector<int> down(n), up(n);
  for (int i = 0; i < n; ++i) {
    down[i] = i == 0 ? 0 : i - 1;
    up[i] = i == n - 1 ? n - 1 : i + 1;
  }
  std::vector<int> expected(n);
  std::iota(expected.begin(), expected.end(), 1);
  EXPECT_EQ(ComputeDepths(down), expected);
  std::reverse(expected.begin(), expected.end());
  EXPECT_EQ(ComputeDepths(up), expected);
}

class CountingProvider : public AnnotationProvider {
 public:
  std::string name() const override { return "counting"; }
  bool Supports(std::string_view lang) const override { return lang == "en"; }
  std::vector<TokenAnnotation> Annotate(std::string_view, std::string_view) const override {
    ++calls;
    return {{"Hi", "", "ROOT", 0}, {"!", "PUNCT", "", 0}};
  }
  mutable int calls = 0;
};

TEST(Annotate, FixtureFigureSentence) {
  auto provider = FixtureAnnotationProvider::Load(kData + "/annotations_en.jsonl");
  AnnotatedQuestion a = Annotate("Who are the grandchildren of Bruce Lee?", "en", provider);
  std::vector<std::string> pos, dep;
  for (const auto& t : a.tokens) {
    pos.push_back(t.pos);
    dep.push_back(t.dep_rel);
  }
  EXPECT_EQ(Join(pos, " "), "PRON AUX DET NOUN ADP PROPN PROPN PUNCT");
  EXPECT_EQ(Join(dep, " "), "attr ROOT det nsubj prep compound pobj punct");
  EXPECT_EQ(a.depths, (std::vector<int>{2, 1, 3, 2, 3, 5, 4, 2}));
  EXPECT_EQ(Annotate("Who are the grandchildren of Bruce Lee?", "en", provider), a);
}

TEST(Annotate, EdgeCases) {
  CountingProvider provider;
  AnnotatedQuestion empty = Annotate("   ", "en", provider);
  EXPECT_TRUE(empty.tokens.empty());
  EXPECT_EQ(provider.calls, 0);
  EXPECT_EQ(CodeOf([&] { Annotate("x", "xx", provider); }), ErrorCode::kUnsupportedLanguage);

  AnnotatedQuestion patched = Annotate("Hi!", "en", provider);
  EXPECT_EQ(patched.tokens[0].pos, "X");
  EXPECT_EQ(patched.tokens[1].dep_rel, "dep");

  auto fixture = FixtureAnnotationProvider::Load(kData + "/annotations_en.jsonl");
  EXPECT_EQ(CodeOf([&] { Annotate("Not in the fixture", "en", fixture); }),
            ErrorCode::kProviderUnavailable);
  EXPECT_EQ(CodeOf([&] { Annotate("Wer?", "de", fixture); }), ErrorCode::kUnsupportedLanguage);
}

TEST(FixtureAnnotationProvider, JsonlRoundTrip) {
  auto fixture = FixtureAnnotationProvider::Load(kData + "/annotations_en.jsonl");
  EXPECT_EQ(fixture.size(), 8u);
  auto again = FixtureAnnotationProvider::Parse(fixture.ToJsonl());
  EXPECT_EQ(again.ToJsonl(), fixture.ToJsonl());
  EXPECT_EQ(CodeOf([] { FixtureAnnotationProvider::Parse("{not json}\n"); }),
            ErrorCode::kProviderUnavailable);
}

TEST(LanguageRouted, DispatchesByLanguage) {
  LanguageRoutedAnnotationProvider routed;
  auto counting = std::make_shared<CountingProvider>();
  routed.Route("en", counting);
  EXPECT_TRUE(routed.Supports("en"));
  EXPECT_FALSE(routed.Supports("de"));
  Annotate("Hi!", "en", routed);
  EXPECT_EQ(counting->calls, 1);
  EXPECT_EQ(CodeOf([&] { Annotate("Hallo", "de", routed); }), ErrorCode::kUnsupportedLanguage);
}

TEST(RemoteAnnotationProvider, Protocol) {
  kgqa::testing::StubServer stub;
  json seen;
  stub.server().Post("/annotate", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    json tokens = json::array({{{"surface", "Hallo"}, {"pos", "INTJ"}, {"dep", "ROOT"}, {"head", 0}}});
    res.set_content(json{{"text", seen["text"]}, {"lang", seen["lang"]}, {"tokens", tokens}}.dump(),
                    "application/json");
  });
  stub.Start();
  RemoteAnnotationProvider provider({stub.url(), std::chrono::milliseconds(2000), 2, {}});
  AnnotatedQuestion a = Annotate("Hallo", "de", provider);
  EXPECT_EQ(seen, (json{{"text", "Hallo"}, {"lang", "de"}}));
  ASSERT_EQ(a.tokens.size(), 1u);
  EXPECT_EQ(a.tokens[0].pos, "INTJ");
  EXPECT_EQ(a.depths, std::vector<int>{1});
}

TEST(RemoteAnnotationProvider, FailuresAreProviderUnavailable) {
  kgqa::testing::StubServer stub;
  stub.server().Post("/annotate", [](const httplib::Request& req, httplib::Response& res) {
    if (req.body.find("slow") != std::string::npos) {
      std::this_thread::sleep_for(std::chrono::milliseconds(300));
    }
    if (req.body.find("bad") != std::string::npos) {
      res.set_content("{\"oops\": 1}", "application/json");
      return;
    }
    res.status = 503;
  });
  stub.Start();
  RemoteAnnotationProvider provider({stub.url(), std::chrono::milliseconds(50), 2, {}});
  EXPECT_EQ(CodeOf([&] { Annotate("down", "en", provider); }), ErrorCode::kProviderUnavailable);
  EXPECT_EQ(CodeOf([&] { Annotate("bad", "en", provider); }), ErrorCode::kProviderUnavailable);
  EXPECT_EQ(CodeOf([&] { Annotate("slow", "en", provider); }), ErrorCode::kProviderUnavailable);

  RemoteAnnotationProvider nowhere({"http://127.0.0.1:1", std::chrono::milliseconds(200), 1, {}});
  EXPECT_EQ(CodeOf([&] { Annotate("x", "en", nowhere); }), ErrorCode::kProviderUnavailable);
}

TEST(RemoteAnnotationProvider, BoundsInFlightRequests) {
  kgqa::testing::StubServer stub;
  std::atomic<int> current{0}, peak{0};
  stub.server().Post("/annotate", [&](const httplib::Request&, httplib::Response& res) {
    int now = ++current;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    --current;
    res.set_content(R"({"tokens":[{"surface":"a","pos":"X","dep":"ROOT","head":0}]})",
                    "application/json");
  });
  stub.Start();
  RemoteAnnotationProvider provider({stub.url(), std::chrono::milliseconds(5000), 2, {}});
  std::vector<std::future<void>> calls;
  for (int i = 0; i < 10; ++i) {
    calls.push_back(std::async(std::launch::async, [&] { Annotate("a", "en", provider); }));
  }
  for (auto& c : calls) c.get();
  EXPECT_LE(peak.load(), 2);
  EXPECT_GE(peak.load(), 1);
}

}  // namespace
}  // namespace kgqa
