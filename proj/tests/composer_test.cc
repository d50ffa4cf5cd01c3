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

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kgqa/composer.h"
#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {
namespace {

const std::string kSource = KGQA_SOURCE_DIR;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::vector<std::string> Words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Whitespace pieces, then every piece cut into chunks of at most three
// bytes; "<...>" lexemes stay whole unless split_markers is set.
class ChunkTokenizer : public Tokenizer {
 public:
  explicit ChunkTokenizer(bool split_markers = false) : split_markers_(split_markers) {}
  std::string name() const override { return "chunk"; }
  std::vector<int> Encode(std::string_view text) const override {
    std::vector<int> ids;
    for (const std::string& w : Words(std::string(text))) {
      bool marker = w.size() > 2 && w.front() == '<' && w.back() == '>';
      if (marker && !split_markers_) {
        ids.push_back(static_cast<int>(std::hash<std::string>{}(w) & 0x7fffffff));
        continue;
      }
      for (std::size_t i = 0; i < w.size(); i += 3) {
        ids.push_back(static_cast<int>(std::hash<std::string>{}(w.substr(i, 3)) & 0x7fffffff));
      }
    }
    return ids;
  }
  std::string Decode(std::span<const int>) const override {
    throw Error(ErrorCode::kInvalidArgument, "chunk tokenizer cannot decode");
  }

 private:
  bool split_markers_;
};

const char kQuestion[] = "Who are the grandchildren of Bruce Lee?";

AuxiliaryBundle FigureAux() {
  AuxiliaryBundle aux;
  aux.pos_tags = Words("PRON AUX DET NOUN ADP PROPN PROPN PUNCT");
  aux.dep_tags = Words("attr ROOT det nsubj prep compound pobj punct");
  aux.depths = std::vector<int>{2, 1, 3, 2, 3, 5, 4, 2};
  aux.entity_ids = std::vector<std::string>{"Q16397"};
  return aux;
}

std::string Section(const std::string& sep, const std::string& content, int content_len,
                    int width) {
  std::string out = content.empty() ? sep : sep + " " + content;
  for (int i = content_len; i < width; ++i) out += " <pad>";
  return out;
}

TEST(Compose, FigureLayout) {
  WhitespaceTokenizer tok;
  ComposerConfig cfg = ComposerConfig::Default();
  ComposedInput in = Compose(kQuestion, FigureAux(), cfg, tok, "q1");
  const std::string expected =
      Section("<q>", kQuestion, 7, 64) + " " +
      Section("<pos>", "PRON AUX DET NOUN ADP PROPN PROPN PUNCT", 8, 48) + " " +
      Section("<dep>", "attr ROOT det nsubj prep compound pobj punct", 8, 48) + " " +
      Section("<dpt>", "2 1 3 2 3 5 4 2", 8, 48) + " " + Section("<ent>", "Q16397", 1, 16);
  EXPECT_EQ(in.text, expected);
  EXPECT_EQ(Words(in.text).size(), 229u);
  EXPECT_EQ(in.block_offsets, (std::map<Block, int>{{Block::kQuestion, 0},
                                                          {Block::kPos, 65},
                                                          {Block::kDep, 114},
                                                          {Block::kDepth, 163},
                                                          {Block::kEnt, 212}}));
  EXPECT_TRUE(in.truncated.empty());
}

TEST(Compose, QuestionOnly) {
  WhitespaceTokenizer tok;
  ComposerConfig cfg = ComposerConfig::Default();
  cfg.use_ling = false;
  cfg.use_ent = false;
  ComposedInput in = Compose(kQuestion, AuxiliaryBundle{}, cfg, tok);
  EXPECT_EQ(in.text, Section("<q>", kQuestion, 7, 64));
  EXPECT_EQ(in.block_offsets, (std::map<Block, int>{{Block::kQuestion, 0}}));
  EXPECT_EQ(TotalLength(cfg), 65);
}

TEST(Compose, EntityBlockWithoutLinksIsPadding) {
  WhitespaceTokenizer tok;
  ComposerConfig cfg = ComposerConfig::Default();
  cfg.use_ling = false;
  AuxiliaryBundle aux;
  aux.entity_ids = std::vector<std::string>{};
  ComposedInput in = Compose("How many?", aux, cfg, tok);
  EXPECT_EQ(in.text, Section("<q>", "How many?", 2, 64) + " " + Section("<ent>", "", 0, 16));
}

TEST(Compose, Errors) {
  WhitespaceTokenizer tok;
  ComposerConfig cfg = ComposerConfig::Default();
  AuxiliaryBundle aux = FigureAux();
  EXPECT_EQ(CodeOf([&] { Compose("  ", aux, cfg, tok); }), ErrorCode::kInvalidArgument);

  AuxiliaryBundle no_ent = aux;
  no_ent.entity_ids.reset();
  EXPECT_EQ(CodeOf([&] { Compose(kQuestion, no_ent, cfg, tok); }), ErrorCode::kMissingAux);
  AuxiliaryBundle no_pos = aux;
  no_pos.pos_tags.reset();
  EXPECT_EQ(CodeOf([&] { Compose(kQuestion, no_pos, cfg, tok); }), ErrorCode::kMissingAux);
  AuxiliaryBundle ragged = aux;
  ragged.depths->pop_back();
  EXPECT_EQ(CodeOf([&] { Compose(kQuestion, ragged, cfg, tok); }), ErrorCode::kMissingAux);
  AuxiliaryBundle spaced = aux;
  spaced.entity_ids = std::vector<std::string>{"Q 1"};
  EXPECT_EQ(CodeOf([&] { Compose(kQuestion, spaced, cfg, tok); }), ErrorCode::kInvalidArgument);

  // Unused features are ignored.
  cfg.use_ling = false;
  cfg.use_ent = false;
  EXPECT_NO_THROW(Compose(kQuestion, no_pos, cfg, tok));

  ChunkTokenizer splitting(true);
  EXPECT_EQ(CodeOf([&] { Compose(kQuestion, aux, ComposerConfig::Default(), splitting); }),
            ErrorCode::kLayoutMismatch);
}

TEST(Compose, TruncatesOnWordBoundaries) {
  WhitespaceTokenizer tok;
  ComposerConfig cfg = ComposerConfig::Default();
  cfg.use_ling = false;
  cfg.use_ent = false;
  std::vector<std::string> words;
  for (int i = 0; i < 100; ++i) words.push_back("w" + std::to_string(i));
  ComposedInput in = Compose(Join(words, " "), AuxiliaryBundle{}, cfg, tok, "long");
  std::vector<std::string> got = Words(in.text);
  ASSERT_EQ(got.size(), 65u);
  EXPECT_EQ(got.back(), "w63");
  EXPECT_EQ(in.truncated, std::vector<Block>{Block::kQuestion});

  // Multi-token words: "abcdefg" is three chunks, so 64 / 3 = 21 fit.
  ChunkTokenizer chunk;
  std::vector<std::string> longs(40, "abcdefg");
  ComposedInput cut = Compose(Join(longs, " "), AuxiliaryBundle{}, cfg, chunk);
  EXPECT_EQ(chunk.Encode(cut.text).size(), 65u);
  const std::vector<std::string> kept = Words(cut.text);
  EXPECT_EQ(std::count(kept.begin(), kept.end(), "abcdefg"), 21);
}

struct Generated {
  std::string question;
  AuxiliaryBundle aux;
};

Generated RandomInput(std::mt19937_64& rng) {
  static const std::vector<std::string> kVocab = {
      "who", "is", "the", "capital", "of", "Germany?", "Straße", "mother-in-law", "x", "1987",
      "Брюс", "李小龍", "a", "b", "c"};
  static const std::vector<std::string> kPos = {"NOUN", "VERB", "PROPN", "ADP", "DET", "X"};
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  Generated g;
  const int n = std::uniform_int_distribution<int>(1, 90)(rng);
  std::vector<std::string> words;
  for (int i = 0; i < n; ++i) words.push_back(pick(kVocab));
  g.question = Join(words, std::uniform_int_distribution<int>(0, 1)(rng) ? " " : "  \t");
  g.aux.pos_tags.emplace();
  g.aux.dep_tags.emplace();
  g.aux.depths.emplace();
  for (int i = 0; i < n; ++i) {
    g.aux.pos_tags->push_back(pick(kPos));
    g.aux.dep_tags->push_back(pick({"nsubj", "obj", "ROOT", "punct", "compound"}));
    g.aux.depths->push_back(std::uniform_int_distribution<int>(1, 12)(rng));
  }
  g.aux.entity_ids.emplace();
  const int e = std::uniform_int_distribution<int>(0, 20)(rng);
  for (int i = 0; i < e; ++i) g.aux.entity_ids->push_back("Q" + std::to_string(rng() % 100000));
  return g;
}

TEST(ComposeProperty, LayoutIsFixed) {
  std::mt19937_64 rng(5);
  WhitespaceTokenizer ws;
  ChunkTokenizer chunk;
  const Tokenizer* tokenizers[] = {&ws, &chunk};
  for (int iter = 0; iter < 1000; ++iter) {
    Generated g = RandomInput(rng);
    const Tokenizer& tok = *tokenizers[iter % 2];
    std::map<std::pair<bool, bool>, std::map<Block, int>> offsets;
    for (bool ling : {false, true}) {
      for (bool ent : {false, true}) {
        ComposerConfig cfg = ComposerConfig::Default();
        cfg.use_ling = ling;
        cfg.use_ent = ent;
        ComposedInput in = Compose(g.question, g.aux, cfg, tok);
        std::vector<int> ids = tok.Encode(in.text);
        const int expected_len = 65 + (ling ? 3 * 49 : 0) + (ent ? 17 : 0);
        ASSERT_EQ(static_cast<int>(ids.size()), expected_len);
        ASSERT_EQ(in.block_offsets.size(), 1u + (ling ? 3 : 0) + (ent ? 1 : 0));
        for (const auto& [block, offset] : in.block_offsets) {
          ASSERT_EQ(ids[offset], tok.Encode(cfg.separator(block)).front());
        }
        const std::vector<std::string> words = Words(in.text);
        ASSERT_EQ(words.front(), "<q>");
        ASSERT_EQ(std::count(words.begin(), words.end(), "<ent>"), ent ? 1 : 0);
        ASSERT_EQ(std::count(words.begin(), words.end(), "<pos>"), ling ? 1 : 0);
        offsets[{ling, ent}] = in.block_offsets;
      }
    }
    // Independent of the input: always the same positions.
    auto at = [&](bool ling, bool ent, Block b) { return offsets[{ling, ent}].at(b); };
    ASSERT_EQ(at(true, true, Block::kPos), 65);
    ASSERT_EQ(at(true, true, Block::kDepth), 163);
    // Switching ling off moves ENT left by the three linguistic blocks.
    ASSERT_EQ(at(true, true, Block::kEnt) - at(false, true, Block::kEnt), 3 * 49);
    ASSERT_EQ(at(false, true, Block::kEnt), 65);
    ComposerConfig no_ent = ComposerConfig::Default();
    no_ent.use_ent = false;
    ASSERT_EQ(offsets[std::make_pair(true, false)], ExpectedOffsets(no_ent));
  }
}

TEST(ComposeProperty, DeterministicAcrossTokenizerInstances) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 200; ++iter) {
    Generated g = RandomInput(rng);
    WhitespaceTokenizer a, b;
    ASSERT_EQ(Compose(g.question, g.aux, ComposerConfig::Default(), a),
              Compose(g.question, g.aux, ComposerConfig::Default(), b));
  }
}

TEST(ComposerConfig, JsonAndShippedFile) {
  ComposerConfig def = ComposerConfig::Default();
  EXPECT_EQ(ComposerConfig::FromJson(def.ToJson()), def);
  EXPECT_EQ(ComposerConfig::Load(kSource + "/config/composer.json"), def);
  EXPECT_EQ(CodeOf([] { ComposerConfig::FromJson({{"block_widths", {{"NOPE", 3}}}}); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { ComposerConfig::FromJson({{"use_ling", "yes"}}); }),
            ErrorCode::kInvalidConfig);
  ComposerConfig custom = ComposerConfig::FromJson({{"block_widths", {{"ENT", 4}}}});
  EXPECT_EQ(custom.width(Block::kEnt), 4);
  EXPECT_EQ(custom.width(Block::kQuestion), 64);
}

TEST(ValidateConfig, AtomicityAndShape) {
  WhitespaceTokenizer ws;
  ComposerConfig cfg = ComposerConfig::Default();
  EXPECT_TRUE(ValidateConfig(cfg, ws).AllFit());
  EXPECT_EQ(CodeOf([&] { ValidateConfig(cfg, ChunkTokenizer(true)); }),
            ErrorCode::kSeparatorNotAtomic);

  ComposerConfig split_pad = cfg;
  split_pad.pad_lexeme = "pad token";
  EXPECT_EQ(CodeOf([&] { ValidateConfig(split_pad, ws); }), ErrorCode::kSeparatorNotAtomic);

  ComposerConfig dup = cfg;
  dup.separators[Block::kDep] = "<pos>";
  EXPECT_EQ(CodeOf([&] { ValidateConfig(dup, ws); }), ErrorCode::kInvalidConfig);
  ComposerConfig pad_clash = cfg;
  pad_clash.pad_lexeme = "<q>";
  EXPECT_EQ(CodeOf([&] { ValidateConfig(pad_clash, ws); }), ErrorCode::kInvalidConfig);
  ComposerConfig zero = cfg;
  zero.block_widths[Block::kEnt] = 0;
  EXPECT_EQ(CodeOf([&] { ValidateConfig(zero, ws); }), ErrorCode::kInvalidConfig);
}

TEST(ValidateConfig, NearestRankP95) {
  WhitespaceTokenizer ws;
  ComposerConfig cfg = ComposerConfig::Default();
  cfg.block_widths[Block::kQuestion] = 18;
  std::vector<ProbeInput> probe;
  std::vector<int> lengths;
  std::mt19937_64 rng(3);
  for (int len = 1; len <= 20; ++len) lengths.push_back(len);
  std::shuffle(lengths.begin(), lengths.end(), rng);
  for (int len : lengths) {
    std::vector<std::string> words(static_cast<std::size_t>(len), "w");
    ProbeInput p{Join(words, " "), {}};
    p.aux.entity_ids = std::vector<std::string>{"Q1"};
    probe.push_back(p);
  }
  // ceil(0.95 * 20) = 19th smallest of 1..20.
  ConfigReport report = ValidateConfig(cfg, ws, probe);
  EXPECT_EQ(report.probe_size, 20u);
  EXPECT_EQ(report.p95_content_length.at(Block::kQuestion), 19);
  EXPECT_FALSE(report.fits.at(Block::kQuestion));
  EXPECT_EQ(report.p95_content_length.at(Block::kEnt), 1);
  EXPECT_TRUE(report.fits.at(Block::kEnt));
  EXPECT_FALSE(report.p95_content_length.contains(Block::kPos));
  EXPECT_FALSE(report.AllFit());
}

}  // namespace
}  // namespace kgqa
