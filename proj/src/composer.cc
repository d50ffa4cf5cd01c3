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

#include "kgqa/composer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <spdlog/spdlog.h>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {
namespace {

using nlohmann::json;

std::vector<std::string> ContentWords(Block block, std::string_view question,
                                      const AuxiliaryBundle& aux) {
  switch (block) {
    case Block::kQuestion:
      return SplitWhitespace(question);
    case Block::kPos:
      return *aux.pos_tags;
    case Block::kDep:
      return *aux.dep_tags;
    case Block::kDepth: {
      std::vector<std::string> out;
      for (int d : *aux.depths) out.push_back(std::to_string(d));
      return out;
    }
    case Block::kEnt:
      return *aux.entity_ids;
  }
  return {};
}

bool HasContent(Block block, const AuxiliaryBundle& aux) {
  switch (block) {
    case Block::kQuestion: return true;
    case Block::kPos: return aux.pos_tags.has_value();
    case Block::kDep: return aux.dep_tags.has_value();
    case Block::kDepth: return aux.depths.has_value();
    case Block::kEnt: return aux.entity_ids.has_value();
  }
  return false;
}

int CountTokens(const Tokenizer& tok, const std::vector<std::string>& words, std::size_t k) {
  if (k == 0) return 0;
  std::vector<std::string> prefix(words.begin(), words.begin() + static_cast<long>(k));
  return static_cast<int>(tok.Encode(Join(prefix, " ")).size());
}

void CheckAux(const ComposerConfig& cfg, const AuxiliaryBundle& aux) {
  if (cfg.use_ling) {
    if (!aux.pos_tags || !aux.dep_tags || !aux.depths) {
      throw Error(ErrorCode::kMissingAux, "linguistic features enabled but not provided");
    }
    if (aux.pos_tags->size() != aux.dep_tags->size() ||
        aux.pos_tags->size() != aux.depths->size()) {
      throw Error(ErrorCode::kMissingAux, "POS, dependency and depth lists differ in length");
    }
  }
  if (cfg.use_ent) {
    if (!aux.entity_ids) {
      throw Error(ErrorCode::kMissingAux, "entity features enabled but not provided");
    }
    for (const std::string& id : *aux.entity_ids) {
      if (id.empty() || std::any_of(id.begin(), id.end(),
                                    [](unsigned char c) { return std::isspace(c); })) {
        throw Error(ErrorCode::kInvalidArgument, "entity id '" + id + "' is empty or has whitespace");
      }
    }
  }
}

}  // namespace

std::string_view BlockName(Block block) {
  switch (block) {
    case Block::kQuestion: return "QUESTION";
    case Block::kPos: return "POS";
    case Block::kDep: return "DEP";
    case Block::kDepth: return "DEPTH";
    case Block::kEnt: return "ENT";
  }
  return "?";
}

Block ParseBlock(std::string_view name) {
  for (Block b : kAllBlocks) {
    if (BlockName(b) == name) return b;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown block '" + std::string(name) + "'");
}

ComposerConfig ComposerConfig::Default() {
  ComposerConfig cfg;
  cfg.block_widths = {{Block::kQuestion, 64}, {Block::kPos, 48}, {Block::kDep, 48},
                      {Block::kDepth, 48},    {Block::kEnt, 16}};
  cfg.separators = {{Block::kQuestion, "<q>"}, {Block::kPos, "<pos>"}, {Block::kDep, "<dep>"},
                    {Block::kDepth, "<dpt>"},  {Block::kEnt, "<ent>"}};
  cfg.pad_lexeme = "<pad>";
  return cfg;
}

ComposerConfig ComposerConfig::FromJson(const json& j) {
  ComposerConfig cfg = Default();
  try {
    if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "composer config is not an object");
    cfg.use_ling = j.value("use_ling", cfg.use_ling);
    cfg.use_ent = j.value("use_ent", cfg.use_ent);
    cfg.pad_lexeme = j.value("pad_lexeme", cfg.pad_lexeme);
    if (auto w = j.find("block_widths"); w != j.end()) {
      for (const auto& [name, width] : w->items()) cfg.block_widths[ParseBlock(name)] = width.get<int>();
    }
    if (auto s = j.find("separators"); s != j.end()) {
      for (const auto& [name, lexeme] : s->items()) {
        cfg.separators[ParseBlock(name)] = lexeme.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("composer config: ") + e.what());
  }
  return cfg;
}

ComposerConfig ComposerConfig::Load(const std::filesystem::path& path) {
  try {
    return FromJson(json::parse(ReadFile(path)));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
}

json ComposerConfig::ToJson() const {
  json widths = json::object();
  json seps = json::object();
  for (const auto& [b, w] : block_widths) widths[std::string(BlockName(b))] = w;
  for (const auto& [b, s] : separators) seps[std::string(BlockName(b))] = s;
  return json{{"use_ling", use_ling},   {"use_ent", use_ent},     {"block_widths", widths},
              {"separators", seps},     {"pad_lexeme", pad_lexeme}};
}

AuxiliaryBundle AuxiliaryBundle::From(const AnnotatedQuestion* annotation,
                                      const std::vector<EntityLink>* links) {
  AuxiliaryBundle aux;
  if (annotation != nullptr) {
    aux.pos_tags.emplace();
    aux.dep_tags.emplace();
    for (const TokenAnnotation& t : annotation->tokens) {
      aux.pos_tags->push_back(t.pos);
      aux.dep_tags->push_back(t.dep_rel);
    }
    aux.depths = annotation->depths;
  }
  if (links != nullptr) {
    aux.entity_ids.emplace();
    for (const EntityLink& l : *links) aux.entity_ids->push_back(l.kb_id);
  }
  return aux;
}

std::vector<Block> ActiveBlocks(const ComposerConfig& cfg) {
  std::vector<Block> out = {Block::kQuestion};
  if (cfg.use_ling) {
    out.push_back(Block::kPos);
    out.push_back(Block::kDep);
    out.push_back(Block::kDepth);
  }
  if (cfg.use_ent) out.push_back(Block::kEnt);
  return out;
}

std::map<Block, int> ExpectedOffsets(const ComposerConfig& cfg) {
  std::map<Block, int> out;
  int offset = 0;
  for (Block b : ActiveBlocks(cfg)) {
    out[b] = offset;
    offset += cfg.width(b) + 1;
  }
  return out;
}

int TotalLength(const ComposerConfig& cfg) {
  int total = 0;
  for (Block b : ActiveBlocks(cfg)) total += cfg.width(b) + 1;
  return total;
}

ComposedInput Compose(std::string_view question, const AuxiliaryBundle& aux,
                      const ComposerConfig& cfg, const Tokenizer& tok,
                      std::string_view question_id) {
  const std::string clean_question = CollapseWhitespace(question);
  if (clean_question.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot compose an empty question");
  }
  CheckAux(cfg, aux);

  ComposedInput out;
  std::vector<std::string> pieces;
  for (Block block : ActiveBlocks(cfg)) {
    const int width = cfg.width(block);
    std::vector<std::string> words = ContentWords(block, clean_question, aux);
    std::size_t keep = words.size();
    int count = CountTokens(tok, words, keep);
    if (count > width) {
      // Largest word prefix that fits; token count grows with the prefix.
      std::size_t lo = 0;
      std::size_t hi = words.size();
      while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (CountTokens(tok, words, mid) <= width) {
          lo = mid;
        } else {
          hi = mid - 1;
        }
      }
      keep = lo;
      count = CountTokens(tok, words, keep);
      out.truncated.push_back(block);
      spdlog::warn("TRUNCATION question={} block={} kept {}/{} words", question_id,
                   BlockName(block), keep, words.size());
    }
    pieces.push_back(cfg.separator(block));
    pieces.insert(pieces.end(), words.begin(), words.begin() + static_cast<long>(keep));
    pieces.insert(pieces.end(), static_cast<std::size_t>(width - count), cfg.pad_lexeme);
  }
  out.text = Join(pieces, " ");

  out.block_offsets = ExpectedOffsets(cfg);
  std::vector<int> ids = tok.Encode(out.text);
  bool ok = static_cast<int>(ids.size()) == TotalLength(cfg);
  for (const auto& [block, offset] : out.block_offsets) {
    if (!ok) break;
    std::vector<int> sep = tok.Encode(cfg.separator(block));
    ok = sep.size() == 1 && ids[static_cast<std::size_t>(offset)] == sep.front();
  }
  if (!ok) {
    throw Error(ErrorCode::kLayoutMismatch,
                "tokenizer " + tok.name() + " does not reproduce the block layout for question " +
                    std::string(question_id));
  }
  return out;
}

bool ConfigReport::AllFit() const {
  return std::all_of(fits.begin(), fits.end(), [](const auto& kv) { return kv.second; });
}

ConfigReport ValidateConfig(const ComposerConfig& cfg, const Tokenizer& tok,
                            std::span<const ProbeInput> probe) {
  std::set<std::string> lexemes = {cfg.pad_lexeme};
  for (Block b : kAllBlocks) {
    auto w = cfg.block_widths.find(b);
    if (w == cfg.block_widths.end() || w->second <= 0) {
      throw Error(ErrorCode::kInvalidConfig,
                  "block " + std::string(BlockName(b)) + " needs a positive width");
    }
    auto s = cfg.separators.find(b);
    if (s == cfg.separators.end() || s->second.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "block " + std::string(BlockName(b)) + " has no separator");
    }
    if (!lexemes.insert(s->second).second) {
      throw Error(ErrorCode::kInvalidConfig, "separator '" + s->second + "' is not distinct");
    }
  }
  for (const std::string& lexeme : lexemes) {
    if (!tok.IsAtomic(lexeme)) {
      throw Error(ErrorCode::kSeparatorNotAtomic,
                  "'" + lexeme + "' is not a single token under " + tok.name());
    }
  }

  ConfigReport report;
  report.probe_size = probe.size();
  std::map<Block, std::vector<int>> lengths;
  for (const ProbeInput& p : probe) {
    const std::string q = CollapseWhitespace(p.question);
    for (Block b : kAllBlocks) {
      if (!HasContent(b, p.aux)) continue;
      std::vector<std::string> words = ContentWords(b, q, p.aux);
      lengths[b].push_back(CountTokens(tok, words, words.size()));
    }
  }
  for (auto& [block, values] : lengths) {
    std::sort(values.begin(), values.end());
    auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(values.size())));
    int p95 = values[std::max<std::size_t>(rank, 1) - 1];
    report.p95_content_length[block] = p95;
    report.fits[block] = p95 <= cfg.width(block);
  }
  return report;
}

}  // namespace kgqa
