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

#ifndef KGQA_COMPOSER_H_
#define KGQA_COMPOSER_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/entity_links.h"
#include "kgqa/ling_features.h"
#include "kgqa/tokenizer.h"

namespace kgqa {

enum class Block { kQuestion, kPos, kDep, kDepth, kEnt };

inline constexpr std::array<Block, 5> kAllBlocks = {Block::kQuestion, Block::kPos, Block::kDep,
                                                    Block::kDepth, Block::kEnt};

std::string_view BlockName(Block block);  // "QUESTION", "POS", ...
Block ParseBlock(std::string_view name);

struct ComposerConfig {
  bool use_ling = true;
  bool use_ent = true;
  // Content tokens per block, not counting the separator.
  std::map<Block, int> block_widths;
  std::map<Block, std::string> separators;
  std::string pad_lexeme = "<pad>";

  // Widths 64/48/48/48/16; separators <q> <pos> <dep> <dpt> <ent>.
  static ComposerConfig Default();
  static ComposerConfig FromJson(const nlohmann::json& j);
  static ComposerConfig Load(const std::filesystem::path& path);
  nlohmann::json ToJson() const;

  int width(Block b) const { return block_widths.at(b); }
  const std::string& separator(Block b) const { return separators.at(b); }

  bool operator==(const ComposerConfig&) const = default;
};

struct AuxiliaryBundle {
  // Unset means the feature was never computed; an empty list is a valid
  // (featureless) value.
  std::optional<std::vector<std::string>> pos_tags;
  std::optional<std::vector<std::string>> dep_tags;
  std::optional<std::vector<int>> depths;
  std::optional<std::vector<std::string>> entity_ids;

  static AuxiliaryBundle From(const AnnotatedQuestion* annotation,
                              const std::vector<EntityLink>* links);
};

struct ComposedInput {
  std::string text;
  // Token index of each active block's separator.
  std::map<Block, int> block_offsets;
  // Blocks whose content was cut to fit.
  std::vector<Block> truncated;

  bool operator==(const ComposedInput&) const = default;
};

// Blocks present under cfg, in layout order.
std::vector<Block> ActiveBlocks(const ComposerConfig& cfg);
// Where each active block must start: the sum of (width + 1) of the blocks
// before it.
std::map<Block, int> ExpectedOffsets(const ComposerConfig& cfg);
int TotalLength(const ComposerConfig& cfg);

// Lays out separator + content + padding for each active block. Content
// longer than its width is cut on word boundaries and recorded in
// `truncated`. The realized layout is checked against the tokenizer.
// Throws Error(kMissingAux), Error(kInvalidArgument) for an empty question,
// or Error(kLayoutMismatch) when the tokenizer merges across blocks.
ComposedInput Compose(std::string_view question, const AuxiliaryBundle& aux,
                      const ComposerConfig& cfg, const Tokenizer& tok,
                      std::string_view question_id = {});

struct ProbeInput {
  std::string question;
  AuxiliaryBundle aux;
};

struct ConfigReport {
  // 95th percentile (nearest rank) content length per block over the probe.
  std::map<Block, int> p95_content_length;
  std::map<Block, bool> fits;
  std::size_t probe_size = 0;

  bool AllFit() const;
};

// Checks widths, separator distinctness and atomicity under tok, then
// measures the probe corpus. Throws Error(kSeparatorNotAtomic) or
// Error(kInvalidConfig).
ConfigReport ValidateConfig(const ComposerConfig& cfg, const Tokenizer& tok,
                            std::span<const ProbeInput> probe = {});

}  // namespace kgqa

#endif  // KGQA_COMPOSER_H_
