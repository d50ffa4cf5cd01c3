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

#ifndef KGQA_COMMANDS_H_
#define KGQA_COMMANDS_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgqa/composer.h"
#include "kgqa/datasets.h"
#include "kgqa/entity_links.h"
#include "kgqa/error.h"
#include "kgqa/generation.h"
#include "kgqa/kg_endpoint.h"
#include "kgqa/ling_features.h"
#include "kgqa/prefix_table.h"
#include "kgqa/tokenizer.h"

namespace kgqa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitBackend = 3,
};

int ExitCodeFor(ErrorCode code);

// Pipeline configuration file. Relative paths inside it resolve against the
// file's directory.
//
//   {
//     "prefix_table": "prefixes.tsv",
//     "composer": "composer.json" | {...},
//     "tokenizer": {"type": "whitespace" | "remote", "url", "timeout_ms"},
//     "providers": {"en": {"annotation": {...}, "entities": {...}}},
//     "backend": {"type": "gold-echo" | "empty" | "remote", "url", ...},
//     "endpoint": {"type": "fixture", "path"} | {"type": "gold-answers"} |
//                 {"type": "http", "url", ...},
//     "workers": 4
//   }
//
// A provider spec is {"type": "fixture", "path"} or {"type": "remote",
// "url", "timeout_ms", "max_in_flight", "components"}.
struct PipelineConfig {
  std::filesystem::path source;
  nlohmann::json raw = nlohmann::json::object();
  std::filesystem::path base_dir;
  sparql::PrefixTable table = sparql::PrefixTable::WikidataDefault();
  ComposerConfig composer = ComposerConfig::Default();
  int workers = 4;

  // Throws Error(kInvalidConfig) or the loader's error.
  static PipelineConfig FromJson(const nlohmann::json& j, std::filesystem::path base_dir);
  static PipelineConfig Load(const std::filesystem::path& path);

  std::filesystem::path Resolve(const std::string& path) const;
  // Every file the configuration reads, for manifests.
  std::vector<std::filesystem::path> ReferencedFiles() const;
};

std::shared_ptr<const Tokenizer> MakeTokenizer(const PipelineConfig& cfg);
// Null when no language has a provider of that kind.
std::shared_ptr<const AnnotationProvider> MakeAnnotationProvider(const PipelineConfig& cfg);
std::shared_ptr<const EntityProvider> MakeEntityProvider(const PipelineConfig& cfg);
std::shared_ptr<const GeneratorBackend> MakeBackend(const nlohmann::json& spec,
                                                    const Benchmark& benchmark,
                                                    const sparql::PrefixTable& table);
// "gold-answers" serves each item's stored answers and needs the benchmark.
std::shared_ptr<const Endpoint> MakeEndpoint(const PipelineConfig& cfg,
                                             const Benchmark* benchmark = nullptr);

// Dataset loading by source name ("qald9plus", "qald10", "lcquad2").
Benchmark LoadDataset(const std::filesystem::path& path, Source source,
                      bool include_paraphrases = false);

// Parses argv and runs the selected subcommand; returns the process exit
// code. Never throws.
int Main(int argc, char** argv);
int Main(const std::vector<std::string>& args);

}  // namespace kgqa::cli

#endif  // KGQA_COMMANDS_H_
