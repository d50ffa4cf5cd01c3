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

#ifndef KGQA_ENTITY_LINKS_H_
#define KGQA_ENTITY_LINKS_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgqa/http.h"

namespace kgqa {

// A linked mention. Offsets count Unicode code points of the question,
// end exclusive.
struct EntityLink {
  std::string surface;
  std::string kb_id;  // local name such as "Q16397"
  int start = 0;
  int end = 0;

  bool operator==(const EntityLink&) const = default;
};

class EntityProvider {
 public:
  virtual ~EntityProvider() = default;
  virtual std::string name() const = 0;
  virtual bool Supports(std::string_view lang) const = 0;
  // Raw candidates, possibly overlapping. Throws Error(kProviderUnavailable).
  virtual std::vector<EntityLink> Candidates(std::string_view question,
                                             std::string_view lang) const = 0;
};

// JSON-Lines fixture: {"text":..., "lang":..., "links":[{...}]} per line.
class FixtureEntityProvider : public EntityProvider {
 public:
  FixtureEntityProvider() = default;
  static FixtureEntityProvider Load(const std::filesystem::path& path);
  static FixtureEntityProvider Parse(std::string_view jsonl);

  void Add(std::string lang, std::string text, std::vector<EntityLink> links);
  std::string ToJsonl() const;

  std::string name() const override { return "fixture"; }
  bool Supports(std::string_view lang) const override;
  std::vector<EntityLink> Candidates(std::string_view question,
                                     std::string_view lang) const override;

 private:
  std::map<std::pair<std::string, std::string>, std::vector<EntityLink>> entries_;
  std::set<std::string, std::less<>> languages_;
};

// Client for an entity-aware annotation service: POST {base}/link with
// {"query","lang","components"}, response {"links":[...]}.
class RemoteEntityProvider : public EntityProvider {
 public:
  struct Options {
    std::string url;
    std::vector<std::string> components;
    std::chrono::milliseconds timeout{30000};
    int max_in_flight = 4;
    std::set<std::string, std::less<>> languages;
  };

  explicit RemoteEntityProvider(Options options);

  std::string name() const override { return "remote:" + options_.url; }
  bool Supports(std::string_view lang) const override;
  std::vector<EntityLink> Candidates(std::string_view question,
                                     std::string_view lang) const override;

 private:
  Options options_;
  HttpClient client_;
  ConcurrencyLimiter limiter_;
};

class LanguageRoutedEntityProvider : public EntityProvider {
 public:
  void Route(std::string lang, std::shared_ptr<const EntityProvider> provider);

  std::string name() const override { return "routed"; }
  bool Supports(std::string_view lang) const override;
  std::vector<EntityLink> Candidates(std::string_view question,
                                     std::string_view lang) const override;

 private:
  std::map<std::string, std::shared_ptr<const EntityProvider>, std::less<>> routes_;
};

// Keeps a non-overlapping subset: longer spans win, ties go to the earlier
// start, remaining ties to provider order. Result is sorted by start.
std::vector<EntityLink> ResolveOverlaps(std::vector<EntityLink> candidates);

// Candidates from the provider, invalid ones dropped (logged), overlaps
// resolved. Throws Error(kUnsupportedLanguage) or Error(kProviderUnavailable).
std::vector<EntityLink> LinkEntities(std::string_view question, std::string_view lang,
                                     const EntityProvider& provider);

nlohmann::json LinksToJson(const std::vector<EntityLink>& links);
std::vector<EntityLink> LinksFromJson(const nlohmann::json& links);

}  // namespace kgqa

#endif  // KGQA_ENTITY_LINKS_H_
