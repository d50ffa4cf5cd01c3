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

#include "kgqa/entity_links.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <spdlog/spdlog.h>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {

using nlohmann::json;

json LinksToJson(const std::vector<EntityLink>& links) {
  json out = json::array();
  for (const EntityLink& l : links) {
    out.push_back({{"surface", l.surface}, {"kb_id", l.kb_id}, {"start", l.start},
                   {"end", l.end}});
  }
  return out;
}

std::vector<EntityLink> LinksFromJson(const json& links) {
  if (!links.is_array()) throw Error(ErrorCode::kProviderUnavailable, "'links' is not an array");
  std::vector<EntityLink> out;
  for (const json& l : links) {
    try {
      out.push_back(EntityLink{l.value("surface", ""), l.at("kb_id").get<std::string>(),
                               l.at("start").get<int>(), l.at("end").get<int>()});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kProviderUnavailable, std::string("bad link: ") + e.what());
    }
  }
  return out;
}

FixtureEntityProvider FixtureEntityProvider::Parse(std::string_view jsonl) {
  FixtureEntityProvider provider;
  int line_no = 0;
  for (const std::string& line : SplitLines(jsonl)) {
    ++line_no;
    if (CollapseWhitespace(line).empty()) continue;
    try {
      json rec = json::parse(line);
      provider.Add(rec.at("lang").get<std::string>(), rec.at("text").get<std::string>(),
                   LinksFromJson(rec.at("links")));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kProviderUnavailable,
                  "entity fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return provider;
}

FixtureEntityProvider FixtureEntityProvider::Load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  }
  return Parse(text);
}

void FixtureEntityProvider::Add(std::string lang, std::string text,
                                std::vector<EntityLink> links) {
  languages_.insert(lang);
  entries_[{std::move(lang), std::move(text)}] = std::move(links);
}

std::string FixtureEntityProvider::ToJsonl() const {
  std::string out;
  for (const auto& [key, links] : entries_) {
    json rec{{"text", key.second}, {"lang", key.first}, {"links", LinksToJson(links)}};
    out += rec.dump() + "\n";
  }
  return out;
}

bool FixtureEntityProvider::Supports(std::string_view lang) const {
  return languages_.contains(lang);
}

std::vector<EntityLink> FixtureEntityProvider::Candidates(std::string_view question,
                                                          std::string_view lang) const {
  auto it = entries_.find({std::string(lang), std::string(question)});
  if (it == entries_.end()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "no fixture links for [" + std::string(lang) + "] " + std::string(question));
  }
  return it->second;
}

RemoteEntityProvider::RemoteEntityProvider(Options options)
    : options_(std::move(options)),
      client_(options_.url, options_.timeout),
      limiter_(options_.max_in_flight) {}

bool RemoteEntityProvider::Supports(std::string_view lang) const {
  return options_.languages.empty() || options_.languages.contains(lang);
}

std::vector<EntityLink> RemoteEntityProvider::Candidates(std::string_view question,
                                                         std::string_view lang) const {
  json request{{"query", question}, {"lang", lang}, {"components", options_.components}};
  HttpResponse response;
  try {
    auto slot = limiter_.Acquire();
    response = client_.PostJson("/link", request.dump());
  } catch (const HttpError& e) {
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  }
  if (response.status != 200) {
    throw Error(ErrorCode::kProviderUnavailable,
                "linking service returned HTTP " + std::to_string(response.status));
  }
  try {
    return LinksFromJson(json::parse(response.body).at("links"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable, std::string("bad link response: ") + e.what());
  }
}

void LanguageRoutedEntityProvider::Route(std::string lang,
                                         std::shared_ptr<const EntityProvider> provider) {
  routes_[std::move(lang)] = std::move(provider);
}

bool LanguageRoutedEntityProvider::Supports(std::string_view lang) const {
  auto it = routes_.find(lang);
  return it != routes_.end() && it->second->Supports(lang);
}

std::vector<EntityLink> LanguageRoutedEntityProvider::Candidates(std::string_view question,
                                                                 std::string_view lang) const {
  auto it = routes_.find(lang);
  if (it == routes_.end()) {
    throw Error(ErrorCode::kUnsupportedLanguage,
                "no entity provider for '" + std::string(lang) + "'");
  }
  return it->second->Candidates(question, lang);
}

std::vector<EntityLink> ResolveOverlaps(std::vector<EntityLink> candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const EntityLink& x = candidates[a];
    const EntityLink& y = candidates[b];
    int lx = x.end - x.start;
    int ly = y.end - y.start;
    if (lx != ly) return lx > ly;
    return x.start < y.start;
  });
  std::vector<EntityLink> kept;
  for (std::size_t i : order) {
    const EntityLink& c = candidates[i];
    bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const EntityLink& k) {
      return c.start < k.end && k.start < c.end;
    });
    if (!overlaps) kept.push_back(c);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const EntityLink& a, const EntityLink& b) { return a.start < b.start; });
  return kept;
}

std::vector<EntityLink> LinkEntities(std::string_view question, std::string_view lang,
                                     const EntityProvider& provider) {
  if (!provider.Supports(lang)) {
    throw Error(ErrorCode::kUnsupportedLanguage,
                provider.name() + " does not support '" + std::string(lang) + "'");
  }
  const int length = static_cast<int>(Utf8Length(question));
  std::vector<EntityLink> valid;
  for (EntityLink& link : provider.Candidates(question, lang)) {
    bool ok = link.start >= 0 && link.start < link.end && link.end <= length &&
              !link.kb_id.empty() &&
              std::none_of(link.kb_id.begin(), link.kb_id.end(),
                           [](unsigned char c) { return std::isspace(c); });
    if (!ok) {
      spdlog::warn("{}: dropping invalid link '{}' [{}, {}) for '{}'", provider.name(),
                   link.kb_id, link.start, link.end, question);
      continue;
    }
    valid.push_back(std::move(link));
  }
  return ResolveOverlaps(std::move(valid));
}

}  // namespace kgqa
