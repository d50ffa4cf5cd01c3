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

#include "kgqa/ling_features.h"

#include <spdlog/spdlog.h>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {

using nlohmann::json;

std::vector<int> ComputeDepths(std::span<const int> heads) {
  const std::size_t n = heads.size();
  if (n == 0) return {};
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (heads[i] < 0 || static_cast<std::size_t>(heads[i]) >= n) {
      throw Error(ErrorCode::kNotATree, "token " + std::to_string(i) + " has head " +
                                            std::to_string(heads[i]) + " outside [0, " +
                                            std::to_string(n) + ")");
    }
    if (static_cast<std::size_t>(heads[i]) == i) ++roots;
  }
  if (roots != 1) {
    throw Error(ErrorCode::kNotATree, std::to_string(roots) + " roots, expected exactly 1");
  }

  constexpr int kInProgress = -1;
  std::vector<int> depth(n, 0);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (depth[start] > 0) continue;
    path.clear();
    std::size_t node = start;
    int base = 0;
    while (true) {
      if (depth[node] > 0) {
        base = depth[node];
        break;
      }
      if (depth[node] == kInProgress) {
        throw Error(ErrorCode::kNotATree,
                    "cycle through token " + std::to_string(node));
      }
      if (static_cast<std::size_t>(heads[node]) == node) {
        depth[node] = 1;
        base = 1;
        break;
      }
      depth[node] = kInProgress;
      path.push_back(node);
      node = static_cast<std::size_t>(heads[node]);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++base;
  }
  return depth;
}

std::vector<int> ComputeDepths(std::span<const TokenAnnotation> tokens) {
  std::vector<int> heads;
  heads.reserve(tokens.size());
  for (const TokenAnnotation& t : tokens) heads.push_back(t.head_index);
  return ComputeDepths(heads);
}

json TokensToJson(std::span<const TokenAnnotation> tokens) {
  json out = json::array();
  for (const TokenAnnotation& t : tokens) {
    out.push_back({{"surface", t.surface}, {"pos", t.pos}, {"dep", t.dep_rel},
                   {"head", t.head_index}});
  }
  return out;
}

std::vector<TokenAnnotation> TokensFromJson(const json& tokens) {
  if (!tokens.is_array()) {
    throw Error(ErrorCode::kProviderUnavailable, "'tokens' is not an array");
  }
  std::vector<TokenAnnotation> out;
  for (const json& t : tokens) {
    if (!t.is_object() || !t.contains("head") || !t["head"].is_number_integer()) {
      throw Error(ErrorCode::kProviderUnavailable, "token lacks an integer 'head'");
    }
    TokenAnnotation a;
    a.surface = t.value("surface", "");
    if (auto pos = t.find("pos"); pos != t.end() && pos->is_string()) a.pos = *pos;
    if (auto dep = t.find("dep"); dep != t.end() && dep->is_string()) a.dep_rel = *dep;
    a.head_index = t["head"].get<int>();
    out.push_back(std::move(a));
  }
  return out;
}

FixtureAnnotationProvider FixtureAnnotationProvider::Parse(std::string_view jsonl) {
  FixtureAnnotationProvider provider;
  int line_no = 0;
  for (const std::string& line : SplitLines(jsonl)) {
    ++line_no;
    if (CollapseWhitespace(line).empty()) continue;
    try {
      json rec = json::parse(line);
      provider.Add(rec.at("lang").get<std::string>(), rec.at("text").get<std::string>(),
                   TokensFromJson(rec.at("tokens")));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kProviderUnavailable,
                  "annotation fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return provider;
}

FixtureAnnotationProvider FixtureAnnotationProvider::Load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  }
  return Parse(text);
}

void FixtureAnnotationProvider::Add(std::string lang, std::string text,
                                    std::vector<TokenAnnotation> tokens) {
  languages_.insert(lang);
  entries_[{std::move(lang), std::move(text)}] = std::move(tokens);
}

std::string FixtureAnnotationProvider::ToJsonl() const {
  std::string out;
  for (const auto& [key, tokens] : entries_) {
    json rec{{"text", key.second}, {"lang", key.first}, {"tokens", TokensToJson(tokens)}};
    out += rec.dump() + "\n";
  }
  return out;
}

bool FixtureAnnotationProvider::Supports(std::string_view lang) const {
  return languages_.contains(lang);
}

std::vector<TokenAnnotation> FixtureAnnotationProvider::Annotate(std::string_view text,
                                                                 std::string_view lang) const {
  auto it = entries_.find({std::string(lang), std::string(text)});
  if (it == entries_.end()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "no fixture annotation for [" + std::string(lang) + "] " + std::string(text));
  }
  return it->second;
}

RemoteAnnotationProvider::RemoteAnnotationProvider(Options options)
    : options_(std::move(options)),
      client_(options_.url, options_.timeout),
      limiter_(options_.max_in_flight) {}

bool RemoteAnnotationProvider::Supports(std::string_view lang) const {
  return options_.languages.empty() || options_.languages.contains(lang);
}

std::vector<TokenAnnotation> RemoteAnnotationProvider::Annotate(std::string_view text,
                                                                std::string_view lang) const {
  json request{{"text", text}, {"lang", lang}};
  HttpResponse response;
  try {
    auto slot = limiter_.Acquire();
    response = client_.PostJson("/annotate", request.dump());
  } catch (const HttpError& e) {
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  }
  if (response.status != 200) {
    throw Error(ErrorCode::kProviderUnavailable,
                "annotation service returned HTTP " + std::to_string(response.status));
  }
  try {
    return TokensFromJson(json::parse(response.body).at("tokens"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable,
                std::string("bad annotation response: ") + e.what());
  }
}

void LanguageRoutedAnnotationProvider::Route(std::string lang,
                                             std::shared_ptr<const AnnotationProvider> provider) {
  routes_[std::move(lang)] = std::move(provider);
}

bool LanguageRoutedAnnotationProvider::Supports(std::string_view lang) const {
  auto it = routes_.find(lang);
  return it != routes_.end() && it->second->Supports(lang);
}

std::vector<TokenAnnotation> LanguageRoutedAnnotationProvider::Annotate(
    std::string_view text, std::string_view lang) const {
  auto it = routes_.find(lang);
  if (it == routes_.end()) {
    throw Error(ErrorCode::kUnsupportedLanguage, "no annotation provider for '" +
                                                     std::string(lang) + "'");
  }
  return it->second->Annotate(text, lang);
}

AnnotatedQuestion Annotate(std::string_view question, std::string_view lang,
                           const AnnotationProvider& provider) {
  if (!provider.Supports(lang)) {
    throw Error(ErrorCode::kUnsupportedLanguage,
                provider.name() + " does not support '" + std::string(lang) + "'");
  }
  AnnotatedQuestion out;
  out.lang = std::string(lang);
  if (CollapseWhitespace(question).empty()) return out;

  out.tokens = provider.Annotate(question, lang);
  std::size_t patched = 0;
  for (TokenAnnotation& t : out.tokens) {
    if (t.pos.empty()) {
      t.pos = "X";
      ++patched;
    }
    if (t.dep_rel.empty()) {
      t.dep_rel = "dep";
      ++patched;
    }
  }
  if (patched > 0) {
    spdlog::warn("{}: {} missing POS/dependency label(s) replaced for '{}'", provider.name(),
                 patched, question);
  }
  out.depths = ComputeDepths(out.tokens);
  return out;
}

}  // namespace kgqa
