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

#ifndef KGQA_LING_FEATURES_H_
#define KGQA_LING_FEATURES_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgqa/http.h"

namespace kgqa {

struct TokenAnnotation {
  std::string surface;
  std::string pos;      // universal POS tag
  std::string dep_rel;  // "ROOT" for the root token
  int head_index = 0;   // 0-based; the root points at itself

  bool operator==(const TokenAnnotation&) const = default;
};

struct AnnotatedQuestion {
  std::string lang;
  std::vector<TokenAnnotation> tokens;
  std::vector<int> depths;  // parallel to tokens, root = 1

  bool operator==(const AnnotatedQuestion&) const = default;
};

// Depth of every token in the dependency tree given by head indices; the
// root (the token that is its own head) has depth 1. Iterative and linear.
// Throws Error(kNotATree) for out-of-range heads, zero or several roots, or
// a cycle.
std::vector<int> ComputeDepths(std::span<const int> heads);
std::vector<int> ComputeDepths(std::span<const TokenAnnotation> tokens);

class AnnotationProvider {
 public:
  virtual ~AnnotationProvider() = default;
  virtual std::string name() const = 0;
  virtual bool Supports(std::string_view lang) const = 0;
  // Throws Error(kProviderUnavailable) when annotations cannot be obtained.
  virtual std::vector<TokenAnnotation> Annotate(std::string_view text,
                                                std::string_view lang) const = 0;
};

// Precomputed annotations from JSON-Lines, one object per line:
// {"text":..., "lang":..., "tokens":[{"surface","pos","dep","head"}]}.
class FixtureAnnotationProvider : public AnnotationProvider {
 public:
  FixtureAnnotationProvider() = default;
  static FixtureAnnotationProvider Load(const std::filesystem::path& path);
  static FixtureAnnotationProvider Parse(std::string_view jsonl);

  void Add(std::string lang, std::string text, std::vector<TokenAnnotation> tokens);
  std::string ToJsonl() const;
  std::size_t size() const { return entries_.size(); }

  std::string name() const override { return "fixture"; }
  bool Supports(std::string_view lang) const override;
  std::vector<TokenAnnotation> Annotate(std::string_view text,
                                        std::string_view lang) const override;

 private:
  std::map<std::pair<std::string, std::string>, std::vector<TokenAnnotation>> entries_;
  std::set<std::string, std::less<>> languages_;
};

// Client for an annotation service: POST {base}/annotate with
// {"text","lang"}; the response uses the fixture line schema.
class RemoteAnnotationProvider : public AnnotationProvider {
 public:
  struct Options {
    std::string url;
    std::chrono::milliseconds timeout{30000};
    int max_in_flight = 4;
    // Empty means every language is forwarded to the service.
    std::set<std::string, std::less<>> languages;
  };

  explicit RemoteAnnotationProvider(Options options);

  std::string name() const override { return "remote:" + options_.url; }
  bool Supports(std::string_view lang) const override;
  std::vector<TokenAnnotation> Annotate(std::string_view text,
                                        std::string_view lang) const override;

 private:
  Options options_;
  HttpClient client_;
  ConcurrencyLimiter limiter_;
};

// Dispatches to a per-language provider.
class LanguageRoutedAnnotationProvider : public AnnotationProvider {
 public:
  void Route(std::string lang, std::shared_ptr<const AnnotationProvider> provider);

  std::string name() const override { return "routed"; }
  bool Supports(std::string_view lang) const override;
  std::vector<TokenAnnotation> Annotate(std::string_view text,
                                        std::string_view lang) const override;

 private:
  std::map<std::string, std::shared_ptr<const AnnotationProvider>, std::less<>> routes_;
};

// Annotates a question and computes depths. Tokens without a POS tag get
// "X" and tokens without a relation get "dep". An empty question yields an
// empty annotation without consulting the provider.
// Throws Error(kUnsupportedLanguage), Error(kProviderUnavailable) or
// Error(kNotATree).
AnnotatedQuestion Annotate(std::string_view question, std::string_view lang,
                           const AnnotationProvider& provider);

// Token list <-> fixture JSON ("dep" and "head" field names).
nlohmann::json TokensToJson(std::span<const TokenAnnotation> tokens);
std::vector<TokenAnnotation> TokensFromJson(const nlohmann::json& tokens);

}  // namespace kgqa

#endif  // KGQA_LING_FEATURES_H_
