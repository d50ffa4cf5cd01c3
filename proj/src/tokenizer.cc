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

#include "kgqa/tokenizer.h"

#include <json.hpp>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa {

std::vector<int> WhitespaceTokenizer::Encode(std::string_view text) const {
  std::vector<std::string> pieces = SplitWhitespace(text);
  std::vector<int> out;
  out.reserve(pieces.size());
  std::lock_guard lock(mu_);
  for (std::string& piece : pieces) {
    auto [it, inserted] = ids_.try_emplace(piece, static_cast<int>(pieces_.size()));
    if (inserted) pieces_.push_back(std::move(piece));
    out.push_back(it->second);
  }
  return out;
}

std::string WhitespaceTokenizer::Decode(std::span<const int> ids) const {
  std::string out;
  std::lock_guard lock(mu_);
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= pieces_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown token id " + std::to_string(id));
    }
    if (!out.empty()) out.push_back(' ');
    out += pieces_[static_cast<std::size_t>(id)];
  }
  return out;
}

RemoteTokenizer::RemoteTokenizer(const std::string& url, std::chrono::milliseconds timeout,
                                 int max_in_flight)
    : client_(url, timeout), limiter_(max_in_flight) {}

std::vector<int> RemoteTokenizer::Encode(std::string_view text) const {
  nlohmann::json request{{"text", text}};
  HttpResponse response;
  try {
    auto slot = limiter_.Acquire();
    response = client_.PostJson("/tokenize", request.dump());
  } catch (const HttpError& e) {
    throw Error(ErrorCode::kBackendUnavailable, e.what());
  }
  if (response.status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                "tokenize returned HTTP " + std::to_string(response.status));
  }
  try {
    return nlohmann::json::parse(response.body).at("ids").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad tokenize response: ") + e.what());
  }
}

std::string RemoteTokenizer::Decode(std::span<const int>) const {
  throw Error(ErrorCode::kInvalidArgument, "the tokenize protocol has no decode operation");
}

}  // namespace kgqa
