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

#ifndef KGQA_TOKENIZER_H_
#define KGQA_TOKENIZER_H_

#include <chrono>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/http.h"

namespace kgqa {

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int> Encode(std::string_view text) const = 0;
  // Throws Error(kInvalidArgument) when the tokenizer cannot decode.
  virtual std::string Decode(std::span<const int> ids) const = 0;
  // True when the lexeme always maps to a single token.
  virtual bool IsAtomic(std::string_view lexeme) const {
    return Encode(lexeme).size() == 1;
  }
};

// Every whitespace-separated piece is one token. Ids are assigned on first
// sight and stay stable for the lifetime of the object. Thread-safe.
class WhitespaceTokenizer : public Tokenizer {
 public:
  std::string name() const override { return "whitespace"; }
  std::vector<int> Encode(std::string_view text) const override;
  std::string Decode(std::span<const int> ids) const override;

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, int> ids_;
  mutable std::vector<std::string> pieces_;
};

// The model server's tokenizer: POST {base}/tokenize {"text"} -> {"ids"}.
class RemoteTokenizer : public Tokenizer {
 public:
  RemoteTokenizer(const std::string& url, std::chrono::milliseconds timeout,
                  int max_in_flight = 4);

  std::string name() const override { return "remote:" + client_.base_url(); }
  std::vector<int> Encode(std::string_view text) const override;
  std::string Decode(std::span<const int> ids) const override;

 private:
  HttpClient client_;
  ConcurrencyLimiter limiter_;
};

}  // namespace kgqa

#endif  // KGQA_TOKENIZER_H_
