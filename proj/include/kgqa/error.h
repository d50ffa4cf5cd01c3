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

#ifndef KGQA_ERROR_H_
#define KGQA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgqa {

enum class ErrorCode {
  kMalformedFile,
  kDuplicateId,
  kMissingLanguage,
  kLexError,
  kCollision,
  kNotATree,
  kUnsupportedLanguage,
  kProviderUnavailable,
  kMissingAux,
  kSeparatorNotAtomic,
  kLayoutMismatch,
  kInvalidConfig,
  kBackendUnavailable,
  kTimeout,
  kMalformedTerm,
  kEmptyInput,
  kIoError,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the toolkit are reported as kgqa::Error. The
// code is stable and meant for programmatic dispatch; the message is for
// humans and may include a location (file path, JSON path, byte offset).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgqa

#endif  // KGQA_ERROR_H_
