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

#include "kgqa/error.h"

namespace kgqa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedFile: return "MALFORMED_FILE";
    case ErrorCode::kDuplicateId: return "DUPLICATE_ID";
    case ErrorCode::kMissingLanguage: return "MISSING_LANGUAGE";
    case ErrorCode::kLexError: return "LEX_ERROR";
    case ErrorCode::kCollision: return "COLLISION";
    case ErrorCode::kNotATree: return "NOT_A_TREE";
    case ErrorCode::kUnsupportedLanguage: return "UNSUPPORTED_LANGUAGE";
    case ErrorCode::kProviderUnavailable: return "PROVIDER_UNAVAILABLE";
    case ErrorCode::kMissingAux: return "MISSING_AUX";
    case ErrorCode::kSeparatorNotAtomic: return "SEPARATOR_NOT_ATOMIC";
    case ErrorCode::kLayoutMismatch: return "LAYOUT_MISMATCH";
    case ErrorCode::kInvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::kBackendUnavailable: return "BACKEND_UNAVAILABLE";
    case ErrorCode::kTimeout: return "TIMEOUT";
    case ErrorCode::kMalformedTerm: return "MALFORMED_TERM";
    case ErrorCode::kEmptyInput: return "EMPTY_INPUT";
    case ErrorCode::kIoError: return "IO_ERROR";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace kgqa
