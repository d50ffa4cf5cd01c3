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

#ifndef KGQA_UTIL_H_
#define KGQA_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

// Lower-case hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// Whole-file IO. Both throw Error(kIoError) naming the path.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Number of Unicode code points in a UTF-8 string. Invalid lead bytes count
// as one code point each.
std::size_t Utf8Length(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Replaces every CR/LF/TAB with a space and collapses runs of spaces.
std::string CollapseWhitespace(std::string_view text);

// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace kgqa

#endif  // KGQA_UTIL_H_
