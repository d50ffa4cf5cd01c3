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

#ifndef KGQA_PREFIX_TABLE_H_
#define KGQA_PREFIX_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa::sparql {

// Maps prefix labels to namespace IRIs. Each label has one canonical
// namespace (emitted in PREFIX declarations) and may carry alias spellings
// that are recognized when contracting IRIs, e.g. the https:// variants of
// the Wikidata namespaces. Matching always prefers the longest namespace.
class PrefixTable {
 public:
  struct Entry {
    std::string label;
    std::string ns;
    std::vector<std::string> aliases;

    bool operator==(const Entry&) const = default;
  };

  struct Match {
    const Entry* entry;
    std::string_view local;
  };

  PrefixTable() = default;

  // Tab-separated "label<TAB>namespace" lines; '#' starts a comment line.
  // A label that appears again with a different namespace gains an alias.
  // Throws Error(kInvalidConfig) on malformed lines or a namespace mapped to
  // two different labels.
  static PrefixTable Parse(std::string_view text);
  static PrefixTable Load(const std::filesystem::path& path);

  // The standard Wikidata set, identical to config/wikidata_prefixes.tsv.
  static const PrefixTable& WikidataDefault();
  static std::string_view WikidataDefaultText();

  void Add(std::string_view label, std::string_view ns);

  // Longest namespace (canonical or alias) that is a proper prefix of iri.
  std::optional<Match> Lookup(std::string_view iri) const;
  const Entry* Find(std::string_view label) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const PrefixTable& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<Entry> entries_;
  // (namespace, entry index), longest namespace first.
  std::vector<std::pair<std::string, std::size_t>> by_length_;
};

}  // namespace kgqa::sparql

#endif  // KGQA_PREFIX_TABLE_H_
