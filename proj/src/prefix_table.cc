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

#include "kgqa/prefix_table.h"

#include <algorithm>
#include <cctype>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa::sparql {
namespace {

constexpr std::string_view kWikidataPrefixes =
    "wd\thttp://www.wikidata.org/entity/\n"
    "wdt\thttp://www.wikidata.org/prop/direct/\n"
    "p\thttp://www.wikidata.org/prop/\n"
    "ps\thttp://www.wikidata.org/prop/statement/\n"
    "pq\thttp://www.wikidata.org/prop/qualifier/\n"
    "psn\thttp://www.wikidata.org/prop/statement/value-normalized/\n"
    "pqn\thttp://www.wikidata.org/prop/qualifier/value-normalized/\n"
    "rdfs\thttp://www.w3.org/2000/01/rdf-schema#\n"
    "rdf\thttp://www.w3.org/1999/02/22-rdf-syntax-ns#\n"
    "xsd\thttp://www.w3.org/2001/XMLSchema#\n"
    "skos\thttp://www.w3.org/2004/02/skos/core#\n"
    "schema\thttp://schema.org/\n"
    "wikibase\thttp://wikiba.se/ontology#\n"
    "bd\thttp://www.bigdata.com/rdf#\n"
    "wd\thttps://www.wikidata.org/entity/\n"
    "wdt\thttps://www.wikidata.org/prop/direct/\n"
    "p\thttps://www.wikidata.org/prop/\n"
    "ps\thttps://www.wikidata.org/prop/statement/\n"
    "pq\thttps://www.wikidata.org/prop/qualifier/\n"
    "psn\thttps://www.wikidata.org/prop/statement/value-normalized/\n"
    "pqn\thttps://www.wikidata.org/prop/qualifier/value-normalized/\n"
    "schema\thttps://schema.org/\n";

bool ValidLabel(std::string_view label) {
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
  });
}

}  // namespace

PrefixTable PrefixTable::Parse(std::string_view text) {
  PrefixTable table;
  int line_no = 0;
  for (const std::string& raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = raw;
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  "prefix table line " + std::to_string(line_no) + ": expected label<TAB>namespace");
    }
    try {
      table.Add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidConfig,
                  "prefix table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

PrefixTable PrefixTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

std::string_view PrefixTable::WikidataDefaultText() { return kWikidataPrefixes; }

const PrefixTable& PrefixTable::WikidataDefault() {
  static const PrefixTable table = Parse(kWikidataPrefixes);
  return table;
}

void PrefixTable::Add(std::string_view label, std::string_view ns) {
  if (!ValidLabel(label)) {
    throw Error(ErrorCode::kInvalidConfig, "invalid prefix label '" + std::string(label) + "'");
  }
  if (ns.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "empty namespace for '" + std::string(label) + "'");
  }
  for (const auto& [known_ns, index] : by_length_) {
    if (known_ns == ns) {
      if (entries_[index].label == label) return;
      throw Error(ErrorCode::kInvalidConfig,
                  "namespace " + std::string(ns) + " already mapped to '" +
                      entries_[index].label + "'");
    }
  }
  std::size_t index = entries_.size();
  if (const Entry* existing = Find(label)) {
    index = static_cast<std::size_t>(existing - entries_.data());
    entries_[index].aliases.emplace_back(ns);
  } else {
    entries_.push_back(Entry{std::string(label), std::string(ns), {}});
  }
  by_length_.emplace_back(std::string(ns), index);
  std::stable_sort(by_length_.begin(), by_length_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

std::optional<PrefixTable::Match> PrefixTable::Lookup(std::string_view iri) const {
  for (const auto& [ns, index] : by_length_) {
    if (iri.size() > ns.size() && iri.substr(0, ns.size()) == ns) {
      return Match{&entries_[index], iri.substr(ns.size())};
    }
  }
  return std::nullopt;
}

const PrefixTable::Entry* PrefixTable::Find(std::string_view label) const {
  for (const Entry& e : entries_) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

}  // namespace kgqa::sparql
