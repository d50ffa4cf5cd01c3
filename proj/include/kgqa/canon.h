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

#ifndef KGQA_CANON_H_
#define KGQA_CANON_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgqa/prefix_table.h"
#include "kgqa/sparql_lexer.h"

namespace kgqa::sparql {

// Placeholder lexemes used in the canonical (model-facing) form.
inline constexpr std::string_view kVarPlaceholder = "var_";
inline constexpr std::string_view kOpenPlaceholder = "brack_open";
inline constexpr std::string_view kClosePlaceholder = "brack_close";

enum class Provenance { kEncodedGold, kModelOutput };

struct CanonicalQuery {
  std::string text;
  Provenance provenance = Provenance::kEncodedGold;

  bool operator==(const CanonicalQuery&) const = default;
};

struct StrippedQuery {
  std::string text;
  // (label, namespace) for each removed PREFIX declaration, in input order.
  std::vector<std::pair<std::string, std::string>> declarations;
};

// Rewrites every <ns + local> whose namespace is in the table and whose
// local part is a plain PN_LOCAL into label:local. Output is re-rendered with
// single-space token separation. Idempotent.
std::string ContractUris(std::string_view query, const PrefixTable& table);

// Removes all PREFIX declarations and reports what they declared.
StrippedQuery StripPrefixDecls(std::string_view query);

// Canonical target form: prefix declarations removed, IRIs contracted,
// variables and braces replaced by placeholders. Prefixed names that rely on
// a declaration the table cannot reproduce are expanded to full IRIs first,
// so that decoding with the same table is lossless.
// Throws Error(kLexError) or Error(kCollision).
CanonicalQuery EncodeTarget(std::string_view query, const PrefixTable& table);

// Inverse of EncodeTarget for arbitrary text. Never throws; text that does
// not lex is split on whitespace instead.
std::string DecodePrediction(const CanonicalQuery& canonical,
                             const PrefixTable& table);

// Token sequence of the query after declaration stripping and IRI
// contraction (with the same treatment of query-local prefixes as
// EncodeTarget). Two queries are surface-equivalent iff these are equal.
std::vector<Token> NormalizeQuery(std::string_view query, const PrefixTable& table);

// Empty when EncodeTarget would succeed, otherwise the failure message.
std::optional<std::string> EncodeFailure(std::string_view query);

// Cheap structural check used where no real SPARQL engine is available:
// the query lexes, has a query form keyword after its prologue, contains a
// group pattern and has balanced (), [] and {}. Empty when it passes.
std::optional<std::string> CheckStructure(std::string_view query);

}  // namespace kgqa::sparql

#endif  // KGQA_CANON_H_
