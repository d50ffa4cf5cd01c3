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

#ifndef KGQA_ANSWER_SET_H_
#define KGQA_ANSWER_SET_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kgqa {

// A normalized RDF term as it appears in a query result. Two values compare
// equal exactly when they denote the same answer for scoring purposes.
struct Value {
  enum class Kind { kIri, kLiteral, kNumeric, kBoolean, kBlank, kUnbound };

  Kind kind = Kind::kUnbound;
  // IRI text, literal lexical form, canonical decimal, or "true"/"false".
  std::string lexical;
  // Datatype IRI of a plain kLiteral; never xsd:string or rdf:langString.
  std::string datatype;
  // Lower-cased language tag of a kLiteral.
  std::string lang;

  static Value Iri(std::string iri) { return {Kind::kIri, std::move(iri), {}, {}}; }
  static Value Literal(std::string lexical, std::string datatype = {},
                       std::string lang = {}) {
    return {Kind::kLiteral, std::move(lexical), std::move(datatype), std::move(lang)};
  }
  static Value Numeric(std::string canonical) {
    return {Kind::kNumeric, std::move(canonical), {}, {}};
  }
  static Value Boolean(bool b) { return {Kind::kBoolean, b ? "true" : "false", {}, {}}; }

  auto operator<=>(const Value&) const = default;
  bool operator==(const Value&) const = default;
};

using Row = std::vector<Value>;

struct AnswerSet {
  enum class Kind { kBindings, kBoolean, kEmpty };

  Kind kind = Kind::kEmpty;
  std::vector<std::string> variables;
  std::set<Row> rows;
  bool boolean = false;

  static AnswerSet Empty(std::vector<std::string> variables = {});
  static AnswerSet Boolean(bool value);
  // Becomes kEmpty when rows is empty. Throws Error(kMalformedTerm) if a
  // row's arity differs from the variable count.
  static AnswerSet Bindings(std::vector<std::string> variables, std::set<Row> rows);

  bool IsEmpty() const { return kind == Kind::kEmpty; }

  bool operator==(const AnswerSet&) const = default;
};

// Canonical decimal spelling of a numeric lexical form ("42.0" -> "42",
// "-0.50" -> "-0.5", "1.5E3" -> "1500"). Empty when the text is not a finite
// decimal/integer/double literal.
std::string CanonicalDecimal(std::string_view lexical);

// Normalizes one SPARQL-Results-JSON term. Throws Error(kMalformedTerm).
Value NormalizeValue(const nlohmann::json& term);

// Parses one SPARQL-Results-JSON document (SELECT or ASK form).
// Throws Error(kMalformedTerm) naming the offending element.
AnswerSet ParseResultsJson(const nlohmann::json& doc);

// Merges a list of documents (QALD ships answers as an array of them).
AnswerSet MergeResults(const std::vector<AnswerSet>& parts);

nlohmann::json ToResultsJson(const AnswerSet& answers);
nlohmann::json ValueToTerm(const Value& value);

// The value tuples scored by evaluation: the row set for bindings, a single
// one-element tuple for a boolean, nothing for an empty set.
std::set<Row> AnswerTuples(const AnswerSet& answers);

std::string ToString(const Value& value);

}  // namespace kgqa

#endif  // KGQA_ANSWER_SET_H_
