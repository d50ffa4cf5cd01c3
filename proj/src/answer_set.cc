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

#include "kgqa/answer_set.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "kgqa/error.h"

namespace kgqa {
namespace {

constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
constexpr std::string_view kWikidataHttps = "https://www.wikidata.org/";
constexpr std::string_view kWikidataHttp = "http://www.wikidata.org/";
constexpr int kMaxExponent = 4096;

constexpr std::array<std::string_view, 16> kNumericTypes = {
    "integer", "decimal", "double", "float", "int", "long", "short", "byte",
    "nonNegativeInteger", "nonPositiveInteger", "negativeInteger",
    "positiveInteger", "unsignedLong", "unsignedInt", "unsignedShort",
    "unsignedByte"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string ExpandDatatype(std::string_view dt) {
  if (dt.starts_with("xsd:")) return std::string(kXsd) + std::string(dt.substr(4));
  return std::string(dt);
}

bool IsNumericType(std::string_view dt) {
  if (!dt.starts_with(kXsd)) return false;
  std::string_view local = dt.substr(kXsd.size());
  return std::find(kNumericTypes.begin(), kNumericTypes.end(), local) !=
         kNumericTypes.end();
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedTerm, what);
}

}  // namespace

AnswerSet AnswerSet::Empty(std::vector<std::string> variables) {
  AnswerSet a;
  a.kind = Kind::kEmpty;
  a.variables = std::move(variables);
  return a;
}

AnswerSet AnswerSet::Boolean(bool value) {
  AnswerSet a;
  a.kind = Kind::kBoolean;
  a.boolean = value;
  return a;
}

AnswerSet AnswerSet::Bindings(std::vector<std::string> variables, std::set<Row> rows) {
  for (const Row& row : rows) {
    if (row.size() != variables.size()) {
      Malformed("row arity " + std::to_string(row.size()) + " != " +
                std::to_string(variables.size()) + " variables");
    }
  }
  AnswerSet a;
  a.kind = rows.empty() ? Kind::kEmpty : Kind::kBindings;
  a.variables = std::move(variables);
  a.rows = std::move(rows);
  return a;
}

std::string CanonicalDecimal(std::string_view lexical) {
  std::string_view s = Trim(lexical);
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long point = 0;
  bool any_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits.push_back(s[i++]);
    ++point;
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i++]);
      any_digit = true;
    }
  }
  if (!any_digit) return {};
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    if (i == s.size()) return {};
    long exponent = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      exponent = exponent * 10 + (s[i++] - '0');
      if (exponent > kMaxExponent) return {};
    }
    point += exp_negative ? -exponent : exponent;
  }
  if (i != s.size()) return {};

  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == '0') ++lead;
  digits.erase(0, lead);
  point -= static_cast<long>(lead);
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  if (digits.empty()) return "0";

  std::string out = negative ? "-" : "";
  const long n = static_cast<long>(digits.size());
  if (point <= 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-point), '0');
    out += digits;
  } else if (point >= n) {
    out += digits;
    out.append(static_cast<std::size_t>(point - n), '0');
  } else {
    out += digits.substr(0, static_cast<std::size_t>(point));
    out += '.';
    out += digits.substr(static_cast<std::size_t>(point));
  }
  return out;
}

Value NormalizeValue(const nlohmann::json& term) {
  if (!term.is_object()) Malformed("term is not an object");
  auto type_it = term.find("type");
  auto value_it = term.find("value");
  if (type_it == term.end() || !type_it->is_string()) Malformed("term lacks 'type'");
  if (value_it == term.end() || !value_it->is_string()) Malformed("term lacks 'value'");
  const std::string& type = type_it->get_ref<const std::string&>();
  const std::string& raw = value_it->get_ref<const std::string&>();

  if (type == "uri") {
    std::string iri = raw;
    if (iri.starts_with(kWikidataHttps)) {
      iri = std::string(kWikidataHttp) + iri.substr(kWikidataHttps.size());
    }
    return Value::Iri(std::move(iri));
  }
  if (type == "bnode") return Value{Value::Kind::kBlank, raw, {}, {}};
  if (type != "literal" && type != "typed-literal") Malformed("unknown term type '" + type + "'");

  std::string lexical(Trim(raw));
  std::string datatype;
  if (auto dt = term.find("datatype"); dt != term.end()) {
    if (!dt->is_string()) Malformed("datatype is not a string");
    datatype = ExpandDatatype(dt->get_ref<const std::string&>());
  }
  std::string lang;
  for (const char* key : {"xml:lang", "lang"}) {
    if (auto l = term.find(key); l != term.end()) {
      if (!l->is_string()) Malformed("language tag is not a string");
      lang = Lower(l->get_ref<const std::string&>());
    }
  }
  if (datatype == std::string(kXsd) + "string" || datatype == kLangString) datatype.clear();
  if (IsNumericType(datatype)) {
    std::string canonical = CanonicalDecimal(lexical);
    if (!canonical.empty()) return Value::Numeric(std::move(canonical));
  }
  if (datatype == std::string(kXsd) + "boolean") {
    if (lexical == "true" || lexical == "1") return Value::Boolean(true);
    if (lexical == "false" || lexical == "0") return Value::Boolean(false);
  }
  return Value::Literal(std::move(lexical), std::move(datatype), std::move(lang));
}

AnswerSet ParseResultsJson(const nlohmann::json& doc) {
  if (!doc.is_object()) Malformed("results document is not an object");
  if (auto b = doc.find("boolean"); b != doc.end()) {
    if (!b->is_boolean()) Malformed("'boolean' is not true/false");
    return AnswerSet::Boolean(b->get<bool>());
  }
  std::vector<std::string> vars;
  if (auto head = doc.find("head"); head != doc.end() && head->is_object()) {
    if (auto v = head->find("vars"); v != head->end()) {
      if (!v->is_array()) Malformed("head.vars is not an array");
      for (const auto& name : *v) {
        if (!name.is_string()) Malformed("head.vars entry is not a string");
        vars.push_back(name.get<std::string>());
      }
    }
  }
  auto results = doc.find("results");
  if (results == doc.end()) return AnswerSet::Empty(std::move(vars));
  if (!results->is_object()) Malformed("'results' is not an object");
  auto bindings = results->find("bindings");
  if (bindings == results->end()) return AnswerSet::Empty(std::move(vars));
  if (!bindings->is_array()) Malformed("results.bindings is not an array");

  std::set<Row> rows;
  for (std::size_t r = 0; r < bindings->size(); ++r) {
    const auto& binding = (*bindings)[r];
    if (!binding.is_object()) Malformed("binding " + std::to_string(r) + " is not an object");
    if (vars.empty() && !binding.empty()) {
      // Some producers omit head.vars; fall back to the binding keys.
      for (const auto& [key, _] : binding.items()) vars.push_back(key);
    }
    Row row;
    row.reserve(vars.size());
    for (const std::string& var : vars) {
      auto it = binding.find(var);
      if (it == binding.end()) {
        row.push_back(Value{});
        continue;
      }
      try {
        row.push_back(NormalizeValue(*it));
      } catch (const Error& e) {
        Malformed("binding " + std::to_string(r) + "." + var + ": " + e.what());
      }
    }
    rows.insert(std::move(row));
  }
  return AnswerSet::Bindings(std::move(vars), std::move(rows));
}

AnswerSet MergeResults(const std::vector<AnswerSet>& parts) {
  if (parts.empty()) return AnswerSet::Empty();
  for (const AnswerSet& part : parts) {
    if (part.kind == AnswerSet::Kind::kBoolean) return part;
  }
  std::vector<std::string> vars = parts.front().variables;
  std::set<Row> rows;
  for (const AnswerSet& part : parts) {
    if (vars.empty()) vars = part.variables;
    if (!part.rows.empty() && part.variables.size() != vars.size()) {
      Malformed("answer documents disagree on arity");
    }
    rows.insert(part.rows.begin(), part.rows.end());
  }
  return AnswerSet::Bindings(std::move(vars), std::move(rows));
}

nlohmann::json ValueToTerm(const Value& value) {
  using nlohmann::json;
  switch (value.kind) {
    case Value::Kind::kIri:
      return json{{"type", "uri"}, {"value", value.lexical}};
    case Value::Kind::kBlank:
      return json{{"type", "bnode"}, {"value", value.lexical}};
    case Value::Kind::kNumeric:
      return json{{"type", "literal"},
                  {"value", value.lexical},
                  {"datatype", std::string(kXsd) + "decimal"}};
    case Value::Kind::kBoolean:
      return json{{"type", "literal"},
                  {"value", value.lexical},
                  {"datatype", std::string(kXsd) + "boolean"}};
    case Value::Kind::kLiteral: {
      json term{{"type", "literal"}, {"value", value.lexical}};
      if (!value.datatype.empty()) term["datatype"] = value.datatype;
      if (!value.lang.empty()) term["xml:lang"] = value.lang;
      return term;
    }
    case Value::Kind::kUnbound:
      break;
  }
  return nullptr;
}

nlohmann::json ToResultsJson(const AnswerSet& answers) {
  using nlohmann::json;
  if (answers.kind == AnswerSet::Kind::kBoolean) {
    return json{{"head", json::object()}, {"boolean", answers.boolean}};
  }
  json bindings = json::array();
  for (const Row& row : answers.rows) {
    json binding = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].kind == Value::Kind::kUnbound) continue;
      binding[answers.variables[i]] = ValueToTerm(row[i]);
    }
    bindings.push_back(std::move(binding));
  }
  return json{{"head", {{"vars", answers.variables}}},
              {"results", {{"bindings", std::move(bindings)}}}};
}

std::set<Row> AnswerTuples(const AnswerSet& answers) {
  switch (answers.kind) {
    case AnswerSet::Kind::kBindings:
      return answers.rows;
    case AnswerSet::Kind::kBoolean:
      return {Row{Value::Boolean(answers.boolean)}};
    case AnswerSet::Kind::kEmpty:
      break;
  }
  return {};
}

std::string ToString(const Value& value) {
  switch (value.kind) {
    case Value::Kind::kIri: return "<" + value.lexical + ">";
    case Value::Kind::kBlank: return "_:" + value.lexical;
    case Value::Kind::kNumeric:
    case Value::Kind::kBoolean: return value.lexical;
    case Value::Kind::kUnbound: return "UNDEF";
    case Value::Kind::kLiteral: {
      std::string out = "\"" + value.lexical + "\"";
      if (!value.lang.empty()) out += "@" + value.lang;
      if (!value.datatype.empty()) out += "^^<" + value.datatype + ">";
      return out;
    }
  }
  return {};
}

}  // namespace kgqa
