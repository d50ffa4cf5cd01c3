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

#ifndef KGQA_SPARQL_LEXER_H_
#define KGQA_SPARQL_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgqa::sparql {

// Surface lexer for SPARQL. It recognizes IRIs, prefixed names, variables,
// string literals (all four quoting styles, with escapes), language tags,
// numbers, bare words and punctuation. It performs no grammar validation;
// the only lexing failures are an unterminated string literal and an IRI
// (a "<scheme:" opener) that runs into the end of input. Comments are
// dropped.
enum class TokenKind {
  kIri,           // "<...>" including the angle brackets
  kPrefixedName,  // "label:local" or "label:"
  kVariable,      // "?name" or "$name"
  kString,        // quoted literal including its quotes
  kLangTag,       // "@en-GB"
  kNumber,
  kWord,          // keywords and other bare words
  kPunct,
};

struct Token {
  TokenKind kind;
  std::string text;
  // True when the token must be rendered without a preceding space
  // (language tags, "^^" and the datatype that follows it).
  bool attached = false;

  bool operator==(const Token&) const = default;
};

// Throws Error(kLexError) with the byte offset of the offending construct.
std::vector<Token> Lex(std::string_view query);

// Joins tokens with single spaces, honoring Token::attached.
std::string Render(const std::vector<Token>& tokens);

// Label part of a prefixed name ("wd" for "wd:Q5", "" for ":x").
std::string_view PrefixLabel(const Token& token);
// Local part of a prefixed name ("Q5" for "wd:Q5").
std::string_view LocalPart(const Token& token);

bool IsKeyword(const Token& token, std::string_view upper_keyword);

}  // namespace kgqa::sparql

#endif  // KGQA_SPARQL_LEXER_H_
