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

#include "kgqa/canon.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "kgqa/error.h"
#include "kgqa/util.h"

namespace kgqa::sparql {
namespace {

bool IsPlainLocal(std::string_view local) {
  if (local.empty()) return false;
  auto inner = [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  };
  auto edge_ok = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
  if (!edge_ok(static_cast<unsigned char>(local.front()))) return false;
  if (local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(),
                     [&](char c) { return inner(static_cast<unsigned char>(c)); });
}

std::string UnescapeLocal(std::string_view local) {
  std::string out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (local[i] == '\\' && i + 1 < local.size()) ++i;
    out.push_back(local[i]);
  }
  return out;
}

struct Split {
  std::vector<Token> body;
  std::vector<std::pair<std::string, std::string>> declarations;
};

bool IsDeclarationAt(const std::vector<Token>& tokens, std::size_t i) {
  return IsKeyword(tokens[i], "PREFIX") && i + 2 < tokens.size() &&
         tokens[i + 1].kind == TokenKind::kPrefixedName &&
         LocalPart(tokens[i + 1]).empty() && tokens[i + 2].kind == TokenKind::kIri;
}

Split SplitDeclarations(const std::vector<Token>& tokens) {
  Split out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsDeclarationAt(tokens, i)) {
      const std::string& iri = tokens[i + 2].text;
      out.declarations.emplace_back(std::string(PrefixLabel(tokens[i + 1])),
                                    iri.substr(1, iri.size() - 2));
      i += 2;
      continue;
    }
    Token t = tokens[i];
    if (out.body.empty()) t.attached = false;
    out.body.push_back(std::move(t));
  }
  return out;
}

// Replaces an IRI token by label:local when the table covers it.
void ContractToken(Token& token, const PrefixTable& table) {
  std::string_view inner = std::string_view(token.text).substr(1, token.text.size() - 2);
  auto match = table.Lookup(inner);
  if (!match || !IsPlainLocal(match->local)) return;
  token.text = match->entry->label + ":" + std::string(match->local);
  token.kind = TokenKind::kPrefixedName;
}

bool DeclaredAsInTable(const PrefixTable& table, std::string_view label,
                       std::string_view ns) {
  const PrefixTable::Entry* entry = table.Find(label);
  if (entry == nullptr) return false;
  if (entry->ns == ns) return true;
  return std::find(entry->aliases.begin(), entry->aliases.end(), ns) !=
         entry->aliases.end();
}

std::vector<Token> NormalizeTokens(const std::vector<Token>& tokens,
                                   const PrefixTable& table) {
  Split split = SplitDeclarations(tokens);
  std::map<std::string, std::string, std::less<>> declared;
  for (const auto& [label, ns] : split.declarations) declared[label] = ns;

  for (Token& t : split.body) {
    if (t.kind == TokenKind::kIri) {
      ContractToken(t, table);
    } else if (t.kind == TokenKind::kPrefixedName) {
      std::string_view label = PrefixLabel(t);
      auto it = declared.find(label);
      if (it == declared.end() || DeclaredAsInTable(table, label, it->second))
        continue;
      // The label means something the table cannot reproduce at decode
      // time, so spell the IRI out and let the table contract it if it can.
      t.text = "<" + it->second + UnescapeLocal(LocalPart(t)) + ">";
      t.kind = TokenKind::kIri;
      ContractToken(t, table);
    }
  }
  return split.body;
}

void CheckCollisions(const std::vector<Token>& tokens) {
  for (const Token& t : tokens) {
    if (t.kind != TokenKind::kWord) continue;
    if (t.text.starts_with(kVarPlaceholder) || t.text == kOpenPlaceholder ||
        t.text == kClosePlaceholder) {
      throw Error(ErrorCode::kCollision,
                  "query already contains reserved token '" + t.text + "'");
    }
  }
}

bool IsVarNameWord(std::string_view word) {
  if (!word.starts_with(kVarPlaceholder)) return false;
  return std::all_of(word.begin() + kVarPlaceholder.size(), word.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u >= 0x80;
  });
}

// Maps one placeholder word back to its SPARQL form; other words unchanged.
std::optional<Token> DecodeWord(std::string_view word) {
  if (word == kOpenPlaceholder) return Token{TokenKind::kPunct, "{"};
  if (word == kClosePlaceholder) return Token{TokenKind::kPunct, "}"};
  if (word == kVarPlaceholder) return Token{TokenKind::kPunct, "?"};
  if (IsVarNameWord(word)) {
    return Token{TokenKind::kVariable,
                 "?" + std::string(word.substr(kVarPlaceholder.size()))};
  }
  return std::nullopt;
}

}  // namespace

std::string ContractUris(std::string_view query, const PrefixTable& table) {
  std::vector<Token> tokens = Lex(query);
  for (Token& t : tokens) {
    if (t.kind == TokenKind::kIri) ContractToken(t, table);
  }
  return Render(tokens);
}

StrippedQuery StripPrefixDecls(std::string_view query) {
  Split split = SplitDeclarations(Lex(query));
  return StrippedQuery{Render(split.body), std::move(split.declarations)};
}

std::vector<Token> NormalizeQuery(std::string_view query, const PrefixTable& table) {
  return NormalizeTokens(Lex(query), table);
}

CanonicalQuery EncodeTarget(std::string_view query, const PrefixTable& table) {
  std::vector<Token> tokens = Lex(query);
  CheckCollisions(tokens);
  std::vector<Token> body = NormalizeTokens(tokens, table);
  for (Token& t : body) {
    if (t.kind == TokenKind::kVariable && t.text.front() == '?') {
      t = Token{TokenKind::kWord, std::string(kVarPlaceholder) + t.text.substr(1)};
    } else if (t.kind == TokenKind::kPunct && t.text == "?") {
      t = Token{TokenKind::kWord, std::string(kVarPlaceholder)};
    } else if (t.kind == TokenKind::kPunct && t.text == "{") {
      t = Token{TokenKind::kWord, std::string(kOpenPlaceholder)};
    } else if (t.kind == TokenKind::kPunct && t.text == "}") {
      t = Token{TokenKind::kWord, std::string(kClosePlaceholder)};
    }
  }
  return CanonicalQuery{Render(body), Provenance::kEncodedGold};
}

std::optional<std::string> EncodeFailure(std::string_view query) {
  try {
    CheckCollisions(Lex(query));
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::string DecodePrediction(const CanonicalQuery& canonical,
                             const PrefixTable& table) {
  std::vector<Token> body;
  std::set<std::string, std::less<>> used;
  std::set<std::string, std::less<>> already_declared;
  try {
    std::vector<Token> tokens = Lex(canonical.text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (IsDeclarationAt(tokens, i)) {
        already_declared.emplace(PrefixLabel(tokens[i + 1]));
      }
    }
    for (Token& t : tokens) {
      if (t.kind == TokenKind::kWord) {
        if (auto decoded = DecodeWord(t.text)) t = std::move(*decoded);
      } else if (t.kind == TokenKind::kPrefixedName) {
        used.emplace(PrefixLabel(t));
      }
      body.push_back(std::move(t));
    }
  } catch (const Error&) {
    // Unlexable model output: decode word by word.
    body.clear();
    used.clear();
    for (std::string& piece : SplitWhitespace(canonical.text)) {
      if (auto decoded = DecodeWord(piece)) {
        body.push_back(std::move(*decoded));
        continue;
      }
      auto colon = piece.find(':');
      if (colon != std::string::npos && piece.front() != '"' &&
          piece.front() != '\'' && piece.front() != '<') {
        used.insert(piece.substr(0, colon));
      }
      body.push_back(Token{TokenKind::kWord, std::move(piece)});
    }
  }

  std::vector<Token> out;
  for (const PrefixTable::Entry& entry : table.entries()) {
    if (!used.contains(entry.label) || already_declared.contains(entry.label))
      continue;
    out.push_back(Token{TokenKind::kWord, "PREFIX"});
    out.push_back(Token{TokenKind::kPrefixedName, entry.label + ":"});
    out.push_back(Token{TokenKind::kIri, "<" + entry.ns + ">"});
  }
  if (!body.empty()) body.front().attached = false;
  out.insert(out.end(), std::make_move_iterator(body.begin()),
             std::make_move_iterator(body.end()));
  return Render(out);
}

std::optional<std::string> CheckStructure(std::string_view query) {
  std::vector<Token> tokens;
  try {
    tokens = Lex(query);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (IsDeclarationAt(tokens, i)) {
      i += 3;
    } else if (IsKeyword(tokens[i], "BASE") && i + 1 < tokens.size() &&
               tokens[i + 1].kind == TokenKind::kIri) {
      i += 2;
    } else {
      break;
    }
  }
  if (i == tokens.size()) return "no query form";
  const Token& form = tokens[i];
  if (!IsKeyword(form, "SELECT") && !IsKeyword(form, "ASK") &&
      !IsKeyword(form, "CONSTRUCT") && !IsKeyword(form, "DESCRIBE")) {
    return "expected SELECT, ASK, CONSTRUCT or DESCRIBE, found '" + form.text + "'";
  }
  std::string stack;
  bool has_group = false;
  for (; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind != TokenKind::kPunct || t.text.size() != 1) continue;
    char c = t.text[0];
    if (c == '{') has_group = true;
    if (c == '{' || c == '(' || c == '[') {
      stack.push_back(c);
    } else if (c == '}' || c == ')' || c == ']') {
      char open = c == '}' ? '{' : c == ')' ? '(' : '[';
      if (stack.empty() || stack.back() != open) {
        return std::string("unbalanced '") + c + "'";
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) return std::string("unclosed '") + stack.back() + "'";
  if (!has_group) return "missing group graph pattern";
  return std::nullopt;
}

}  // namespace kgqa::sparql
