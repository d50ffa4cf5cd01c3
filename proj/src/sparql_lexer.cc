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

#include "kgqa/sparql_lexer.h"

#include <cctype>

#include "kgqa/error.h"

namespace kgqa::sparql {
namespace {

bool IsNameChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool IsIriChar(unsigned char c) {
  if (c <= 0x20) return false;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return false;
    default:
      return true;
  }
}

bool IsLocalChar(unsigned char c) {
  return IsNameChar(c) || c == '-' || c == ':' || c == '.' || c == '%';
}

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) {}

  std::vector<Token> Run() {
    while (true) {
      SkipSpaceAndComments();
      if (pos_ >= in_.size()) break;
      LexOne();
    }
    return std::move(out_);
  }

 private:
  unsigned char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? static_cast<unsigned char>(in_[pos_ + ahead])
                                     : 0;
  }

  void Emit(TokenKind kind, std::size_t start, bool attached = false) {
    out_.push_back(Token{kind, std::string(in_.substr(start, pos_ - start)),
                         attached});
  }

  void SkipSpaceAndComments() {
    while (pos_ < in_.size()) {
      unsigned char c = Peek();
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool PreviousIs(TokenKind kind) const {
    return !out_.empty() && out_.back().kind == kind;
  }

  void LexOne() {
    const unsigned char c = Peek();
    const std::size_t start = pos_;
    if (c == '<' && TryIri()) return;
    if (c == '"' || c == '\'') return LexString(c);
    if (c == '@' && std::isalpha(Peek(1))) return LexLangTag();
    if ((c == '?' || c == '$') && IsNameChar(Peek(1))) {
      ++pos_;
      while (IsNameChar(Peek())) ++pos_;
      return Emit(TokenKind::kVariable, start);
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(Peek(1)))) return LexNumber();
    if (IsNameChar(c) || c == ':') return LexName();
    LexPunct();
  }

  bool TryIri() {
    std::size_t j = pos_ + 1;
    while (j < in_.size() && IsIriChar(static_cast<unsigned char>(in_[j]))) ++j;
    if (j < in_.size() && in_[j] == '>') {
      bool attached = PreviousIs(TokenKind::kPunct) && out_.back().text == "^^";
      std::size_t start = pos_;
      pos_ = j + 1;
      Emit(TokenKind::kIri, start, attached);
      return true;
    }
    if (j == in_.size() && StartsWithScheme(pos_ + 1)) {
      throw Error(ErrorCode::kLexError,
                  "unterminated IRI at offset " + std::to_string(pos_));
    }
    return false;
  }

  // "scheme:" right after '<' marks an IRI that lost its '>'; anything else
  // is a comparison operator.
  bool StartsWithScheme(std::size_t at) const {
    std::size_t j = at;
    if (j >= in_.size() || !std::isalpha(static_cast<unsigned char>(in_[j]))) return false;
    while (j < in_.size()) {
      unsigned char c = static_cast<unsigned char>(in_[j]);
      if (c == ':') return true;
      if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
      ++j;
    }
    return false;
  }

  void LexString(unsigned char quote) {
    const std::size_t start = pos_;
    const bool long_form = Peek(1) == quote && Peek(2) == quote;
    pos_ += long_form ? 3 : 1;
    while (true) {
      if (pos_ >= in_.size()) {
        throw Error(ErrorCode::kLexError,
                    "unterminated string literal at offset " + std::to_string(start));
      }
      unsigned char c = Peek();
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == quote) {
        if (!long_form) {
          ++pos_;
          break;
        }
        // A run of three or more quotes closes a long literal; any quotes
        // beyond the last three belong to the content.
        std::size_t run = 0;
        while (Peek(run) == quote) ++run;
        pos_ += run;
        if (run >= 3) break;
        continue;
      }
      ++pos_;
    }
    Emit(TokenKind::kString, start);
  }

  void LexLangTag() {
    const std::size_t start = pos_;
    ++pos_;
    while (std::isalpha(Peek())) ++pos_;
    while (Peek() == '-' && std::isalnum(Peek(1))) {
      ++pos_;
      while (std::isalnum(Peek())) ++pos_;
    }
    Emit(TokenKind::kLangTag, start, PreviousIs(TokenKind::kString));
  }

  void LexNumber() {
    const std::size_t start = pos_;
    while (std::isdigit(Peek())) ++pos_;
    if (Peek() == '.' && std::isdigit(Peek(1))) {
      ++pos_;
      while (std::isdigit(Peek())) ++pos_;
    }
    if ((Peek() == 'e' || Peek() == 'E') &&
        (std::isdigit(Peek(1)) ||
         ((Peek(1) == '+' || Peek(1) == '-') && std::isdigit(Peek(2))))) {
      pos_ += 2;
      while (std::isdigit(Peek())) ++pos_;
    }
    Emit(TokenKind::kNumber, start);
  }

  void LexName() {
    const std::size_t start = pos_;
    // Prefix labels may contain '-' and inner '.', bare words may not.
    std::size_t j = pos_;
    while (j < in_.size()) {
      unsigned char c = static_cast<unsigned char>(in_[j]);
      if (IsNameChar(c) || c == '-') {
        ++j;
      } else if (c == '.' && j + 1 < in_.size() &&
                 (IsNameChar(static_cast<unsigned char>(in_[j + 1])) ||
                  in_[j + 1] == '-')) {
        ++j;
      } else {
        break;
      }
    }
    if (j < in_.size() && in_[j] == ':') {
      pos_ = j + 1;
      LexLocal();
      bool attached = PreviousIs(TokenKind::kPunct) && out_.back().text == "^^";
      return Emit(TokenKind::kPrefixedName, start, attached);
    }
    while (IsNameChar(Peek())) ++pos_;
    Emit(TokenKind::kWord, start);
  }

  void LexLocal() {
    while (pos_ < in_.size()) {
      unsigned char c = Peek();
      if (c == '\\' && pos_ + 1 < in_.size()) {
        pos_ += 2;
      } else if (c == '.') {
        // A local name never ends with '.'.
        std::size_t j = pos_;
        while (j < in_.size() && in_[j] == '.') ++j;
        if (j < in_.size() && IsLocalChar(static_cast<unsigned char>(in_[j])) &&
            in_[j] != '.') {
          pos_ = j;
        } else {
          return;
        }
      } else if (IsLocalChar(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void LexPunct() {
    const std::size_t start = pos_;
    static constexpr std::string_view kTwoChar[] = {"^^", "&&", "||", "!=", "<=",
                                                    ">="};
    for (auto op : kTwoChar) {
      if (in_.substr(pos_, 2) == op) {
        pos_ += 2;
        bool attached = op == "^^" && PreviousIs(TokenKind::kString);
        return Emit(TokenKind::kPunct, start, attached);
      }
    }
    // Consume a whole UTF-8 sequence so that stray non-ASCII bytes never
    // split a code point.
    ++pos_;
    while (pos_ < in_.size() && (Peek() & 0xC0) == 0x80) ++pos_;
    Emit(TokenKind::kPunct, start);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> Lex(std::string_view query) { return Lexer(query).Run(); }

std::string Render(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty() && !t.attached) out.push_back(' ');
    out += t.text;
  }
  return out;
}

std::string_view PrefixLabel(const Token& token) {
  std::string_view text = token.text;
  return text.substr(0, text.find(':'));
}

std::string_view LocalPart(const Token& token) {
  std::string_view text = token.text;
  auto colon = text.find(':');
  return colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
}

bool IsKeyword(const Token& token, std::string_view upper_keyword) {
  if (token.kind != TokenKind::kWord || token.text.size() != upper_keyword.size())
    return false;
  for (std::size_t i = 0; i < upper_keyword.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(token.text[i])) != upper_keyword[i])
      return false;
  }
  return true;
}

}  // namespace kgqa::sparql
