#pragma once

// Tokenizer shared by the formula, CTL and model-file parsers.

#include "sbcheck/error.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sbcheck::detail {

enum class TokenKind { identifier, integer, string, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;        // identifier name, punctuation, or unescaped string payload
  std::int64_t value = 0;  // integers only
  SourcePos pos;
  std::size_t offset = 0;  // byte offset into the tokenized text
};

/// Splits `source` into tokens. `//` comments and whitespace are skipped.
/// Multi-character punctuation: -> == != <= >= && || ..
std::vector<Token> tokenize(std::string_view source, SourcePos origin = {});

class TokenStream {
public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (index_ + 1 < tokens_.size()) {
      ++index_;
    }
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::end; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::punct && t.text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::identifier && t.text == w;
  }
  bool accept_punct(std::string_view p) {
    if (is_punct(p)) {
      next();
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    if (is_word(w)) {
      next();
      return true;
    }
    return false;
  }

  const Token& expect_punct(std::string_view p);
  const Token& expect_word(std::string_view w);
  const Token& expect(TokenKind kind, std::string_view what);

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(peek().pos, message); }

private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

std::string describe(const Token& t);

} // namespace sbcheck::detail
