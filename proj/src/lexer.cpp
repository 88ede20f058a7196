#include "lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace sbcheck::detail {

namespace {

constexpr std::array<std::string_view, 8> kLongPunct = {"->", "==", "!=", "<=", ">=", "&&", "||", ".."};
constexpr std::string_view kShortPunct = "{}()[];:,=<>!+-@";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> tokenize(std::string_view src, SourcePos origin) {
  std::vector<Token> out;
  SourcePos pos = origin;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') {
        advance(1);
      }
      continue;
    }

    Token tok;
    tok.pos = pos;
    tok.offset = i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) {
        ++j;
      }
      tok.kind = TokenKind::identifier;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      constexpr auto max = std::numeric_limits<std::int64_t>::max();
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        int d = src[j] - '0';
        if (v > (max - d) / 10) {
          throw ParseError(pos, "integer literal out of range");
        }
        v = v * 10 + d;
        ++j;
      }
      if (j < src.size() && ident_char(src[j])) {
        throw ParseError(pos, "malformed number");
      }
      tok.kind = TokenKind::integer;
      tok.text = std::string(src.substr(i, j - i));
      tok.value = v;
      advance(j - i);
    } else if (c == '"') {
      std::string payload;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < src.size()) {
        if (src[j] == '\\' && j + 1 < src.size()) {
          payload.push_back(src[j + 1]);
          j += 2;
          continue;
        }
        if (src[j] == '"') {
          closed = true;
          break;
        }
        if (src[j] == '\n') {
          break;
        }
        payload.push_back(src[j]);
        ++j;
      }
      if (!closed) {
        throw ParseError(pos, "unterminated string literal");
      }
      tok.kind = TokenKind::string;
      tok.text = std::move(payload);
      advance(j + 1 - i);
    } else {
      tok.kind = TokenKind::punct;
      for (auto p : kLongPunct) {
        if (src.substr(i, p.size()) == p) {
          tok.text = std::string(p);
          break;
        }
      }
      if (tok.text.empty()) {
        if (kShortPunct.find(c) == std::string_view::npos) {
          throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }
        tok.text = std::string(1, c);
      }
      advance(tok.text.size());
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::end;
  end.pos = pos;
  end.offset = src.size();
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
  case TokenKind::identifier:
    return "'" + t.text + "'";
  case TokenKind::integer:
    return "integer " + t.text;
  case TokenKind::string:
    return "string \"" + t.text + "\"";
  case TokenKind::punct:
    return "'" + t.text + "'";
  case TokenKind::end:
    break;
  }
  return "end of input";
}

const Token& TokenStream::expect_punct(std::string_view p) {
  if (!is_punct(p)) {
    fail("expected '" + std::string(p) + "', found " + describe(peek()));
  }
  return next();
}

const Token& TokenStream::expect_word(std::string_view w) {
  if (!is_word(w)) {
    fail("expected '" + std::string(w) + "', found " + describe(peek()));
  }
  return next();
}

const Token& TokenStream::expect(TokenKind kind, std::string_view what) {
  if (peek().kind != kind) {
    fail("expected " + std::string(what) + ", found " + describe(peek()));
  }
  return next();
}

} // namespace sbcheck::detail
