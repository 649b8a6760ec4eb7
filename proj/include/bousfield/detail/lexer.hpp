#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "bousfield/errors.hpp"

namespace bousfield::detail {

struct Token {
  enum class Kind { End, Ident, Number, Symbol };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
};

/// Whitespace-insensitive tokenizer shared by the set, class and module
/// grammars. Symbols are single characters except the direct-sum marker
/// "(+)".
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  bool accept(std::string_view symbol) {
    if (tok_.kind == Token::Kind::Symbol && tok_.text == symbol) {
      advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view symbol) {
    if (!accept(symbol)) fail("expected '" + std::string(symbol) + "'");
  }

  std::string ident() {
    if (tok_.kind != Token::Kind::Ident) fail("expected a name");
    return take().text;
  }

  std::uint64_t number() {
    if (tok_.kind != Token::Kind::Number) fail("expected a number");
    const std::string text = take().text;
    std::uint64_t v = 0;
    for (char c : text) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, std::uint64_t(c - '0'), &v))
        throw ParseError("number out of range: " + text);
    }
    return v;
  }

  std::int64_t signed_number() {
    bool neg = accept("-");
    std::uint64_t v = number();
    return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
  }

  bool at_end() const { return tok_.kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string near = tok_.kind == Token::Kind::End ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(msg + " at position " + std::to_string(tok_.pos) + " near " + near);
  }

 private:
  void skip_ws() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= src_.size()) return;
    char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
      tok_ = {Token::Kind::Ident, std::string(src_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      tok_ = {Token::Kind::Number, std::string(src_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    if (c == '(') {
      std::size_t j = i_ + 1;
      while (j < src_.size() && std::isspace(static_cast<unsigned char>(src_[j]))) ++j;
      if (j < src_.size() && src_[j] == '+') {
        std::size_t k = j + 1;
        while (k < src_.size() && std::isspace(static_cast<unsigned char>(src_[k]))) ++k;
        if (k < src_.size() && src_[k] == ')') {
          tok_ = {Token::Kind::Symbol, "(+)", i_};
          i_ = k + 1;
          return;
        }
      }
    }
    tok_ = {Token::Kind::Symbol, std::string(1, c), i_};
    ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

}  // namespace bousfield::detail
