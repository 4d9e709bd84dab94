#include <cctype>

#include "lagsg/error.hpp"
#include "lagsg/poly.hpp"

namespace lagsg {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables) : text_(text), vars_(variables) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail_unexpected();
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  [[noreturn]] void fail_unexpected() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant()) throw ParseError("division by a non-constant expression", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc *= Rational(1) / d.constant_term();
      } else if (ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(') {
        fail("implicit multiplication is not allowed; use '*'");
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", at);
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("exponent must be a non-negative integer literal", at);
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (pos_ < text_.size() && text_[pos_] == '.')
      throw ParseError("non-integer exponent", at);
    if (digits.size() > 6) throw ParseError("exponent too large", at);
    return base.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  Poly primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
      if (pos_ < text_.size() && text_[pos_] == '.')
        throw ParseError("decimal literals are not supported; write a/b", at);
      if (pos_ < text_.size() && ident_start(text_[pos_]))
        fail("implicit multiplication is not allowed; use '*'");
      return Poly::constant(vars_, Rational::parse(digits));
    }
    if (ident_start(c)) {
      std::string name;
      while (pos_ < text_.size() && ident_char(text_[pos_])) name += text_[pos_++];
      for (const auto& v : vars_)
        if (v == name) return Poly::variable(vars_, name);
      throw ParseError("unknown variable '" + name + "'", at);
    }
    fail_unexpected();
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

}  // namespace lagsg
