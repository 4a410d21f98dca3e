#include "hyper/expression.hpp"

#include <cctype>
#include <charconv>

#include "hyper/polar.hpp"

namespace hyper::cli {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  HyperbolicNumber parse() {
    HyperbolicNumber v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  HyperbolicNumber expr() {
    HyperbolicNumber v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  HyperbolicNumber term() {
    HyperbolicNumber v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        v = divide(v, unary());
      } else {
        return v;
      }
    }
  }

  HyperbolicNumber unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  HyperbolicNumber primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      HyperbolicNumber v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return call();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  HyperbolicNumber number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - first);
    if (pos_ < text_.size() && text_[pos_] == 'h') {
      ++pos_;
      return {0.0, value};
    }
    return {value, 0.0};
  }

  HyperbolicNumber call() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name != "exp" && name != "conj" && name != "mod") {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    const HyperbolicNumber arg = expr();
    expect(')');
    if (name == "exp") return exp(arg);
    if (name == "conj") return conjugate(arg);
    return {modulus(arg), 0.0};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

HyperbolicNumber evaluate_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace hyper::cli
