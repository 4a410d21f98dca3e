#pragma once

// Arithmetic over hyperbolic literals.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := NUMBER ['h'] | '(' expr ')' | ('exp' | 'conj' | 'mod') '(' expr ')'
//
// `h` is only a literal suffix: `3+2h`, `0.5h`, `1e-3h`. `mod` yields the
// real number x^2 - y^2.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyper/core.hpp"

namespace hyper::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Throws ParseError on malformed input, DivisionByZeroDivisor, Overflow or
/// NonFiniteValue on algebraic failures.
HyperbolicNumber evaluate_expression(std::string_view text);

}  // namespace hyper::cli
