// Recursive-descent reader for the polynomial text format.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := number | number 'i' | 'i' | 'z'k | '~z'k | 't' | '(' expr ')'
//
// Juxtaposition is rejected, so "2z1" and "z1 z2" are errors.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mixsing/mixedpoly.hpp"

namespace mixsing {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// With `with_parameter` the result has n + 1 variables and index 0 is t.
/// Without it `t` is an error. `~t` is always an error.
MixedPolynomial parse_polynomial(std::string_view text, int n, bool with_parameter);

}  // namespace mixsing
