#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ucp/ast.hpp"

namespace ucp {

/// Raised when source text falls outside the closed program dialect:
/// unsupported constructs (loops, conditionals, calls other than Counter),
/// malformed literals, bad indentation, tabs, stray comparison operators.
class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, std::string message);

    const SourceSpan& span() const { return span_; }
    const std::string& message() const { return message_; }  // without position prefix

private:
    SourceSpan span_;
    std::string message_;
};

/// Parse one program: `def name():` header, optional docstring, then
/// assignments, unit declarations, unit-equality asserts and a final return.
/// Anything else throws ParseError. Input is UTF-8; indentation is four
/// spaces; tabs are rejected; comments are skipped.
Program parse_program(std::string_view source);

/// Parse a standalone Counter literal, e.g. `Counter({"marbles": 1, "bags": -1})`.
UnitVector parse_unit_literal(std::string_view text);

}  // namespace ucp
