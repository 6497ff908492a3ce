#pragma once

// Problem files.
//
//   # comment
//   theory <name> : <kind> [symbols...]
//   assume <term>
//   goal <term>
//
// <kind> is one of empty, ac, xor, ag. Symbols are positional: the infix
// operator (one punctuation character, default `+`), then for ag the inverse
// (default `I`), then for xor and ag the zero constant (default `0`). Inverse
// and zero names start with an upper-case letter or a digit.
//
// Terms: lower-case identifiers are names; pub(t), sign(t,t), blind(t,t),
// pair(t,t), enc(t,t) are the constructors; a declared operator is written
// infix (`a+b+c`), the inverse as I(t), the zero as 0. Different operators
// cannot be mixed without parentheses. Upper-case identifiers that are not
// declared symbols, and `?x`, are variables and are rejected.

#include "deduce/signature.hpp"
#include "deduce/term.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deduce {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
          column_(column)
    {
    }

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct Problem {
    std::vector<TheoryDef> theories;
    std::vector<RawTerm> assumptions;
    RawTerm goal;

    Signature signature() const { return Signature(theories); }
};

Problem parse_problem(std::string_view text);

/// Parses one term against `sig`. `line` is used for error positions.
RawTerm parse_term(const Signature& sig, std::string_view text, int line = 1);

/// Parses a context of theory `th`, with holes written [1], [2], ... in
/// left-to-right order.
Context parse_context(const Signature& sig, TheoryId th, std::string_view text);

} // namespace deduce
