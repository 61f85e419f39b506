#pragma once

// A small toll expression language compiling into the TollFunction DSL:
// polynomials in n, floor/ceil of rational-coefficient polynomials, residue
// indicators, and digit-weight powers.
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*          ('/' by a constant)
//   factor  := '-' factor | atom ('^' exponent)?
//   exponent:= unsigned | 'nu' | 'nu0' | 'v2' | 'L'
//   atom    := number | 'n' | '(' expr ')' | 'floor(' expr ')'
//            | 'ceil(' expr ')' | 'odd' | 'even' | 'ind(' M ',' r... ')'
//
// Examples: "floor(n/2)", "1+odd", "n^2", "2^nu0*odd - n/4", "ind(4,3)",
// "(-1)^L". Digit powers take a constant base; "(-1)^L" is the alternating
// length sign.

#include <string>

#include "dcosc/toll.hpp"

namespace dcosc {

struct TollParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TollFunction parse_toll(const std::string& text);

}  // namespace dcosc
