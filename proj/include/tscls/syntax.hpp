#pragma once

// Concrete text syntax.
//
//   term := par ;  par := item ("|" item)* | "eps" ;  item := (INT "*")? (loop | seq)
//   loop := "<" seq ">" ("[" term "]")? ;  seq := IDENT ("." IDENT)*
//
// Patterns additionally allow "$X" as an item and "~x" / "?x" as sequence
// atoms. Model files are line oriented; see print_model() for the layout it
// produces, which parse_model() accepts.

#include <string>
#include <string_view>

#include "tscls/core.hpp"
#include "tscls/model.hpp"
#include "tscls/pattern.hpp"
#include "tscls/rate_expr.hpp"

namespace tscls {

/// Parses and canonicalizes a ground term. Throws ParseError.
Term parse_term(std::string_view text);
Pattern parse_pattern(std::string_view text);
RateExpr parse_rate(std::string_view text);
/// Parses and validates a model file. Throws ParseError on malformed text and
/// ValidationError when the model violates a rule-level or model-level check.
ModelFile parse_model(std::string_view text);

std::string print_term(const Term& t);
std::string print_sequence(const Sequence& s);
std::string print_pattern(const Pattern& p);
std::string print_rate(const RateExpr& e);
std::string print_model(const ModelFile& m);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_real(double v);
/// `v` with 17 significant digits.
std::string format_real17(double v);

}  // namespace tscls
