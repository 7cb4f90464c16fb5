#pragma once

// Patterns are terms with variables. Three variable kinds exist: term
// variables ($X) stand for a whole parallel sub-term, sequence variables (~x)
// for a possibly empty sequence, and element variables (?x) for exactly one
// element.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tscls/core.hpp"

namespace tscls {

struct Variable {
  enum class Kind : std::uint8_t { Term, Seq, Elem };

  Kind kind = Kind::Term;
  std::string name;

  static Variable term(std::string n) { return {Kind::Term, std::move(n)}; }
  static Variable seq(std::string n) { return {Kind::Seq, std::move(n)}; }
  static Variable elem(std::string n) { return {Kind::Elem, std::move(n)}; }

  /// Sigil form: `$X`, `~x` or `?x`.
  std::string str() const;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// One position of a sequence pattern: a literal element or a ~/? variable.
using SeqAtom = std::variant<Element, Variable>;
using SeqPattern = std::vector<SeqAtom>;

struct Pattern;

struct PatternItem {
  enum class Kind : std::uint8_t { Seq, Loop, TermVar };

  Kind kind = Kind::Seq;
  SeqPattern seq;                        // Seq: the sequence; Loop: the membrane
  std::shared_ptr<const Pattern> content;  // Loop only
  Variable var;                          // TermVar only

  static PatternItem sequence(SeqPattern s);
  static PatternItem loop(SeqPattern membrane, Pattern content);
  static PatternItem term_var(std::string name);
};

/// Parallel composition of items, in source order. No items means eps.
struct Pattern {
  std::vector<PatternItem> items;

  bool empty() const noexcept { return items.empty(); }
};

bool operator==(const PatternItem& a, const PatternItem& b);
bool operator==(const Pattern& a, const Pattern& b);

/// Variables of `p` in left-to-right order of first occurrence.
std::vector<Variable> variables(const Pattern& p);
/// Every literal element of `p`.
void collect_elements(const Pattern& p, std::set<Element>& out);

/// True when the first occurrence of element variable `v` in `p` is a whole
/// parallel item (as opposed to a position inside a longer sequence or a
/// membrane). Unknown variables yield false.
bool elem_var_is_parallel_item(const Pattern& p, const Variable& v);

/// Value a variable is bound to; the alternative matches the variable kind.
using Binding = std::variant<Term, Sequence, Element>;

/// Finite map from variables to canonical bindings. Two instantiations are
/// equal exactly when they bind every variable to congruent values.
using Instantiation = std::map<Variable, Binding>;

std::string binding_str(const Binding& b);
std::string instantiation_str(const Instantiation& s);

/// Union of two instantiations, or nullopt when they disagree on a variable.
std::optional<Instantiation> merge(const Instantiation& a, const Instantiation& b);

}  // namespace tscls
