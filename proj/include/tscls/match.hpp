#pragma once

// Compartments and whole-compartment pattern matching.
//
// A rule is applied to the complete content of one compartment: the root of
// the state or the content of one membrane at any depth. The lhs has to
// account for everything in that content; a rule that should ignore the rest
// says so with a term variable (`| $X`).

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "tscls/core.hpp"
#include "tscls/pattern.hpp"

namespace tscls {

/// Route from the root to a compartment. Each step is the index of a loop
/// entry in the canonical entry list of the enclosing compartment; identical
/// membranes share an entry and therefore a path.
struct CompartmentPath {
  std::vector<std::size_t> steps;

  bool is_root() const noexcept { return steps.empty(); }
  /// "/" for the root, "/0/2" for nested compartments.
  std::string str() const;

  friend bool operator==(const CompartmentPath&, const CompartmentPath&) = default;
  friend auto operator<=>(const CompartmentPath&, const CompartmentPath&) = default;
};

struct Compartment {
  CompartmentPath path;
  Term content;
};

/// Root compartment first, then every membrane content in pre-order.
std::vector<Compartment> compartments(const Term& state);

/// Content of the compartment at `path`. Throws std::out_of_range for an
/// invalid path.
const Term& content_at(const Term& state, const CompartmentPath& path);

/// Replaces one copy of the compartment at `path` by `content` and returns the
/// canonical result.
Term splice(const Term& state, const CompartmentPath& path, const Term& content);

/// All instantiations sigma with substitute(lhs, sigma) congruent to
/// `content` (canonical). Term and sequence variables may bind eps; element
/// variables never do. A loop item always matches a membrane of `content`,
/// even when its membrane pattern could collapse to eps.
std::set<Instantiation> match_whole(const Pattern& lhs, const Term& content);

/// All ways a sequence pattern matches a sequence exactly.
std::set<Instantiation> match_sequence(const SeqPattern& pattern, const Sequence& seq);

/// Canonical term obtained by replacing every variable of `p`. Throws
/// MatchError for an unbound variable, a binding of the wrong kind, or a
/// result with an empty membrane around a non-empty content.
Term substitute(const Pattern& p, const Instantiation& sigma);

}  // namespace tscls
