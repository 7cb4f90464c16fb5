#pragma once

// Exhaustive reference implementations of matching and of the transition
// relation. Slow by design; only for cross-checking the real engine on small
// inputs.

#include <set>
#include <vector>

#include "tscls/model.hpp"
#include "tscls/pattern.hpp"
#include "tscls/semantics.hpp"

namespace tscls::oracle {

/// Largest number of outermost components (with multiplicity) accepted at any
/// compartment level. Larger inputs make the oracle throw std::length_error.
inline constexpr std::size_t kMaxComponents = 8;

/// Every instantiation sigma with lhs sigma congruent to `content`.
std::set<Instantiation> brute_force_matches(const Pattern& lhs, const Term& content);

/// Every transition of `state`, ordered by (rule index, path, target, rate).
std::vector<Transition> brute_force_transitions(const Term& state, const RuleSet& rs);

/// Independent substitution; nullopt when the result would contain an empty
/// membrane around a non-empty content or a variable is unbound.
std::optional<Term> instantiate(const Pattern& p, const Instantiation& sigma);

}  // namespace tscls::oracle
