#pragma once

// Typed rate computation and the transition relation of a state.

#include <cstdint>
#include <string>
#include <vector>

#include "tscls/core.hpp"
#include "tscls/match.hpp"
#include "tscls/model.hpp"
#include "tscls/pattern.hpp"
#include "tscls/rate_expr.hpp"

namespace tscls {

struct Transition {
  std::size_t rule_index = 0;  // position of the rule in the rule list
  std::string rule_id;
  CompartmentPath path;
  Term target;  // whole successor state, canonical
  double rate = 0.0;
  CountValues counts;  // counts the rate was computed from

  /// Identity within a transition set: rule, path, target, rate.
  friend bool same_transition(const Transition& a, const Transition& b) {
    return a.rule_index == b.rule_index && a.path == b.path && a.target == b.target && a.rate == b.rate;
  }
};

/// Everything the transition relation depends on besides the state.
struct RuleSet {
  const std::vector<RewriteRule>& rules;
  const TypeEnv& env;
  const Constants& constants;
  TypingMode typing = TypingMode::Positional;
};

/// Type multiset of a variable's binding, as used for counting.
TypeMultiset binding_types(const Variable& v, const Binding& b, const Pattern& lhs, const TypeEnv& env,
                           TypingMode mode);

/// Occurrence counts for every declared (variable, type) pair of `rule`.
CountValues count_types(const Instantiation& sigma, const RewriteRule& rule, const TypeEnv& env,
                        TypingMode mode = TypingMode::Positional);

/// Value of the rule's rate function. Errors name the rule.
double eval_rate(const RewriteRule& rule, const CountValues& counts, const Constants& constants);

/// Transitions of the rule at `rule_index` inside one compartment, ordered by
/// target. Rates <= 0 are dropped.
std::vector<Transition> rule_transitions(const Term& state, const Compartment& compartment,
                                         std::size_t rule_index, const RuleSet& rs);

/// Serial reference: every transition of `state`, ordered by (rule index,
/// path, target, rate), without duplicates.
std::vector<Transition> transitions(const Term& state, const RuleSet& rs);

/// OpenMP kernel over (compartment, rule) pairs; same result as transitions().
std::vector<Transition> transitions_parallel(const Term& state, const RuleSet& rs);

/// Successor state of `tr` (already canonical).
inline const Term& apply(const Term& /*state*/, const Transition& tr) { return tr.target; }

}  // namespace tscls
