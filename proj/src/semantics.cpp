#include "tscls/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "tscls/error.hpp"

namespace tscls {

TypeMultiset binding_types(const Variable& v, const Binding& b, const Pattern& lhs, const TypeEnv& env,
                           TypingMode mode) {
  switch (v.kind) {
    case Variable::Kind::Term: return type_of(std::get<Term>(b), env);
    case Variable::Kind::Seq: {
      const auto& s = std::get<Sequence>(b);
      if (mode == TypingMode::Literal && s.size() == 1) {
        TypeMultiset out;
        out.add(TypeName::basic(env.lookup(s.front())));
        return out;
      }
      return stype_of(s, env);
    }
    case Variable::Kind::Elem: {
      const auto& e = std::get<Element>(b);
      TypeMultiset out;
      if (mode == TypingMode::Literal || elem_var_is_parallel_item(lhs, v)) {
        out.add(TypeName::basic(env.lookup(e)));
      } else {
        out.add(TypeName::sequence(env.lookup(e)));
      }
      return out;
    }
  }
  return {};
}

CountValues count_types(const Instantiation& sigma, const RewriteRule& rule, const TypeEnv& env, TypingMode mode) {
  CountValues out;
  for (const auto& [v, decls] : rule.counts.per_var) {
    if (decls.empty()) continue;
    auto it = sigma.find(v);
    if (it == sigma.end()) throw MatchError("rule " + rule.id + ": counted variable " + v.str() + " is unbound");
    const TypeMultiset types = binding_types(v, it->second, rule.lhs, env, mode);
    for (const auto& d : decls) out[d.name] = types.count(d.type);
  }
  return out;
}

double eval_rate(const RewriteRule& rule, const CountValues& counts, const Constants& constants) {
  double r = 0;
  try {
    r = evaluate(rule.rate, counts, constants);
  } catch (const EvalError& e) {
    throw EvalError("rule " + rule.id + ": " + e.what());
  }
  if (!std::isfinite(r)) throw EvalError("rule " + rule.id + ": rate is not finite");
  return r;
}

std::vector<Transition> rule_transitions(const Term& state, const Compartment& compartment, std::size_t rule_index,
                                         const RuleSet& rs) {
  std::vector<Transition> out;
  // The matched redex may not be congruent to eps, and the redex is the whole
  // compartment content.
  if (compartment.content.empty()) return out;
  const RewriteRule& rule = rs.rules[rule_index];
  for (const auto& sigma : match_whole(rule.lhs, compartment.content)) {
    Transition tr;
    try {
      tr.counts = count_types(sigma, rule, rs.env, rs.typing);
      tr.rate = eval_rate(rule, tr.counts, rs.constants);
      if (tr.rate <= 0) continue;
      tr.target = splice(state, compartment.path, substitute(rule.rhs, sigma));
    } catch (const Error& e) {
      throw EvalError(std::string(e.what()) + " (compartment " + compartment.path.str() + ")");
    }
    tr.rule_index = rule_index;
    tr.rule_id = rule.id;
    tr.path = compartment.path;
    out.push_back(std::move(tr));
  }
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    if (auto c = compare(a.target, b.target); c != 0) return c < 0;
    return a.rate < b.rate;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return same_transition(a, b); }), out.end());
  return out;
}

std::vector<Transition> transitions(const Term& state, const RuleSet& rs) {
  const auto comps = compartments(state);
  std::vector<Transition> out;
  for (std::size_t r = 0; r < rs.rules.size(); ++r) {
    for (const auto& c : comps) {
      auto part = rule_transitions(state, c, r, rs);
      std::move(part.begin(), part.end(), std::back_inserter(out));
    }
  }
  return out;
}

std::vector<Transition> transitions_parallel(const Term& state, const RuleSet& rs) {
  const auto comps = compartments(state);
  const std::size_t nc = comps.size();
  const auto pairs = static_cast<long>(rs.rules.size() * nc);
  std::vector<std::vector<Transition>> parts(static_cast<std::size_t>(pairs));
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < pairs; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      parts[idx] = rule_transitions(state, comps[idx % nc], idx / nc, rs);
    } catch (...) {
#pragma omp critical(tscls_transition_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Transition> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

}  // namespace tscls
