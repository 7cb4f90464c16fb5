#include "tscls/model.hpp"

#include <algorithm>

#include "tscls/error.hpp"

namespace tscls {

std::vector<CountDecl>& CountSpec::of(const Variable& v) {
  for (auto& [var, decls] : per_var) {
    if (var == v) return decls;
  }
  per_var.emplace_back(v, std::vector<CountDecl>{});
  return per_var.back().second;
}

const std::vector<CountDecl>* CountSpec::find(const Variable& v) const {
  for (const auto& [var, decls] : per_var) {
    if (var == v) return &decls;
  }
  return nullptr;
}

std::vector<std::string> CountSpec::names() const {
  std::vector<std::string> out;
  for (const auto& [_, decls] : per_var) {
    for (const auto& d : decls) out.push_back(d.name);
  }
  return out;
}

bool CountSpec::empty() const noexcept {
  return std::all_of(per_var.begin(), per_var.end(), [](const auto& p) { return p.second.empty(); });
}

SimConfig RunDefaults::apply(SimConfig base) const {
  if (seed) base.seed = *seed;
  if (tmax) base.tmax = *tmax;
  if (max_steps) base.max_steps = *max_steps;
  if (samples) base.samples = *samples;
  return base;
}

namespace {

void check_guards(const RateExpr& e, const std::set<std::string>& counts, const std::string& prefix,
                  std::vector<std::string>& problems) {
  if (e.op == RateExpr::Op::IfZero && !counts.count(e.name)) {
    problems.push_back(prefix + "guard '" + e.name + "' is not a declared count variable");
  }
  for (const auto& a : e.args) check_guards(a, counts, prefix, problems);
}

}  // namespace

std::vector<std::string> validate_rule(const RewriteRule& rule, const Constants& constants) {
  std::vector<std::string> problems;
  const std::string prefix = "rule " + rule.id + ": ";

  if (rule.lhs.empty()) problems.push_back(prefix + "lhs is congruent to eps");

  const auto lhs_vars = variables(rule.lhs);
  const std::set<Variable> lhs_set(lhs_vars.begin(), lhs_vars.end());
  for (const auto& v : variables(rule.rhs)) {
    if (!lhs_set.count(v)) {
      problems.push_back(prefix + "variable " + v.str() +
                         " not in lhs (rhs variables must be a subset of lhs variables)");
    }
  }

  std::set<std::string> count_names;
  for (const auto& [v, decls] : rule.counts.per_var) {
    if (!lhs_set.count(v)) {
      problems.push_back(prefix + "count declaration for " + v.str() + " which does not occur in lhs");
    }
    for (const auto& d : decls) {
      if (!count_names.insert(d.name).second) {
        problems.push_back(prefix + "count variable '" + d.name + "' declared twice");
      }
    }
  }

  std::set<std::string> names;
  free_names(rule.rate, names);
  for (const auto& n : names) {
    if (!count_names.count(n) && !constants.count(n)) {
      problems.push_back(prefix + "rate uses undeclared name '" + n + "'");
    }
  }
  check_guards(rule.rate, count_names, prefix, problems);
  return problems;
}

std::set<Element> model_elements(const ModelFile& model) {
  std::set<Element> out;
  for (const auto& r : model.rules) {
    collect_elements(r.lhs, out);
    collect_elements(r.rhs, out);
  }
  collect_elements(model.init, out);
  for (const auto& o : model.observables) out.insert(o.element);
  for (const auto& [e, _] : model.type_decls) out.insert(e);
  return out;
}

void validate_model(const ModelFile& model) {
  std::vector<std::string> problems;
  std::set<std::string> ids;
  for (const auto& r : model.rules) {
    if (!ids.insert(r.id).second) problems.push_back("rule " + r.id + ": duplicate rule id");
    auto rp = validate_rule(r, model.constants);
    problems.insert(problems.end(), rp.begin(), rp.end());
  }
  if (!is_canonical(model.init)) problems.push_back("init: term is not in canonical form");

  std::set<Element> mentioned;
  for (const auto& r : model.rules) {
    collect_elements(r.lhs, mentioned);
    collect_elements(r.rhs, mentioned);
  }
  collect_elements(model.init, mentioned);
  for (const auto& [e, _] : model.type_decls) mentioned.insert(e);
  for (const auto& o : model.observables) {
    if (!mentioned.count(o.element)) {
      problems.push_back("observe: element '" + o.element.name() + "' does not occur in the model");
    }
  }
  if (model.run.tmax && *model.run.tmax < 0) problems.push_back("run: tmax must be non-negative");
  if (model.run.max_steps && *model.run.max_steps == 0) problems.push_back("run: max_steps must be positive");
  if (model.run.samples && *model.run.samples == 0) problems.push_back("run: samples must be positive");

  if (!problems.empty()) throw ValidationError(std::move(problems));
}

TypeEnv model_type_env(const ModelFile& model) {
  TypeEnv env;
  for (const auto& [e, t] : model.type_decls) env.assign(e, t);
  env.fill_defaults(model_elements(model));
  return env;
}

}  // namespace tscls
