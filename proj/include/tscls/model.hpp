#pragma once

// Rewrite rules and whole models.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tscls/core.hpp"
#include "tscls/pattern.hpp"
#include "tscls/rate_expr.hpp"

namespace tscls {

/// One counted type: the number of occurrences of `type` in a variable's
/// binding is made available to the rate function under `name`.
struct CountDecl {
  TypeName type;
  std::string name;

  friend bool operator==(const CountDecl&, const CountDecl&) = default;
};

/// Per-variable count declarations, in declaration order.
struct CountSpec {
  std::vector<std::pair<Variable, std::vector<CountDecl>>> per_var;

  /// Declarations of `v`, created empty on first use.
  std::vector<CountDecl>& of(const Variable& v);
  const std::vector<CountDecl>* find(const Variable& v) const;
  /// All count-variable names, in declaration order.
  std::vector<std::string> names() const;
  bool empty() const noexcept;

  friend bool operator==(const CountSpec&, const CountSpec&) = default;
};

struct RewriteRule {
  std::string id;
  Pattern lhs;
  Pattern rhs;
  CountSpec counts;
  RateExpr rate;
};

/// How element and sequence variable bindings are typed when counting.
///  Positional: by where the variable sits in the lhs (a sequence variable
///    always yields sequence types; an element variable yields a basic type
///    only when it is a whole parallel item).
///  Literal: the binding is typed as a stand-alone term, so a one-element
///    sequence binding yields a basic type.
enum class TypingMode : std::uint8_t { Positional, Literal };

struct ObservableSpec {
  enum class Scope : std::uint8_t { Global, PerCompartment };

  Element element;
  Scope scope = Scope::Global;

  friend bool operator==(const ObservableSpec&, const ObservableSpec&) = default;
};

struct SimConfig {
  std::uint64_t seed = 0;
  double tmax = 100.0;
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t samples = 100;
};

/// Values given by a model's `run { ... }` block.
struct RunDefaults {
  std::optional<std::uint64_t> seed;
  std::optional<double> tmax;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> samples;

  bool empty() const noexcept { return !seed && !tmax && !max_steps && !samples; }
  SimConfig apply(SimConfig base) const;

  friend bool operator==(const RunDefaults&, const RunDefaults&) = default;
};

struct ModelFile {
  std::string name;
  Constants constants;
  std::map<Element, std::string> type_decls;
  std::vector<RewriteRule> rules;
  Term init;
  std::vector<ObservableSpec> observables;
  RunDefaults run;
  TypingMode typing = TypingMode::Positional;
};

/// Problems with a single rule, each prefixed with "rule <id>: ".
std::vector<std::string> validate_rule(const RewriteRule& rule, const Constants& constants);
/// Throws ValidationError listing every problem of the model.
void validate_model(const ModelFile& model);

/// Every element mentioned by the rules, the initial term, the observables and
/// the type declarations.
std::set<Element> model_elements(const ModelFile& model);
/// Declared types plus default types for every other model element.
TypeEnv model_type_env(const ModelFile& model);

}  // namespace tscls
