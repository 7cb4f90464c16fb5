#include "tscls/catalog.hpp"

#include <algorithm>
#include <set>

#include "tscls/syntax.hpp"

namespace tscls {

namespace {


RateExpr num(double v) { return RateExpr::number(v); }
RateExpr name(const std::string& n) { return RateExpr::ref(n); }
RateExpr plus_one(const std::string& n) { return name(n) + num(1); }

PatternItem elem_item(const Element& e) { return PatternItem::sequence({e}); }

TypeName basic_of(const Element& e) { return TypeName::basic(default_type_name(e)); }

std::string fresh_count_name(const RewriteRule& rule, const std::string& base) {
  const auto taken = rule.counts.names();
  std::string candidate = base;
  for (int i = 1; std::find(taken.begin(), taken.end(), candidate) != taken.end(); ++i) {
    candidate = base + "_" + std::to_string(i);
  }
  return candidate;
}

// A term variable standing for the rest of the lhs top level: the last
// top-level term variable, created (on both sides) when the lhs has none.
Variable frame_variable(RewriteRule& rule) {
  for (auto it = rule.lhs.items.rbegin(); it != rule.lhs.items.rend(); ++it) {
    if (it->kind == PatternItem::Kind::TermVar) return it->var;
  }
  std::set<std::string> used;
  for (const auto& v : variables(rule.lhs)) used.insert(v.name);
  std::string n = "X";
  for (int i = 1; used.count(n); ++i) n = "X" + std::to_string(i);
  rule.lhs.items.push_back(PatternItem::term_var(n));
  rule.rhs.items.push_back(PatternItem::term_var(n));
  return Variable::term(n);
}

// Prepends counted types to the frame variable's declarations and returns the
// names given to them, in order.
std::vector<std::string> add_frame_counts(RewriteRule& rule, const std::vector<Element>& agents) {
  const Variable frame = frame_variable(rule);
  std::vector<CountDecl> added;
  std::vector<std::string> names;
  for (const auto& e : agents) {
    std::string n = fresh_count_name(rule, "n_" + e.name());
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "_";
    names.push_back(n);
    added.push_back({basic_of(e), n});
  }
  auto& decls = rule.counts.of(frame);
  decls.insert(decls.begin(), added.begin(), added.end());
  return names;
}

RateExpr catalyst_factor(const std::string& n, double k) { return name(n) * num(k) + num(1); }

RateExpr inhibitor_divisor(const std::string& n, double k) {
  return RateExpr::if_zero(n, num(1), name(n) * num(k));
}

RewriteRule make_rule(std::string id, const char* lhs, const char* rhs, const char* rate) {
  RewriteRule r;
  r.id = std::move(id);
  r.lhs = parse_pattern(lhs);
  r.rhs = parse_pattern(rhs);
  r.rate = parse_rate(rate);
  return r;
}

void count(RewriteRule& r, const Variable& v, TypeName t, std::string n) {
  r.counts.of(v).push_back({std::move(t), std::move(n)});
}

}  // namespace

RewriteRule state_change_rule(const Element& a, const Element& b, double k, std::string id) {
  RewriteRule r;
  r.id = std::move(id);
  r.lhs.items = {elem_item(a), PatternItem::term_var("X")};
  r.rhs.items = {elem_item(b), PatternItem::term_var("X")};
  count(r, Variable::term("X"), basic_of(a), "n");
  r.rate = plus_one("n") * num(k);
  return r;
}

RewriteRule complexation_rule(const Element& a, const Element& b, const Element& c, double k, std::string id) {
  RewriteRule r;
  r.id = std::move(id);
  r.lhs.items = {elem_item(a), elem_item(b), PatternItem::term_var("X")};
  r.rhs.items = {elem_item(c), PatternItem::term_var("X")};
  count(r, Variable::term("X"), basic_of(a), "n1");
  count(r, Variable::term("X"), basic_of(b), "n2");
  r.rate = plus_one("n1") * plus_one("n2") * num(k);
  return r;
}

RewriteRule decomplexation_rule(const Element& c, const Element& a, const Element& b, double k, std::string id) {
  RewriteRule r;
  r.id = std::move(id);
  r.lhs.items = {elem_item(c), PatternItem::term_var("X")};
  r.rhs.items = {elem_item(a), elem_item(b), PatternItem::term_var("X")};
  count(r, Variable::term("X"), basic_of(c), "n");
  r.rate = plus_one("n") * num(k);
  return r;
}

std::pair<RewriteRule, RewriteRule> osmosis_rules(const Element& a, const Element& b, const OsmosisParams& p,
                                                  const OsmosisMode& mode) {
  const Variable x = Variable::seq("x");
  const Variable inner = Variable::term("X");
  const Variable outer = Variable::term("Y");

  auto membrane = [&](Pattern content) { return PatternItem::loop({x}, std::move(content)); };
  Pattern in_with_a{{PatternItem::term_var("X"), elem_item(a)}};
  Pattern in_without_a{{PatternItem::term_var("X")}};

  // Concentration of b on one side: n_b / ((n_a + 1) V_a + n_b V_b).
  auto concentration = [&](const std::string& na, const std::string& nb) {
    return name(nb) / (plus_one(na) * num(p.volume_a) + name(nb) * num(p.volume_b));
  };
  auto flow = [&](RateExpr diff) { return num(p.surface) / num(p.volume) * std::move(diff) * num(p.k); };
  auto scaled = [&](RateExpr e) {
    switch (mode.kind) {
      case OsmosisMode::Kind::Plain: return e;
      case OsmosisMode::Kind::Catalysed: return catalyst_factor("nc", p.k_c) * std::move(e);
      case OsmosisMode::Kind::Inhibited: return num(1) / inhibitor_divisor("nc", p.k_c) * std::move(e);
    }
    return e;
  };
  auto counts = [&](RewriteRule& r) {
    if (mode.kind != OsmosisMode::Kind::Plain) {
      count(r, x, TypeName::sequence(default_type_name(*mode.agent)), "nc");
    } else {
      r.counts.of(x);
    }
    count(r, inner, basic_of(a), "n1");
    count(r, inner, basic_of(b), "n2");
    count(r, outer, basic_of(a), "n3");
    count(r, outer, basic_of(b), "n4");
  };

  RewriteRule out;
  out.id = "osmosis_out";
  out.lhs.items = {membrane(in_with_a), PatternItem::term_var("Y")};
  out.rhs.items = {membrane(in_without_a), elem_item(a), PatternItem::term_var("Y")};
  counts(out);
  out.rate = scaled(flow(concentration("n1", "n2") - concentration("n3", "n4")));

  RewriteRule in;
  in.id = "osmosis_in";
  in.lhs.items = {membrane(in_without_a), elem_item(a), PatternItem::term_var("Y")};
  in.rhs.items = {membrane(in_with_a), PatternItem::term_var("Y")};
  counts(in);
  in.rate = scaled(flow(concentration("n3", "n4") - concentration("n1", "n2")));

  return {std::move(out), std::move(in)};
}

RewriteRule add_catalyst(const RewriteRule& rule, const Element& c, double k) {
  RewriteRule r = rule;
  const auto names = add_frame_counts(r, {c});
  r.rate = std::move(r.rate) * catalyst_factor(names[0], k);
  return r;
}

RewriteRule add_inhibitor(const RewriteRule& rule, const Element& d, double k) {
  RewriteRule r = rule;
  const auto names = add_frame_counts(r, {d});
  r.rate = std::move(r.rate) / inhibitor_divisor(names[0], k);
  return r;
}

RewriteRule add_both(const RewriteRule& rule, const Element& c, double k, const Element& d, double k_inh) {
  RewriteRule r = rule;
  const auto names = add_frame_counts(r, {c, d});
  r.rate = std::move(r.rate) * (catalyst_factor(names[0], k) / inhibitor_divisor(names[1], k_inh));
  return r;
}

ModelFile lac_operon_model() {
  const Variable X = Variable::term("X");
  const Variable Y = Variable::term("Y");
  auto t = [](const char* e) { return TypeName::basic(default_type_name(Element(e))); };

  ModelFile m;
  m.name = "lac_operon";

  // lacI-A, the operon with nothing bound, is the sequence
  // lacI.lacP.lacO.lacZ.lacY.lacA.
  auto& rules = m.rules;
  rules.push_back(make_rule("R1", "lacI.lacP.lacO.lacZ.lacY.lacA | $X",
                            "lacI.lacP.lacO.lacZ.lacY.lacA | Irna | $X", "0.02"));

  rules.push_back(make_rule("R2", "Irna | $X", "Irna | repr | $X", "(n + 1) * 0.1"));
  count(rules.back(), X, t("Irna"), "n");

  rules.push_back(make_rule("R3", "lacI.lacP.lacO.lacZ.lacY.lacA | polym | $X",
                            "lacI.PP.lacO.lacZ.lacY.lacA | $X", "(n + 1) * 0.1"));
  count(rules.back(), X, t("polym"), "n");

  rules.push_back(make_rule("R4", "lacI.PP.lacO.lacZ.lacY.lacA | $X",
                            "lacI.lacP.lacO.lacZ.lacY.lacA | polym | $X", "0.01"));

  rules.push_back(make_rule("R5", "lacI.PP.lacO.lacZ.lacY.lacA | $X",
                            "lacI.lacP.lacO.lacZ.lacY.lacA | polym | Rna | $X", "20"));

  rules.push_back(make_rule("R6", "Rna | $X", "Rna | betagal | perm | transac | $X", "(n + 1) * 0.1"));
  count(rules.back(), X, t("Rna"), "n");

  rules.push_back(make_rule("R7", "lacI.lacP.lacO.lacZ.lacY.lacA | repr | $X",
                            "lacI.lacP.RO.lacZ.lacY.lacA | $X", "(n + 1) * 1"));
  count(rules.back(), X, t("repr"), "n");

  rules.push_back(make_rule("R8", "lacI.PP.lacO.lacZ.lacY.lacA | repr | $X",
                            "lacI.PP.RO.lacZ.lacY.lacA | $X", "(n + 1) * 1"));
  count(rules.back(), X, t("repr"), "n");

  rules.push_back(make_rule("R9", "lacI.lacP.RO.lacZ.lacY.lacA | $X",
                            "lacI.lacP.lacO.lacZ.lacY.lacA | repr | $X", "0.01"));

  rules.push_back(make_rule("R10", "lacI.PP.RO.lacZ.lacY.lacA | $X",
                            "lacI.PP.lacO.lacZ.lacY.lacA | repr | $X", "0.01"));

  rules.push_back(complexation_rule(Element("repr"), Element("LACT"), Element("RLACT"), 0.005, "R11"));
  rules.push_back(decomplexation_rule(Element("RLACT"), Element("repr"), Element("LACT"), 0.1, "R12"));

  rules.push_back(make_rule("R13", "<~x>[ perm | $X ] | $Y", "<perm.~x>[ $X ] | $Y", "(n + 1) * 0.1"));
  rules.back().counts.of(Variable::seq("x"));
  count(rules.back(), X, t("perm"), "n");
  rules.back().counts.of(Y);

  rules.push_back(make_rule("R14", "<~x>[ $X ] | LACT | $Y", "<~x>[ LACT | $X ] | $Y", "n1 * (n2 + 1) * 0.001"));
  count(rules.back(), Variable::seq("x"), TypeName::sequence(default_type_name(Element("perm"))), "n1");
  rules.back().counts.of(X);
  count(rules.back(), Y, t("LACT"), "n2");

  rules.push_back(make_rule("R15", "LACT | $X", "GLU | GAL | $X", "(n1 + 1) * n2 * 0.001"));
  count(rules.back(), X, t("LACT"), "n1");
  count(rules.back(), X, t("betagal"), "n2");

  m.init = parse_term(
      "<m>[ lacI.lacP.lacO.lacZ.lacY.lacA | 30 * polym | 100 * repr ] | 100 * LACT");
  for (const char* e : {"LACT", "GLU", "GAL", "repr", "Rna"}) m.observables.push_back({Element(e)});
  m.run.seed = 1;
  m.run.tmax = 1000;
  m.run.samples = 101;
  return m;
}

}  // namespace tscls
