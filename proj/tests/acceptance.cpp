// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "support/random_terms.hpp"
#include "tscls/catalog.hpp"
#include "tscls/engine.hpp"
#include "tscls/match.hpp"
#include "tscls/semantics.hpp"
#include "tscls/syntax.hpp"
#include "tscls/trace_io.hpp"

using namespace tscls;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct Setup {
  ModelFile model;
  TypeEnv env;
  explicit Setup(ModelFile m) : model(std::move(m)), env(model_type_env(model)) {}
  RuleSet rules() const { return {model.rules, env, model.constants, model.typing}; }
};

// The inhibited state change a -> b with k = k' = 1.
Setup inhibited_state_change() {
  return Setup(parse_model(R"(model inhibited
const k = 1
const kp = 1
rule inh {
  lhs: a | $X
  rhs: b | $X
  count $X { t_a -> n1, t_c -> n2 }
  rate: (n1 + 1) * k / (if n2 == 0 then 1 else n2 * kp)
}
init: a | a | c
)"));
}

// Follows the only enabled transition until none is left; returns the rates.
std::vector<double> chain(const Setup& s, Term state) {
  std::vector<double> rates;
  while (true) {
    const auto ts = transitions(state, s.rules());
    if (ts.empty()) return rates;
    expect(ts.size() == 1, "more than one transition from " + print_term(state));
    rates.push_back(ts[0].rate);
    state = ts[0].target;
  }
}

void criterion_1() {
  const Setup s = inhibited_state_change();
  auto r = chain(s, parse_term("a | a | c"));
  expect(r == std::vector<double>{2.0, 1.0}, "a|a|c chain");
  r = chain(s, parse_term("<b.c.c>[ a | a | a | c ]"));
  expect(r == std::vector<double>{3.0, 2.0, 1.0}, "<b.c.c>[a|a|a|c] chain");
}

void criterion_2() {
  const Setup s = inhibited_state_change();
  const auto ts = transitions(parse_term("a | a | c"), s.rules());
  expect(ts.size() == 1, "exactly one transition");
  expect(ts[0].target == parse_term("a | b | c"), "target a|b|c");
  expect(ts[0].rate == 2.0, "rate is " + format_real(ts[0].rate) + ", expected 2");
}

void criterion_3() {
  const Setup s(lac_operon_model());
  const std::string operon = "lacI.lacP.lacO.lacZ.lacY.lacA";
  const std::vector<std::pair<std::string, double>> steps{
      {"R3", 3.0}, {"R5", 20.0}, {"R6", 0.1}, {"R13", 0.1}, {"R14", 0.1}, {"R15", 0.001}};
  const std::vector<std::string> states{
      "100 * LACT | <m>[ lacI.PP.lacO.lacZ.lacY.lacA | 29 * polym | 100 * repr ]",
      "100 * LACT | <m>[ " + operon + " | 30 * polym | 100 * repr | Rna ]",
      "100 * LACT | <m>[ " + operon + " | 30 * polym | 100 * repr | Rna | betagal | perm | transac ]",
      "100 * LACT | <perm.m>[ " + operon + " | 30 * polym | 100 * repr | Rna | betagal | transac ]",
      "99 * LACT | <perm.m>[ " + operon + " | 30 * polym | 100 * repr | Rna | betagal | transac | LACT ]",
      "99 * LACT | <perm.m>[ " + operon + " | 30 * polym | 100 * repr | Rna | betagal | transac | GLU | GAL ]"};
  Term state = s.model.init;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Term want = parse_term(states[i]);
    const Transition* hit = nullptr;
    const auto ts = transitions(state, s.rules());
    for (const auto& t : ts) {
      if (t.rule_id == steps[i].first && congruent(t.target, want)) hit = &t;
    }
    expect(hit != nullptr, "no " + steps[i].first + " transition to " + states[i]);
    expect(hit->rate == steps[i].second,
           steps[i].first + " rate " + format_real(hit->rate) + ", expected " + format_real(steps[i].second));
    state = hit->target;
  }
}

void criterion_4() {
  const Setup s(lac_operon_model());
  const auto ts = transitions(s.model.init, s.rules());
  std::vector<std::pair<std::string, double>> got;
  for (const auto& t : ts) got.emplace_back(t.rule_id, t.rate);
  const std::vector<std::pair<std::string, double>> want{{"R1", 0.02}, {"R3", 3.0}, {"R7", 100.0}};
  expect(got == want, "initial transition set differs");
}

bool same_sets(const std::vector<Transition>& a, const std::vector<Transition>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_transition(a[i], b[i])) return false;
  }
  return true;
}

TypeEnv alphabet_env() {
  TypeEnv env;
  env.fill_defaults({testing::alphabet().begin(), testing::alphabet().end()});
  return env;
}

void criterion_5() {
  testing::Rng rng(2024);
  int matched = 0;
  for (int i = 0; i < 500; ++i) {
    const Term t = testing::random_term(rng, 2, 5);
    testing::VarPool vars;
    const Pattern p = testing::abstract_term(rng, t, vars);
    const auto fast = match_whole(p, t);
    const auto slow = oracle::brute_force_matches(p, t);
    expect(fast == slow, "match sets differ for " + print_pattern(p) + " against " + print_term(t));
    matched += !slow.empty();
  }
  expect(matched >= 150, "too few matching instances (" + std::to_string(matched) + ")");

  const TypeEnv env = alphabet_env();
  std::size_t fired = 0;
  for (int i = 0; i < 200; ++i) {
    const Term state = testing::random_term(rng, 2, 5);
    std::vector<RewriteRule> rules;
    for (int r = 0; r < 3; ++r) {
      // Shape some rules after pieces of the state so that they apply.
      const Term shape = testing::chance(rng, 0.5) ? state : testing::random_term(rng, 1, 3);
      rules.push_back(testing::random_rule(rng, shape, "r" + std::to_string(r)));
    }
    const RuleSet rs{rules, env, {}, testing::chance(rng, 0.5) ? TypingMode::Positional : TypingMode::Literal};
    const auto fast = transitions(state, rs);
    const auto slow = oracle::brute_force_transitions(state, rs);
    expect(same_sets(fast, slow), "transition sets differ for " + print_term(state));
    fired += fast.size();
  }
  expect(fired >= 100, "too few transitions overall (" + std::to_string(fired) + ")");
}

void criterion_6() {
  testing::Rng rng(77);
  const TypeEnv env = alphabet_env();
  for (int i = 0; i < 500; ++i) {
    const Term t = testing::random_term(rng, 2, 5);
    std::vector<RewriteRule> rules;
    for (int r = 0; r < 3; ++r) rules.push_back(testing::random_rule(rng, t, "r" + std::to_string(r)));
    const RuleSet rs{rules, env, {}};
    const std::string text = testing::shuffled_text(rng, t);
    const Term variant = parse_term(text);
    expect(variant == t, "shuffled syntax is not congruent: " + text);
    expect(same_sets(transitions(t, rs), transitions(variant, rs)), "transition sets differ for " + text);
  }
}

void criterion_7() {
  const Setup single(parse_model("model one\nrule r {\n  lhs: a\n  rhs: b\n  rate: 2\n}\ninit: a\n"));
  Pcg32 rng(7);
  const Term a = parse_term("a");
  const int n = 10000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    auto st = step(a, single.rules(), rng);
    expect(st.has_value(), "no step");
    sum += st->dt;
  }
  const double mean = sum / n;
  expect(std::abs(mean - 0.5) <= 3 * 0.5 / 100, "mean dt " + format_real(mean));

  const Setup pair(parse_model(R"(model two
rule slow {
  lhs: a | $X
  rhs: c | $X
  rate: 1
}
rule fast {
  lhs: b | $X
  rhs: c | $X
  rate: 3
}
init: a | b
)"));
  const Term ab = parse_term("a | b");
  int slow = 0;
  for (int i = 0; i < n; ++i) {
    auto st = step(ab, pair.rules(), rng);
    expect(st.has_value(), "no step");
    slow += st->chosen.rule_id == "slow";
  }
  const double p = static_cast<double>(slow) / n;
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  expect(std::abs(p - 0.25) <= 3 * sigma, "slow frequency " + format_real(p));
}

void criterion_8() {
  ModelFile m = lac_operon_model();
  m.observables.push_back({Element("RLACT")});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.tmax = 1000;
    cfg.samples = 101;
    const Trace t = simulate(m, cfg);
    const std::string tag = "seed " + std::to_string(seed);
    std::uint64_t last_glu = 0;
    for (const auto& s : t.samples) {
      const auto lact = s.values[0].total, glu = s.values[1].total, gal = s.values[2].total,
                 rlact = s.values[5].total;
      expect(lact + rlact + glu == 100, tag + ": LACT + RLACT + GLU != 100 at t=" + format_real(s.time));
      expect(glu == gal, tag + ": GLU != GAL at t=" + format_real(s.time));
      expect(glu >= last_glu, tag + ": GLU decreased at t=" + format_real(s.time));
      last_glu = glu;
    }
    expect(t.samples.size() == 101, tag + ": sample count");
  }
}

void criterion_9() {
  const ModelFile m = lac_operon_model();
  SimConfig cfg = m.run.apply({});
  cfg.seed = 42;
  std::ostringstream a, b;
  write_csv(a, simulate(m, cfg));
  write_csv(b, simulate(m, cfg));
  expect(a.str() == b.str(), "CSV output differs");
  expect(a.str().size() > 100, "suspiciously short trace");
}

void criterion_10() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> param(0.1, 10.0);
  std::uniform_int_distribution<std::uint64_t> count(0, 50);
  const Element a("w"), b("s"), c("aq");
  const std::vector<std::string> names{"n1", "n2", "n3", "n4"};

  for (int i = 0; i < 1000; ++i) {
    OsmosisParams p{param(rng), param(rng), param(rng), param(rng), param(rng), param(rng)};
    for (const auto& mode : {OsmosisMode::plain(), OsmosisMode::catalysed(c), OsmosisMode::inhibited(c)}) {
      const auto [out, in] = osmosis_rules(a, b, p, mode);
      CountValues n;
      for (const auto& nm : names) n[nm] = count(rng);
      n["nc"] = count(rng) % 4;
      const double f = evaluate(out.rate, n, {});
      const double g = evaluate(in.rate, n, {});
      const double scale = std::max({std::abs(f), std::abs(g), 1e-300});
      expect(std::abs(f + g) <= 1e-12 * scale, "phi(out) != -phi(in) at config " + std::to_string(i));
    }
  }

  // Equal effective concentrations: the matched copy of a is one of the
  // (n + 1) on its side, so mirrored counts balance the rule exactly.
  std::uniform_int_distribution<std::uint64_t> small(1, 6);
  for (int i = 0; i < 200; ++i) {
    OsmosisParams p{param(rng), param(rng), param(rng), param(rng), param(rng), param(rng)};
    const auto [out, in] = osmosis_rules(a, b, p);
    const std::vector<RewriteRule> rules{out, in};
    TypeEnv env;
    env.fill_defaults({a, b, c, Element("m")});
    const RuleSet rs{rules, env, {}};
    const auto na = small(rng), nb = small(rng);
    const std::string inside = std::to_string(na + 1) + " * w | " + std::to_string(nb) + " * s";
    const std::string outside = std::to_string(na) + " * w | " + std::to_string(nb) + " * s";
    const auto out_state = transitions(parse_term("<m>[ " + inside + " ] | " + outside), rs);
    for (const auto& t : out_state) expect(t.rule_id != "osmosis_out", "outward flow at equal concentrations");
    const auto in_state = transitions(parse_term("<m>[ " + outside + " ] | " + inside), rs);
    for (const auto& t : in_state) expect(t.rule_id != "osmosis_in", "inward flow at equal concentrations");

    CountValues n{{"n1", na}, {"n2", nb}, {"n3", na}, {"n4", nb}};
    expect(evaluate(out.rate, n, {}) == 0.0 && evaluate(in.rate, n, {}) == 0.0, "nonzero rate at balance");
  }

  // Catalysed with no catalyst on the membrane is plain osmosis.
  for (int i = 0; i < 200; ++i) {
    OsmosisParams p{param(rng), param(rng), param(rng), param(rng), param(rng), param(rng)};
    const auto plain = osmosis_rules(a, b, p);
    const auto cat = osmosis_rules(a, b, p, OsmosisMode::catalysed(c));
    const std::string state = "<m.m>[ " + std::to_string(small(rng)) + " * w | " + std::to_string(small(rng)) +
                              " * s ] | " + std::to_string(small(rng)) + " * w | " + std::to_string(small(rng)) + " * s";
    TypeEnv env;
    env.fill_defaults({a, b, c, Element("m")});
    const std::vector<RewriteRule> pr{plain.first, plain.second}, cr{cat.first, cat.second};
    const auto tp = transitions(parse_term(state), {pr, env, {}});
    const auto tc = transitions(parse_term(state), {cr, env, {}});
    expect(tp.size() == tc.size(), "different transition counts for " + state);
    for (std::size_t k = 0; k < tp.size(); ++k) {
      expect(tp[k].target == tc[k].target, "different targets for " + state);
      expect(std::abs(tp[k].rate - tc[k].rate) <= 1e-12 * std::abs(tp[k].rate), "different rates for " + state);
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"1 inhibited state change chains 2,1 and 3,2,1", criterion_1},
      {"2 whole-compartment context rate 2.0", criterion_2},
      {"3 lac operon worked trace", criterion_3},
      {"4 lac operon initial transitions", criterion_4},
      {"5 oracle equivalence (500 matches, 200 transition sets)", criterion_5},
      {"6 congruence invariance (500 terms)", criterion_6},
      {"7 Gillespie waiting time and selection statistics", criterion_7},
      {"8 lac operon conservation over 10 seeds", criterion_8},
      {"9 deterministic CSV for seed 42", criterion_9},
      {"10 osmosis antisymmetry, balance and catalyst neutrality", criterion_10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << name << "  (" << buf << ")";
    if (!ok) std::cout << ": " << detail;
    std::cout << '\n';
    failed += !ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
