#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tscls/catalog.hpp"
#include "tscls/semantics.hpp"
#include "tscls/syntax.hpp"

using namespace tscls;

namespace {

std::vector<Transition> fire(const std::vector<RewriteRule>& rules, const char* state) {
  TypeEnv env;
  const Term t = parse_term(state);
  std::set<Element> els;
  collect_elements(t, els);
  for (const auto& r : rules) {
    collect_elements(r.lhs, els);
    collect_elements(r.rhs, els);
  }
  env.fill_defaults(els);
  return transitions(t, {rules, env, {}});
}

const Element a("a"), b("b"), c("c"), d("d"), w("w");

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("state change counts bare copies only") {
    const auto r = state_change_rule(a, b, 0.5);
    auto ts = fire({r}, "<m>[ a | a | a ]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rate == 1.5);
    ts = fire({r}, "<m>[ a | a.a ]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rate == 0.5);
    CHECK(fire({r}, "<m>[ a.a ]").empty());
  }

  TEST_CASE("complexation and decomplexation") {
    auto ts = fire({complexation_rule(a, b, c, 0.25)}, "2 * a | 3 * b");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rate == 6 * 0.25);
    CHECK(ts[0].target == parse_term("a | 2 * b | c"));
    ts = fire({decomplexation_rule(c, a, b, 0.7)}, "c");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rate == 0.7);
  }

  TEST_CASE("R11 is the generic complexation rule") {
    const auto lac = lac_operon_model();
    const auto& r11 = lac.rules[10];
    CHECK(r11.id == "R11");
    CHECK(print_rate(r11.rate) == "(n1 + 1) * (n2 + 1) * 0.005");
  }

  TEST_CASE("osmosis flows towards the lower concentration") {
    OsmosisParams p;
    auto [out, in] = osmosis_rules(w, b, p);
    const auto ts = fire({out, in}, "<m>[ w | 4 * b ]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rule_id == "osmosis_out");
    CHECK(ts[0].rate == doctest::Approx(0.8).epsilon(1e-15));
  }

  TEST_CASE("catalysed osmosis scales by n_c * k_c + 1") {
    OsmosisParams p;
    p.k_c = 3;
    auto plain = osmosis_rules(w, b, p);
    auto cat = osmosis_rules(w, b, p, OsmosisMode::catalysed(c));
    const auto tp = fire({plain.first}, "<c.c.m>[ w | 4 * b ]");
    const auto tc = fire({cat.first}, "<c.c.m>[ w | 4 * b ]");
    REQUIRE(tp.size() == 1);
    REQUIRE(tc.size() == 1);
    CHECK(tc[0].rate == doctest::Approx(7 * tp[0].rate).epsilon(1e-15));
  }

  TEST_CASE("inhibited osmosis divides by n_c * k_c") {
    OsmosisParams p;
    p.k_c = 4;
    auto plain = osmosis_rules(w, b, p);
    auto inh = osmosis_rules(w, b, p, OsmosisMode::inhibited(c));
    const auto tp = fire({plain.first}, "<c.c.m>[ w | 4 * b ]");
    const auto ti = fire({inh.first}, "<c.c.m>[ w | 4 * b ]");
    REQUIRE(ti.size() == 1);
    CHECK(ti[0].rate == doctest::Approx(tp[0].rate / 8).epsilon(1e-15));
    CHECK(fire({inh.first}, "<m>[ w | 4 * b ]")[0].rate == tp[0].rate);
  }

  TEST_CASE("catalyst and inhibitor transformers") {
    const auto base = state_change_rule(a, b, 1.0);
    const auto cat = add_catalyst(base, c, 2.0);
    CHECK(fire({cat}, "a | 3 * c")[0].rate == 7.0);
    CHECK(fire({cat}, "a")[0].rate == 1.0);

    const auto inh = add_inhibitor(base, d, 2.0);
    CHECK(fire({inh}, "a | 3 * d")[0].rate == 1.0 / 6.0);
    CHECK(fire({inh}, "a")[0].rate == 1.0);

    const auto both = add_both(base, c, 2.0, d, 4.0);
    CHECK(fire({both}, "a | c | d")[0].rate == doctest::Approx(3.0 / 4.0));
    CHECK(both.counts.names() == std::vector<std::string>{"n_c", "n_d", "n"});
  }

  TEST_CASE("transformers add a frame variable when the lhs has none") {
    RewriteRule r;
    r.id = "bare";
    r.lhs = parse_pattern("a");
    r.rhs = parse_pattern("b");
    r.rate = parse_rate("1");
    const auto cat = add_catalyst(r, c, 1.0);
    CHECK(print_pattern(cat.lhs) == "a | $X");
    CHECK(print_pattern(cat.rhs) == "b | $X");
    CHECK(fire({cat}, "a | c")[0].rate == 2.0);
    CHECK(fire({r}, "a | c").empty());
  }

  TEST_CASE("fresh count names avoid collisions") {
    auto r = state_change_rule(a, b, 1.0);
    r.counts.of(Variable::term("X")).push_back({TypeName::basic("t_c"), "n_c"});
    const auto cat = add_catalyst(r, c, 1.0);
    const auto names = cat.counts.names();
    CHECK(std::count(names.begin(), names.end(), "n_c") == 1);
    CHECK(std::count(names.begin(), names.end(), "n_c_1") == 1);
  }

  TEST_CASE("the shipped lac operon file is the printed built-in model") {
    std::ifstream in(TSCLS_MODELS "/lac_operon.tscls", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == print_model(lac_operon_model()));
  }

  TEST_CASE("osmosis needs a membrane on the other side") {
    auto [out, in] = osmosis_rules(w, b, OsmosisParams{});
    // Without a membrane in the compartment, the inward rule must not invent one.
    CHECK(fire({out, in}, "w | 4 * b").empty());
    const auto ts = fire({out, in}, "<m> | w | 4 * b");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].rule_id == "osmosis_in");
  }

  TEST_CASE("lac operon model shape") {
    const auto m = lac_operon_model();
    CHECK(m.rules.size() == 15);
    CHECK(model_elements(m).size() == 20);
    CHECK_NOTHROW(validate_model(m));
  }
}
