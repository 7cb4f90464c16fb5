#include <doctest.h>

#include "tscls/error.hpp"
#include "tscls/match.hpp"
#include "tscls/syntax.hpp"

using namespace tscls;

namespace {

Term T(const char* s) { return parse_term(s); }
Pattern P(const char* s) { return parse_pattern(s); }

const Term& term_of(const Instantiation& s, const char* name) { return std::get<Term>(s.at(Variable::term(name))); }

}  // namespace

TEST_SUITE("match") {
  TEST_CASE("a term variable takes the rest of the compartment") {
    const auto ms = match_whole(P("a | $X"), T("a | a | c"));
    REQUIRE(ms.size() == 1);
    CHECK(term_of(*ms.begin(), "X") == T("a | c"));
  }

  TEST_CASE("the whole compartment must be covered") {
    CHECK(match_whole(P("a"), T("a | a | c")).empty());
    CHECK(match_whole(P("a | a | c"), T("a | a | c")).size() == 1);
  }

  TEST_CASE("element variables bind exactly one element") {
    const auto ms = match_whole(P("?y | $X"), T("a"));
    REQUIRE(ms.size() == 1);
    CHECK(std::get<Element>(ms.begin()->at(Variable::elem("y"))) == Element("a"));
    CHECK(term_of(*ms.begin(), "X").empty());
    CHECK(match_whole(P("?y"), T("eps")).empty());
  }

  TEST_CASE("a lone sequence variable takes a whole sequence") {
    const auto ms = match_whole(P("~x"), T("a.b"));
    REQUIRE(ms.size() == 1);
    CHECK(std::get<Sequence>(ms.begin()->at(Variable::seq("x"))) == Sequence{Element("a"), Element("b")});
    CHECK(match_whole(P("~x"), T("eps")).size() == 1);
  }

  TEST_CASE("sequence splits") {
    CHECK(match_sequence(parse_pattern("~x.~y").items[0].seq, {Element("a"), Element("b")}).size() == 3);
    CHECK(match_whole(P("~x.b.~y"), T("a.b.c.b")).size() == 2);
    CHECK(match_whole(P("~x.~x"), T("a.b.a.b")).size() == 1);
    CHECK(match_whole(P("~x.~x"), T("a.b.a")).empty());
  }

  TEST_CASE("membranes match under every rotation") {
    const auto ms = match_whole(P("<a.~x>[ $X ]"), T("<b.a.c>[ d ]"));
    REQUIRE(ms.size() == 1);
    CHECK(std::get<Sequence>(ms.begin()->at(Variable::seq("x"))) == Sequence{Element("c"), Element("b")});

    // a.b.a.b has two distinct split points for a leading `a` but one rotation class.
    CHECK(match_whole(P("<a.~x>"), T("<a.b.a.b>")).size() == 1);
    CHECK(match_whole(P("<?y.~x>"), T("<a.b.a.b>")).size() == 2);
  }

  TEST_CASE("repeated term variables split the remainder evenly") {
    CHECK(match_whole(P("$X | $X"), T("2 * a | 2 * b")).size() == 1);
    CHECK(match_whole(P("$X | $X"), T("a | 2 * b")).empty());
    CHECK(match_whole(P("$X | $Y"), T("a | b")).size() == 4);
  }

  TEST_CASE("identical copies yield one instantiation") {
    CHECK(match_whole(P("a | $X"), T("5 * a")).size() == 1);
    CHECK(match_whole(P("<m>[ $X ] | $Y"), T("<m>[a] | <m>[a]")).size() == 1);
    CHECK(match_whole(P("<m>[ $X ] | $Y"), T("<m>[a] | <m>[b]")).size() == 2);
  }

  TEST_CASE("nested patterns") {
    const auto ms = match_whole(P("<~x>[ perm | $X ] | $Y"), T("100 * LACT | <m>[ perm | Rna ]"));
    REQUIRE(ms.size() == 1);
    CHECK(term_of(*ms.begin(), "Y") == T("100 * LACT"));
    CHECK(term_of(*ms.begin(), "X") == T("Rna"));
  }

  TEST_CASE("loop items need an actual membrane") {
    CHECK(match_whole(P("<~x>[ $X ] | $Y"), T("a | b")).empty());
    CHECK(match_whole(P("<~x>[ $X ] | $Y"), T("eps")).empty());
    CHECK(match_whole(P("<~x>[ $X ] | $Y"), T("<m> | a")).size() == 1);
    CHECK(match_whole(P("~x | a"), T("a")).size() == 1);
  }

  TEST_CASE("compartments are listed in pre-order") {
    const Term t = T("a | <m>[ b | <n>[ c ] ] | <p>[ d ]");
    const auto cs = compartments(t);
    REQUIRE(cs.size() == 4);
    CHECK(cs[0].path.str() == "/");
    CHECK(cs[1].path.str() == "/1");
    CHECK(cs[1].content == T("b | <n>[c]"));
    CHECK(cs[2].path.str() == "/1/1");
    CHECK(cs[3].path.str() == "/2");
    CHECK(content_at(t, cs[2].path) == T("c"));
    CHECK_THROWS_AS(content_at(t, CompartmentPath{{7}}), std::out_of_range);
  }

  TEST_CASE("splice replaces one copy") {
    const Term t = T("2 * <m>[ a ]");
    CHECK(splice(t, CompartmentPath{{0}}, T("b")) == T("<m>[a] | <m>[b]"));
    CHECK(splice(t, CompartmentPath{}, T("z")) == T("z"));
  }

  TEST_CASE("substitution") {
    Instantiation s;
    s[Variable::term("X")] = T("a | b");
    s[Variable::seq("x")] = Sequence{Element("c")};
    CHECK(substitute(P("<~x.d>[ $X ] | $X"), s) == T("<c.d>[a | b] | a | b"));
    CHECK_THROWS_AS(substitute(P("$Z"), s), MatchError);
    s[Variable::seq("x")] = Sequence{};
    CHECK_THROWS_AS(substitute(P("<~x>[ $X ]"), s), MatchError);
  }
}
