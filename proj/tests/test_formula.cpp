#include <catch_amalgamated.hpp>

#include <random>

#include <sugihara/formula.hpp>

using namespace sugihara;

namespace {

const Term p = var("p"), q = var("q"), r = var("r");

Term random_term(std::mt19937& rng, int depth)
{
    static const std::vector<std::string> names{"p", "q", "r", "x1", "long_name2"};
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0);
    switch (pick(rng)) {
    case 1: return meet(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 2: return join(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 3: return implies(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 4: return neg(random_term(rng, depth - 1));
    case 5: return modulus(random_term(rng, depth - 1));
    case 6: return iff(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: return var(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    }
}

} // namespace

TEST_CASE("parser examples", "[parse]")
{
    CHECK(parse_formula("p -> (q -> r)") == implies(p, implies(q, r)));
    CHECK(parse_formula("p -> q -> r") == implies(p, implies(q, r)));
    CHECK(parse_formula("~abs(p) | q") == join(neg(modulus(p)), q));
    CHECK(parse_formula("p <-> ~p") == iff(p, neg(p)));
    CHECK(parse_formula("p <-> q <-> r") == iff(iff(p, q), r));
    CHECK(parse_formula("p & q | r -> p") == implies(join(meet(p, q), r), p));
    CHECK(parse_formula("~~p") == neg(neg(p)));
    CHECK(parse_formula("abs (p & q)") == modulus(meet(p, q)));
}

TEST_CASE("unicode syntax", "[parse]")
{
    CHECK(parse_formula("\xC2\xAC|p| \xE2\x88\xA8 q") == join(neg(modulus(p)), q));
    CHECK(parse_formula("p \xE2\x86\x92 q \xE2\x86\x94 r") == iff(implies(p, q), r));
    CHECK(parse_formula("|p|", Syntax::unicode) == modulus(p));
    const Rule rule = parse_rule("p, \xC2\xAC" "p \xE2\x88\xA8 q \xE2\x8A\xA2 q");
    CHECK(rule.premises.size() == 2);
    CHECK(rule.premises[1] == join(neg(p), q));
}

TEST_CASE("syntax errors carry positions", "[parse]")
{
    auto position = [](const std::string& text) {
        try {
            parse_formula(text);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(std::size_t{0}, std::size_t{0});
    };
    CHECK(position("p & ") == std::make_pair(std::size_t{1}, std::size_t{5}));
    CHECK(position("(p | q") == std::make_pair(std::size_t{1}, std::size_t{7}));
    CHECK(position("p $ q") == std::make_pair(std::size_t{1}, std::size_t{3}));
    CHECK(position("|p|") == std::make_pair(std::size_t{1}, std::size_t{1}));
    CHECK(position("\xC2\xAC" "p \xE2\x88\xA7 ?") == std::make_pair(std::size_t{1}, std::size_t{6}));
    CHECK_THROWS_AS(parse_formula("P"), ParseError);
    CHECK_THROWS_AS(parse_rule("p |- q |- r"), ParseError);
}

TEST_CASE("rule files", "[parse]")
{
    const auto rules = parse_rule_text("# header\n\np |- q   # trailing\n  |- p\nq, r |- p & q\n");
    REQUIRE(rules.size() == 3);
    CHECK(rules[0].line == 3);
    CHECK(rules[0].text == "p |- q");
    CHECK(rules[1].premises.empty());
    CHECK(rules[1].line == 4);
    CHECK(rules[2].premises.size() == 2);
    try {
        parse_rule_text("p |- q\np |- (q\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("rule translation", "[translate]")
{
    const auto none = rule_to_quasiequation(parse_rule("|- p"));
    CHECK(none.premises.empty());
    CHECK(none.conclusion.first == p);
    CHECK(none.conclusion.second == implies(p, p));

    const auto one = rule_to_quasiequation(parse_rule("p |- q"));
    REQUIRE(one.premises.size() == 1);
    CHECK(one.premises[0] == Equation{p, implies(p, p)});
    CHECK(one.conclusion == Equation{q, implies(q, q)});

    const auto two = rule_to_quasiequation(parse_rule("p, ~p | q |- q"));
    REQUIRE(two.premises.size() == 2);
    const Term d = join(neg(p), q);
    CHECK(two.premises[1] == Equation{d, implies(d, d)});
}

TEST_CASE("printing", "[print]")
{
    CHECK(to_string(implies(implies(p, q), r)) == "(p -> q) -> r");
    CHECK(to_string(implies(p, implies(q, r))) == "p -> q -> r");
    CHECK(to_string(neg(modulus(join(p, q)))) == "~abs(p | q)");
    CHECK(to_string(meet(join(p, q), r)) == "(p | q) & r");
    CHECK(to_string(iff(p, iff(q, r))) == "p <-> (q <-> r)");
    CHECK(to_string(join(neg(modulus(p)), q), {true}) == "\xC2\xAC|p| \xE2\x88\xA8 q");
    CHECK(to_string(parse_rule("p, q |- r")) == "p, q |- r");
    CHECK(to_string(parse_rule("|- r")) == "|- r");
}

TEST_CASE("print and parse round trip", "[print][property]")
{
    std::mt19937 rng(424242);
    for (int i = 0; i < 2000; ++i) {
        const Term t = random_term(rng, 5);
        const std::string ascii = to_string(t);
        INFO(ascii);
        CHECK(parse_formula(ascii) == t);
        CHECK(parse_formula(to_string(t, {true}), Syntax::unicode) == t);
        CHECK(parse_formula(ascii, Syntax::ascii) == t);
    }
}

TEST_CASE("benchmark rules", "[parse]")
{
    const auto rules = benchmark_rules();
    REQUIRE(rules.size() == 5);
    CHECK(rules[0].premises[0] == iff(p, neg(p)));
    CHECK(rules[4].premises[0] == join(neg(modulus(p)), q));
    CHECK(rules[2].premises[1] == implies(implies(p, modulus(q)), implies(p, q)));
}
