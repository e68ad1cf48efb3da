#include <catch_amalgamated.hpp>

#include <sugihara/duality.hpp>
#include <sugihara/formula.hpp>
#include <sugihara/io.hpp>

using namespace sugihara;

TEST_CASE("labels", "[io]")
{
    CHECK(format_label({-3}) == "-3");
    CHECK(format_label({1, -2, 0}) == "(1,-2,0)");
    CHECK(label_from_json(label_json({4})) == Label{4});
    CHECK(label_from_json(label_json({1, 2})) == Label{1, 2});
    CHECK_THROWS_AS(label_from_json(Json("x")), InvalidArgument);
    CHECK_THROWS_AS(label_from_json(Json::array()), InvalidArgument);
}

TEST_CASE("algebra JSON round trip", "[io]")
{
    std::vector<FiniteAlgebra> algebras{SugiharaChain(5).algebra(), SugiharaChain(6).algebra(),
                                        build_B_direct(5).algebra, power_algebra(SugiharaChain(3), 2)};
    for (const auto& a : algebras) {
        const std::string text = to_json(a).dump();
        const FiniteAlgebra b = algebra_from_json(Json::parse(text));
        CHECK(b.name() == a.name());
        REQUIRE(b.size() == a.size());
        CHECK(b.labels() == a.labels());
        for (Elem x = 0; x < a.size(); ++x) {
            CHECK(b.neg(x) == a.neg(x));
            for (Elem y = 0; y < a.size(); ++y) {
                CHECK(b.meet(x, y) == a.meet(x, y));
                CHECK(b.join(x, y) == a.join(x, y));
                CHECK(b.implies(x, y) == a.implies(x, y));
            }
        }
        CHECK(check_evaluation_iso(b, 5).ok == check_evaluation_iso(a, 5).ok);
    }
}

TEST_CASE("malformed algebra documents", "[io]")
{
    CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"carrier":[1]})")), InvalidArgument);
    CHECK_THROWS_AS(algebra_from_json(Json::parse(
                        R"({"carrier":[1,2],"meet":[[0,0]],"join":[[0,1],[1,1]],"neg":[1,0],"implies":[[1,1],[0,1]]})")),
                    InvalidArgument);
    CHECK_THROWS_AS(algebra_from_json(Json::parse(
                        R"({"carrier":[1],"meet":[[5]],"join":[[0]],"neg":[0],"implies":[[0]]})")),
                    InvalidArgument);
}

TEST_CASE("structure rendering", "[io]")
{
    const Structure d = dual_space(SugiharaChain(4).algebra(), 6);
    const std::string text = render(d, {true});
    CHECK(text.find("points 3\n") != std::string::npos);
    CHECK(text.find("~2: {e1, e2} {e3}\n") != std::string::npos);
    const Json j = to_json(d);
    CHECK(j["points"].size() == 3);
    CHECK(j["operations"]["g"]["action"] == Json::parse("[[0,2]]"));
    CHECK(j["relations"]["~2"] == Json::parse("[[0,1],[2]]"));
    const std::string plain = render(alter_ego_structure(alter_ego(3)));
    CHECK(plain.find("constant 0: 0\n") != std::string::npos);
}

TEST_CASE("validity reports", "[io]")
{
    const auto q = rule_to_quasiequation(parse_rule("p, ~p | q |- q"));
    const auto fails = check_validity(q, SugiharaChain(7).algebra());
    REQUIRE_FALSE(fails.valid);
    CHECK(render(fails) == "fails on Z7\n  p = 0\n  q = -3\n");
    CHECK(to_json(fails) == Json::parse(R"({"verdict":"fails","algebra":"Z7","countermodel":{"p":0,"q":-3}})"));
    const auto holds = check_validity(q, SugiharaChain(6).algebra());
    CHECK(render(holds) == "valid on Z6\n");
    CHECK(to_json(holds) == Json::parse(R"({"verdict":"valid","algebra":"Z6"})"));
}
