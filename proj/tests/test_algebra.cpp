#include <catch_amalgamated.hpp>

#include <random>

#include <sugihara/algebra.hpp>
#include <sugihara/term.hpp>

#include "oracles.hpp"

using namespace sugihara;

namespace {

std::set<int> values_of(const FiniteAlgebra& a)
{
    std::set<int> out;
    for (const Label& l : a.labels())
        out.insert(l[0]);
    return out;
}

Elem idx(const SugiharaChain& z, int v) { return z.index(v); }

} // namespace

TEST_CASE("chain carriers", "[chain]")
{
    CHECK(SugiharaChain(6).carrier() == std::vector<int>{-3, -2, -1, 1, 2, 3});
    CHECK(SugiharaChain(7).carrier() == std::vector<int>{-3, -2, -1, 0, 1, 2, 3});
    CHECK_THROWS_AS(SugiharaChain(0), InvalidArgument);
    for (int k = 1; k <= 12; ++k) {
        const SugiharaChain z(k);
        CHECK(z.size() == static_cast<std::size_t>(k));
        CHECK(z.carrier() == oracle::chain(k));
        CHECK(z.algebra().name() == "Z" + std::to_string(k));
    }
}

TEST_CASE("one-element chain", "[chain]")
{
    const SugiharaChain z(1);
    const auto& a = z.algebra();
    REQUIRE(a.size() == 1);
    CHECK(z.value(a.meet(0, 0)) == 0);
    CHECK(z.value(a.join(0, 0)) == 0);
    CHECK(z.value(a.implies(0, 0)) == 0);
    CHECK(z.value(a.neg(0)) == 0);
}

TEST_CASE("implication values", "[chain]")
{
    const SugiharaChain z(5);
    CHECK(z.value(z.algebra().implies(idx(z, 2), idx(z, -1))) == -2);
    for (int k = 1; k <= 11; ++k) {
        const SugiharaChain c(k);
        for (int a : c.carrier())
            for (int b : c.carrier()) {
                const auto& alg = c.algebra();
                CHECK(c.value(alg.implies(c.index(a), c.index(b))) == oracle::imp(a, b));
                CHECK(c.value(alg.meet(c.index(a), c.index(b))) == std::min(a, b));
                CHECK(c.value(alg.join(c.index(a), c.index(b))) == std::max(a, b));
            }
    }
}

TEST_CASE("lattice and involution laws", "[chain][property]")
{
    for (int k = 1; k <= 9; ++k) {
        const SugiharaChain z(k);
        const auto& a = z.algebra();
        const Elem n = static_cast<Elem>(a.size());
        for (Elem x = 0; x < n; ++x) {
            CHECK(a.neg(a.neg(x)) == x);
            for (Elem y = 0; y < n; ++y) {
                CHECK(a.meet(x, y) == a.meet(y, x));
                CHECK(a.join(x, a.meet(x, y)) == x);
                CHECK(a.neg(a.meet(x, y)) == a.join(a.neg(x), a.neg(y)));
                for (Elem w = 0; w < n; ++w)
                    CHECK(a.meet(x, a.join(y, w)) == a.join(a.meet(x, y), a.meet(x, w)));
            }
        }
    }
}

TEST_CASE("modulus and iff", "[term]")
{
    const SugiharaChain z7(7);
    const Term x = var("x");
    CHECK(z7.value(eval_term(modulus(x), {{"x", idx(z7, -3)}}, z7.algebra())) == 3);
    for (int a : z7.carrier())
        CHECK(eval_term(implies(x, x), {{"x", idx(z7, a)}}, z7.algebra())
              == eval_term(modulus(x), {{"x", idx(z7, a)}}, z7.algebra()));
    const SugiharaChain z5(5);
    const Term p = var("p");
    CHECK(z5.value(eval_term(iff(p, p), {{"p", idx(z5, 2)}}, z5.algebra())) == 2);
    CHECK_THROWS_AS(eval_term(p, {}, z5.algebra()), InvalidArgument);
    CHECK_THROWS_AS(eval_term(p, {{"p", 99}}, z5.algebra()), InvalidArgument);
}

TEST_CASE("expanded derived connectives evaluate identically", "[term][property]")
{
    std::mt19937 rng(20240611);
    const SugiharaChain z(7);
    const std::vector<std::string> names{"p", "q", "r"};
    std::function<Term(int)> gen = [&](int depth) -> Term {
        std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0);
        switch (pick(rng)) {
        case 1: return meet(gen(depth - 1), gen(depth - 1));
        case 2: return join(gen(depth - 1), gen(depth - 1));
        case 3: return implies(gen(depth - 1), gen(depth - 1));
        case 4: return neg(gen(depth - 1));
        case 5: return modulus(gen(depth - 1));
        case 6: return iff(gen(depth - 1), gen(depth - 1));
        default: return var(names[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]);
        }
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Term t = gen(4);
        const Term e = expand(t);
        const std::vector<std::string> slots{"p", "q", "r"};
        const CompiledTerm c(t, slots);
        std::vector<Elem> scratch;
        for (Elem a = 0; a < z.size(); ++a)
            for (Elem b = 0; b < z.size(); ++b) {
                const Assignment asg{{"p", a}, {"q", b}, {"r", (a + b) % 7}};
                const Elem want = eval_term(t, asg, z.algebra());
                CHECK(eval_term(e, asg, z.algebra()) == want);
                CHECK(c.eval(z.algebra(), {a, b, (a + b) % 7}, scratch) == want);
            }
    }
}

TEST_CASE("subalgebras match brute force", "[subalgebra]")
{
    CHECK(subalgebras(SugiharaChain(6)).size() == 7);
    const auto one = subalgebras(SugiharaChain(1));
    REQUIRE(one.size() == 1);
    CHECK(values_of(one[0]) == std::set<int>{0});
    for (int k = 1; k <= 10; ++k) {
        std::set<std::set<int>> got;
        for (const auto& s : subalgebras(SugiharaChain(k)))
            got.insert(values_of(s));
        CHECK(got == oracle::subalgebras(k));
    }
}

TEST_CASE("proper subalgebras of Z5 are chains", "[subalgebra]")
{
    for (const auto& s : subalgebras(SugiharaChain(5))) {
        if (s.size() == 5)
            continue;
        const SugiharaChain c(static_cast<int>(s.size()));
        // The order-preserving bijection onto Z_j must be an isomorphism.
        HomMap h(s.size());
        for (Elem e = 0; e < s.size(); ++e)
            h[e] = e;
        CHECK(is_homomorphism(s, c.algebra(), h));
    }
}

TEST_CASE("closure", "[subalgebra]")
{
    auto close = [](int k, std::vector<int> seed) {
        const SugiharaChain z(k);
        std::vector<Elem> s;
        for (int v : seed)
            s.push_back(z.index(v));
        std::set<int> out;
        for (Elem e : closure(z.algebra(), s))
            out.insert(z.value(e));
        return out;
    };
    CHECK(close(9, {2, 3}) == std::set<int>{-3, -2, 2, 3});
    CHECK(close(7, {1}) == oracle::closure({1}));
    CHECK(close(6, SugiharaChain(6).carrier()).size() == 6);
    for (int k = 2; k <= 9; ++k)
        for (int a : oracle::chain(k))
            for (int b : oracle::chain(k))
                CHECK(close(k, {a, b}) == oracle::closure({a, b}));
    const SugiharaChain z(5);
    CHECK_THROWS_AS(generated_subalgebra(z.algebra(), std::vector<Elem>{}), InvalidArgument);
}

TEST_CASE("congruences match brute-force compatible partitions", "[congruence]")
{
    const auto c6 = congruences(SugiharaChain(6));
    REQUIRE(c6.size() == 4);
    CHECK(c6[2].blocks == std::vector<std::vector<int>>{{-3}, {-2, -1, 1, 2}, {3}});
    CHECK(congruences(SugiharaChain(1)).size() == 1);
    for (int k = 1; k <= 7; ++k) {
        std::set<std::vector<std::vector<int>>> got;
        for (const auto& c : congruences(SugiharaChain(k)))
            got.insert(c.blocks);
        CHECK(got == oracle::congruences(k));
    }
}

TEST_CASE("congruence compatibility predicate", "[congruence]")
{
    const SugiharaChain z(5);
    std::vector<int> blocks{0, 1, 1, 1, 2};
    CHECK(is_compatible(z.algebra(), blocks));
    blocks = {0, 0, 1, 2, 2};
    CHECK_FALSE(is_compatible(z.algebra(), blocks));
}

TEST_CASE("homomorphisms match brute force", "[hom]")
{
    const SugiharaChain z4(4), z5(5), z6(6);
    const auto h = enumerate_homomorphisms(z4.algebra(), z6.algebra());
    std::set<std::vector<int>> got;
    for (const auto& m : h) {
        std::vector<int> v;
        for (Elem e : m)
            v.push_back(z6.value(e));
        got.insert(v);
    }
    CHECK(got == std::set<std::vector<int>>{{-3, -2, 2, 3}, {-3, -1, 1, 3}, {-2, -1, 1, 2}});
    CHECK(enumerate_homomorphisms(z6.algebra(), z6.algebra()).size() == 1);
    CHECK(enumerate_homomorphisms(z5.algebra(), z5.algebra()).size() == 4);
    for (int j = 1; j <= 7; ++j)
        for (int k = 1; k <= 7; ++k) {
            const SugiharaChain a(j), b(k);
            std::set<std::vector<int>> mine;
            for (const auto& m : enumerate_homomorphisms(a.algebra(), b.algebra())) {
                CHECK(is_homomorphism(a.algebra(), b.algebra(), m));
                std::vector<int> v;
                for (Elem e : m)
                    v.push_back(b.value(e));
                mine.insert(v);
            }
            const auto ref = oracle::homomorphisms(oracle::chain(j), oracle::chain(k));
            CHECK(mine == std::set<std::vector<int>>(ref.begin(), ref.end()));
        }
}

TEST_CASE("powers", "[power]")
{
    const SugiharaChain z3(3), z2(2), z4(4);
    CHECK(power_algebra(z3, 2).size() == 9);
    const auto p = power_algebra(z2, 1);
    CHECK(p.size() == 2);
    HomMap id{0, 1};
    CHECK(is_homomorphism(p, z2.algebra(), id));
    const auto q = power_algebra(z4, 2);
    CHECK(q.label(q.implies(q.at({1, 2}), q.at({1, -1}))) == Label{1, -2});
    CHECK_THROWS_AS(power_algebra(z4, 0), InvalidArgument);
}

TEST_CASE("lazy power matches coordinatewise evaluation", "[power][property]")
{
    const SugiharaChain z(5);
    const auto big = power_algebra(z, 5);
    REQUIRE_FALSE(big.tabulated());
    std::mt19937 rng(7);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(big.size() - 1));
    for (int i = 0; i < 2000; ++i) {
        const Elem x = pick(rng), y = pick(rng);
        const Label a = big.label(x), b = big.label(y);
        Label m(5), j(5), im(5), ng(5);
        for (std::size_t c = 0; c < 5; ++c) {
            m[c] = std::min(a[c], b[c]);
            j[c] = std::max(a[c], b[c]);
            im[c] = oracle::imp(a[c], b[c]);
            ng[c] = -a[c];
        }
        CHECK(big.label(big.meet(x, y)) == m);
        CHECK(big.label(big.join(x, y)) == j);
        CHECK(big.label(big.implies(x, y)) == im);
        CHECK(big.label(big.neg(x)) == ng);
    }
}

TEST_CASE("tuple algebras must be closed", "[power]")
{
    CHECK_THROWS_AS(FiniteAlgebra::of_integer_tuples("bad", {{1, 2}, {2, 1}}), InvalidArgument);
    const auto ok = FiniteAlgebra::of_integer_tuples("ok", {{1, 2}, {-1, -2}, {1, -2}, {-1, 2}});
    CHECK(ok.size() == 4);
    CHECK(ok.label(0) == Label{-1, -2});
}
