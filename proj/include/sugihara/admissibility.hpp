#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "duality.hpp"
#include "partial_map.hpp"
#include "term.hpp"
#include "test_space.hpp"

namespace sugihara {

/// B_k as a subalgebra of Z_k^s.
struct AdmissibilityAlgebra {
    int k = 0;
    std::size_t s = 0;
    FiniteAlgebra algebra;

    std::set<Label> carrier_set() const
    {
        auto l = algebra.labels();
        return {l.begin(), l.end()};
    }
};

/// Closed forms: 3*2^n - 4 for k = 2n >= 4, 5*2^n - 4 for k = 2n+1, and 2 for k = 2.
inline std::uint64_t admissibility_algebra_size(int k)
{
    if (k < 2)
        throw InvalidArgument("k must be at least 2");
    const int n = k / 2;
    if (k == 2)
        return 2;
    return (k % 2 ? 5 : 3) * (std::uint64_t{1} << n) - 4;
}

namespace detail {
inline int contract(int a) { return a > 0 ? a - 1 : (a < 0 ? a + 1 : 0); }
} // namespace detail

/// Membership in B_k. With s = n+1 (odd) or n (even) coordinates:
/// a_1 = +-1; a_i != 0 for i <= n when k is odd; j is the length of the longest
/// prefix of modulus-1 entries within the first n; when j < n, |a_{j+1}| = 2 and
/// g(a_{m+1}) = a_m for j < m < n; when k is odd, g(a_{n+1}) = g(a_n).
inline bool is_admissibility_tuple(int k, const Label& a)
{
    const SugiharaChain z(k);
    const std::size_t n = static_cast<std::size_t>(z.n());
    if (a.size() != test_space_arity(k))
        return false;
    for (int v : a)
        if (!z.contains(v))
            return false;
    if (zops::modulus(a[0]) != 1)
        return false;
    if (z.odd())
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] == 0)
                return false;
    std::size_t j = 0;
    while (j < n && zops::modulus(a[j]) == 1)
        ++j;
    if (j < n) {
        if (zops::modulus(a[j]) != 2)
            return false;
        for (std::size_t m = j + 1; m < n; ++m)
            if (detail::contract(a[m]) != a[m - 1] || zops::modulus(a[m]) < 2)
                return false;
    }
    if (z.odd() && detail::contract(a[n]) != detail::contract(a[n - 1]))
        return false;
    return true;
}

inline AdmissibilityAlgebra make_admissibility_algebra(int k, std::vector<Label> carrier, const std::string& how)
{
    AdmissibilityAlgebra b;
    b.k = k;
    b.s = test_space_arity(k);
    try {
        b.algebra = FiniteAlgebra::of_integer_tuples("B" + std::to_string(k), std::move(carrier));
    } catch (const InvalidArgument& e) {
        throw InternalError("B" + std::to_string(k) + " (" + how + ") is not a subalgebra: " + e.what());
    }
    return b;
}

/// Filters Z_k^s by the membership conditions. Coordinates are chosen left to right
/// and prefixes that already violate a condition are abandoned.
inline AdmissibilityAlgebra build_B_direct(int k)
{
    if (k < 2)
        throw InvalidArgument("B_k needs k >= 2, got " + std::to_string(k));
    const SugiharaChain z(k);
    const std::size_t s = test_space_arity(k);
    const std::size_t n = static_cast<std::size_t>(z.n());
    std::vector<Label> out;
    Label cur;
    // run_open: every coordinate so far has modulus 1.
    std::function<void(bool)> dfs = [&](bool run_open) {
        const std::size_t i = cur.size();
        if (i == s) {
            if (!is_admissibility_tuple(k, cur))
                throw InternalError("prefix filter admitted a non-member");
            out.push_back(cur);
            return;
        }
        for (int v : z.carrier()) {
            bool next_open = run_open;
            if (i == 0) {
                if (zops::modulus(v) != 1)
                    continue;
            } else if (i < n) {
                if (v == 0)
                    continue;
                if (run_open) {
                    if (zops::modulus(v) == 2)
                        next_open = false;
                    else if (zops::modulus(v) != 1)
                        continue;
                } else if (detail::contract(v) != cur.back() || zops::modulus(v) < 2) {
                    continue;
                }
            } else if (detail::contract(v) != detail::contract(cur.back())) {
                continue;
            }
            cur.push_back(v);
            dfs(next_open);
            cur.pop_back();
        }
    };
    dfs(true);
    return make_admissibility_algebra(k, std::move(out), "direct");
}

/// B_2 = {+-1}; B_2n = {+-1} x (B_2n-2 u {(2..n), (-2..-n)});
/// B_2n+1 = {(b, b_n) : b in B_2n, b not in {+-1}^n} u ({+-1}^n x {-1,0,1}).
inline AdmissibilityAlgebra build_B_recursive(int k)
{
    if (k < 2)
        throw InvalidArgument("B_k needs k >= 2, got " + std::to_string(k));
    const int n = k / 2;
    std::vector<Label> even{{1}, {-1}};
    for (int m = 2; m <= n; ++m) {
        std::vector<Label> inner = even;
        Label up, down;
        for (int v = 2; v <= m; ++v) {
            up.push_back(v);
            down.push_back(-v);
        }
        inner.push_back(up);
        inner.push_back(down);
        std::vector<Label> next;
        for (int sign : {1, -1})
            for (const Label& b : inner) {
                Label t{sign};
                t.insert(t.end(), b.begin(), b.end());
                next.push_back(std::move(t));
            }
        even = std::move(next);
    }
    if (k % 2 == 0)
        return make_admissibility_algebra(k, std::move(even), "recursive");

    std::vector<Label> odd;
    for (const Label& b : even) {
        const bool all_units = std::all_of(b.begin(), b.end(), [](int v) { return zops::modulus(v) == 1; });
        if (all_units) {
            for (int last : {-1, 0, 1}) {
                Label t = b;
                t.push_back(last);
                odd.push_back(std::move(t));
            }
        } else {
            Label t = b;
            t.push_back(b.back());
            odd.push_back(std::move(t));
        }
    }
    return make_admissibility_algebra(k, std::move(odd), "recursive");
}

struct DualityConstruction {
    FiniteAlgebra e;             // E(Y_k)
    std::vector<Label> t;        // t(x) per element of e, in element order
    AdmissibilityAlgebra image;  // t[E(Y_k)]
    bool isomorphic_to_direct = false;
};

/// E(Y_k) together with t(x) = (x(bold 1), ..., x(bold s)), checked against the direct build.
inline DualityConstruction build_B_via_duality(int k, MorphismSearchOptions opts = {})
{
    const TestSpace ys = build_test_space(k);
    DualityConstruction out;
    out.e = hom_functor_E(ys.structure, k, opts);
    std::vector<Point> bolds;
    for (std::size_t i = 1; i <= ys.s; ++i)
        bolds.push_back(ys.bold(i));
    for (Elem x = 0; x < out.e.size(); ++x) {
        const Label vals = out.e.label(x);
        Label t;
        for (Point p : bolds)
            t.push_back(vals[p]);
        out.t.push_back(std::move(t));
    }
    out.image = make_admissibility_algebra(k, out.t, "duality");
    const auto direct = build_B_direct(k).carrier_set();
    out.isomorphic_to_direct = out.image.algebra.size() == out.e.size() && out.image.carrier_set() == direct;
    return out;
}

/// b_1, ..., b_s. Even k: b_j = (1,...,1,2,...,j). Odd k: b_1 = (1,...,1,0),
/// b_2 = (1,...,1), b_j = (1,...,1,2,...,j-1,j-1) for j >= 3.
inline std::vector<Label> canonical_generators(int k)
{
    if (k < 2)
        throw InvalidArgument("generators need k >= 2, got " + std::to_string(k));
    const std::size_t s = test_space_arity(k);
    std::vector<Label> out;
    for (std::size_t j = 1; j <= s; ++j) {
        Label tail;
        if (k % 2 == 0) {
            for (int v = 2; v <= static_cast<int>(j); ++v)
                tail.push_back(v);
        } else if (j == 1) {
            tail.push_back(0);
        } else if (j >= 3) {
            for (int v = 2; v <= static_cast<int>(j) - 1; ++v)
                tail.push_back(v);
            tail.push_back(static_cast<int>(j) - 1);
        }
        Label b(s - tail.size(), 1);
        b.insert(b.end(), tail.begin(), tail.end());
        out.push_back(std::move(b));
    }
    return out;
}

inline std::string mu_variable(std::size_t i) { return "x" + std::to_string(i); }

namespace detail {
/// Meet over all i-element subsets of the join of the moduli of `xs`.
inline Term order_statistic_term(const std::vector<Term>& xs, std::size_t i)
{
    std::vector<Term> mods;
    for (const Term& x : xs)
        mods.push_back(modulus(x));
    std::optional<Term> acc;
    std::vector<std::size_t> pick(i);
    for (std::size_t c = 0; c < i; ++c)
        pick[c] = c;
    while (true) {
        Term j = mods[pick[0]];
        for (std::size_t c = 1; c < i; ++c)
            j = join(j, mods[pick[c]]);
        acc = acc ? meet(*acc, j) : j;
        std::size_t c = i;
        while (c > 0 && pick[c - 1] == xs.size() - i + c - 1)
            --c;
        if (c == 0)
            break;
        ++pick[c - 1];
        for (std::size_t d = c; d < i; ++d)
            pick[d] = pick[d - 1] + 1;
    }
    return *acc;
}
} // namespace detail

/// G_1, ..., G_s over variables x1..xs with G_j = S_j(T_1, ..., T_s), where S_i is the
/// meet of joins of moduli over i-subsets, T_1 = S_1 and T_i = ~(S_i <-> S_{i-1}) | S_1.
inline std::vector<Term> mu_terms(std::size_t s)
{
    if (s == 0)
        throw InvalidArgument("mu_terms needs s >= 1");
    std::vector<Term> xs;
    for (std::size_t i = 1; i <= s; ++i)
        xs.push_back(var(mu_variable(i)));
    std::vector<Term> S;
    for (std::size_t i = 1; i <= s; ++i)
        S.push_back(detail::order_statistic_term(xs, i));
    std::vector<Term> T{S[0]};
    for (std::size_t i = 2; i <= s; ++i)
        T.push_back(join(neg(iff(S[i - 1], S[i - 2])), S[0]));
    std::vector<Term> G;
    for (std::size_t j = 1; j <= s; ++j)
        G.push_back(detail::order_statistic_term(T, j));
    return G;
}

// ---------------------------------------------------------------------------
// Quasi-equations

using Equation = std::pair<Term, Term>;

struct QuasiEquation {
    std::vector<Equation> premises;
    Equation conclusion;

    std::vector<std::string> variables() const
    {
        std::set<std::string> vs;
        for (const auto& [l, r] : premises) {
            collect_variables(l, vs);
            collect_variables(r, vs);
        }
        collect_variables(conclusion.first, vs);
        collect_variables(conclusion.second, vs);
        return {vs.begin(), vs.end()};
    }
};

struct ValidityReport {
    bool valid = true;
    /// Variable name and assigned element label, in variable order, when invalid.
    std::vector<std::pair<std::string, Label>> countermodel;
    std::string algebra;
};

struct ValidityOptions {
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 1;
};

namespace detail {

/// Depth-first enumeration of assignments in lexicographic order. Premises are tested as
/// soon as their variables are bound, so subtrees that falsify a premise are skipped.
class ValiditySearch {
public:
    ValiditySearch(const QuasiEquation& q, const FiniteAlgebra& a) : a_(a), vars_(q.variables())
    {
        const std::size_t d = vars_.size();
        ready_.resize(d + 1);
        for (const auto& [l, r] : q.premises) {
            CompiledTerm cl(l, vars_), cr(r, vars_);
            const int depth = std::max(cl.max_slot(), cr.max_slot()) + 1;
            ready_[static_cast<std::size_t>(depth)].emplace_back(std::move(cl), std::move(cr));
        }
        conclusion_.emplace_back(CompiledTerm(q.conclusion.first, vars_), CompiledTerm(q.conclusion.second, vars_));
    }

    const std::vector<std::string>& vars() const { return vars_; }

    /// Least countermodel with the first variable fixed to `first`, when there are variables.
    std::optional<std::vector<Elem>> search(std::optional<Elem> first) const
    {
        std::vector<Elem> values(vars_.size(), 0);
        std::vector<Elem> s1, s2;
        if (!holds(0, values, s1, s2))
            return std::nullopt;
        if (vars_.empty())
            return conclusion_ok(values, s1, s2) ? std::nullopt : std::optional(values);
        if (first) {
            values[0] = *first;
            return descend(1, values, s1, s2);
        }
        for (Elem v = 0; v < a_.size(); ++v) {
            values[0] = v;
            if (auto r = descend(1, values, s1, s2))
                return r;
        }
        return std::nullopt;
    }

private:
    using Pair = std::pair<CompiledTerm, CompiledTerm>;

    bool holds(std::size_t depth, const std::vector<Elem>& v, std::vector<Elem>& s1, std::vector<Elem>& s2) const
    {
        for (const auto& [l, r] : ready_[depth])
            if (l.eval(a_, v, s1) != r.eval(a_, v, s2))
                return false;
        return true;
    }

    bool conclusion_ok(const std::vector<Elem>& v, std::vector<Elem>& s1, std::vector<Elem>& s2) const
    {
        const auto& [l, r] = conclusion_.front();
        return l.eval(a_, v, s1) == r.eval(a_, v, s2);
    }

    // `depth` variables are bound; premises ready at `depth` are still unchecked.
    std::optional<std::vector<Elem>> descend(std::size_t depth, std::vector<Elem>& v, std::vector<Elem>& s1,
                                             std::vector<Elem>& s2) const
    {
        if (!holds(depth, v, s1, s2))
            return std::nullopt;
        if (depth == vars_.size()) {
            if (conclusion_ok(v, s1, s2))
                return std::nullopt;
            return v;
        }
        for (Elem x = 0; x < a_.size(); ++x) {
            v[depth] = x;
            if (auto r = descend(depth + 1, v, s1, s2))
                return r;
        }
        return std::nullopt;
    }

    const FiniteAlgebra& a_;
    std::vector<std::string> vars_;
    std::vector<std::vector<Pair>> ready_;
    std::vector<Pair> conclusion_;
};

} // namespace detail

/// Searches assignments in lexicographic order (variables by name, values by carrier
/// order) for one that satisfies every premise and falsifies the conclusion. The
/// reported countermodel is the least one in that order, whatever the thread count.
inline ValidityReport check_validity(const QuasiEquation& q, const FiniteAlgebra& a, ValidityOptions opts = {})
{
    const detail::ValiditySearch search(q, a);
    ValidityReport rep;
    rep.algebra = a.name();
    std::optional<std::vector<Elem>> found;

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    if (search.vars().empty() || threads <= 1 || a.size() < 2) {
        found = search.search(std::nullopt);
    } else {
        threads = std::min<unsigned>(threads, static_cast<unsigned>(a.size()));
        std::vector<std::optional<std::vector<Elem>>> per_value(a.size());
        std::atomic<Elem> next{0};
        std::atomic<Elem> best{std::numeric_limits<Elem>::max()};
        auto worker = [&] {
            for (Elem v = next++; v < a.size(); v = next++) {
                if (v > best.load())
                    break;
                per_value[v] = search.search(v);
                if (per_value[v]) {
                    Elem cur = best.load();
                    while (v < cur && !best.compare_exchange_weak(cur, v)) {
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
        if (best.load() != std::numeric_limits<Elem>::max())
            found = per_value[best.load()];
    }

    if (found) {
        rep.valid = false;
        for (std::size_t i = 0; i < search.vars().size(); ++i)
            rep.countermodel.emplace_back(search.vars()[i], a.label((*found)[i]));
    }
    return rep;
}

enum class Mode { admissible, derivable };

/// Admissibility is validity on B_k; derivability is validity on Z_k.
inline ValidityReport decide(const QuasiEquation& q, int k, Mode mode, ValidityOptions opts = {})
{
    if (k < 2)
        throw InvalidArgument("k must be at least 2, got " + std::to_string(k));
    if (mode == Mode::admissible)
        return check_validity(q, build_B_direct(k).algebra, opts);
    return check_validity(q, SugiharaChain(k).algebra(), opts);
}

} // namespace sugihara
