#pragma once

#include <algorithm>
#include <climits>
#include <compare>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"

namespace sugihara {

/// A partial self-map of the carrier of Z_k, stored as one optional image per
/// carrier position. The map with empty domain is a legitimate value.
class PartialMap {
public:
    static constexpr int kUndefined = INT_MIN;

    PartialMap() = default;

    /// The empty map on Z_k.
    explicit PartialMap(const SugiharaChain& z) : k_(z.k()), img_(z.size(), kUndefined) {}

    static PartialMap identity(const SugiharaChain& z)
    {
        PartialMap m(z);
        for (std::size_t i = 0; i < z.size(); ++i)
            m.img_[i] = z.carrier()[i];
        return m;
    }

    int k() const { return k_; }
    std::vector<int> carrier() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < img_.size(); ++i)
            out.push_back(value_at(i));
        return out;
    }

    bool defined(int a) const { return img_[pos(a)] != kUndefined; }
    int operator()(int a) const
    {
        const int v = img_[pos(a)];
        if (v == kUndefined)
            throw InvalidArgument(std::to_string(a) + " is outside the domain");
        return v;
    }
    void set(int a, int b)
    {
        if (!in_carrier(b))
            throw InvalidArgument(std::to_string(b) + " is not an element of Z" + std::to_string(k_));
        img_[pos(a)] = b;
    }
    void erase(int a) { img_[pos(a)] = kUndefined; }

    std::vector<int> domain() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != kUndefined)
                out.push_back(value_at(i));
        return out;
    }
    std::vector<int> image() const
    {
        std::vector<int> out;
        for (int v : img_)
            if (v != kUndefined)
                out.push_back(v);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    bool empty() const
    {
        return std::all_of(img_.begin(), img_.end(), [](int v) { return v == kUndefined; });
    }
    bool total() const
    {
        return std::none_of(img_.begin(), img_.end(), [](int v) { return v == kUndefined; });
    }
    bool injective() const
    {
        auto d = domain();
        return image().size() == d.size();
    }

    /// Raw images by carrier position, kUndefined outside the domain.
    const std::vector<int>& images() const { return img_; }

    friend bool operator==(const PartialMap& a, const PartialMap& b) { return a.k_ == b.k_ && a.img_ == b.img_; }
    friend std::strong_ordering operator<=>(const PartialMap& a, const PartialMap& b)
    {
        if (auto c = a.k_ <=> b.k_; c != 0)
            return c;
        return a.img_ <=> b.img_;
    }

private:
    bool in_carrier(int a) const
    {
        const int n = k_ / 2;
        return a >= -n && a <= n && (a != 0 || k_ % 2 == 1);
    }
    int value_at(std::size_t i) const
    {
        const int n = k_ / 2;
        const int v = static_cast<int>(i) - n;
        return (k_ % 2 == 0 && v >= 0) ? v + 1 : v;
    }
    std::size_t pos(int a) const
    {
        if (!in_carrier(a))
            throw InvalidArgument(std::to_string(a) + " is not an element of Z" + std::to_string(k_));
        const int n = k_ / 2;
        return static_cast<std::size_t>((k_ % 2 == 0 && a > 0) ? a + n - 1 : a + n);
    }

    int k_ = 0;
    std::vector<int> img_;
};

/// `{a->b, ...}` over the domain in ascending order; the empty map prints as `{}`.
inline std::string to_string(const PartialMap& f)
{
    std::string out = "{";
    bool first = true;
    for (int a : f.domain()) {
        if (!first)
            out += ", ";
        first = false;
        out += std::to_string(a) + "->" + std::to_string(f(a));
    }
    return out + "}";
}

/// f after g: defined at x when g(x) is defined and lies in dom f.
inline PartialMap compose(const PartialMap& f, const PartialMap& g)
{
    if (f.k() != g.k())
        throw InvalidArgument("cannot compose maps on Z" + std::to_string(f.k()) + " and Z" + std::to_string(g.k()));
    PartialMap r = g;
    for (int x : g.domain()) {
        const int y = g(x);
        if (f.defined(y))
            r.set(x, f(y));
        else
            r.erase(x);
    }
    return r;
}

/// Inverse of an injective map.
inline PartialMap inverse(const PartialMap& f)
{
    if (!f.injective())
        throw InvalidArgument("map is not injective");
    PartialMap r = f;
    for (int x : f.carrier())
        r.erase(x);
    for (int x : f.domain())
        r.set(f(x), x);
    return r;
}

/// Domain is a nonempty subalgebra and the map preserves the operations on it.
inline bool is_partial_endomorphism(const SugiharaChain& z, const PartialMap& f)
{
    const auto dom = f.domain();
    if (dom.empty())
        return false;
    for (int a : dom) {
        if (!f.defined(-a) || f(-a) != -f(a))
            return false;
        for (int b : dom) {
            const int m = zops::meet(a, b), j = zops::join(a, b), i = zops::implies(a, b);
            if (!f.defined(m) || !f.defined(j) || !f.defined(i))
                return false;
            if (f(m) != zops::meet(f(a), f(b)) || f(j) != zops::join(f(a), f(b))
                || f(i) != zops::implies(f(a), f(b)))
                return false;
        }
    }
    (void)z;
    return true;
}

struct NamedMap {
    std::string name;
    PartialMap map;
};

/// f_i for 2 <= i <= n: i-1 -> i and -(i-1) -> -i, identity elsewhere, undefined at +-i.
inline PartialMap shift_map(const SugiharaChain& z, int i)
{
    if (i < 2 || i > z.n())
        throw InvalidArgument("shift index out of range");
    PartialMap f = PartialMap::identity(z);
    f.erase(i);
    f.erase(-i);
    f.set(i - 1, i);
    f.set(-(i - 1), -i);
    return f;
}

/// g: moves every element one step toward the middle. Even k: undefined at +-1. Odd k: total, g(0) = 0.
inline PartialMap contraction_map(const SugiharaChain& z)
{
    PartialMap g(z);
    for (int a : z.carrier()) {
        if (a > 1 || (a == 1 && z.odd()))
            g.set(a, a - 1);
        else if (a < -1 || (a == -1 && z.odd()))
            g.set(a, a + 1);
        else if (a == 0)
            g.set(0, 0);
    }
    return g;
}

/// The generating set of PEZ(k): f_2..f_n and g, with f_0 and f_1 added for odd k.
/// For k = 2 the list is empty: the only partial endomorphism is the identity.
inline std::vector<NamedMap> standard_generators(const SugiharaChain& z)
{
    if (z.k() < 2)
        throw InvalidArgument("generators need k >= 2, got " + std::to_string(z.k()));
    std::vector<NamedMap> out;
    if (z.odd()) {
        PartialMap f0 = PartialMap::identity(z);
        f0.erase(0);
        out.push_back({"f0", f0});
        PartialMap f1 = PartialMap::identity(z);
        f1.erase(1);
        f1.erase(-1);
        out.push_back({"f1", f1});
    }
    for (int i = 2; i <= z.n(); ++i)
        out.push_back({"f" + std::to_string(i), shift_map(z, i)});
    PartialMap g = contraction_map(z);
    if (!g.empty())
        out.push_back({"g", g});
    return out;
}

struct PEMonoid {
    std::set<PartialMap> elements;
    bool closed = false;
};

/// Least set containing the identity, the empty map and `gens`, closed under composition.
inline PEMonoid monoid_closure(const SugiharaChain& z, const std::vector<PartialMap>& gens)
{
    for (const auto& g : gens)
        if (g.k() != z.k())
            throw InvalidArgument("generator on a different carrier");
    PEMonoid m;
    std::deque<PartialMap> work;
    auto visit = [&](PartialMap p) {
        if (m.elements.insert(p).second)
            work.push_back(std::move(p));
    };
    visit(PartialMap::identity(z));
    while (!work.empty()) {
        PartialMap x = std::move(work.front());
        work.pop_front();
        for (const auto& g : gens)
            visit(compose(g, x));
    }
    m.elements.insert(PartialMap(z));
    m.closed = true;
    return m;
}

inline PEMonoid monoid_closure(const SugiharaChain& z, const std::vector<NamedMap>& gens)
{
    std::vector<PartialMap> maps;
    for (const auto& g : gens)
        maps.push_back(g.map);
    return monoid_closure(z, maps);
}

inline constexpr int kBruteForceChainBound = 9;

/// Every homomorphism from a subalgebra of Z_k into Z_k, plus the empty map.
inline std::set<PartialMap> partial_endos_bruteforce(const SugiharaChain& z, int bound = kBruteForceChainBound)
{
    if (z.k() > bound)
        throw ResourceError("brute-force partial endomorphisms limited to k <= " + std::to_string(bound));
    std::set<PartialMap> out;
    out.insert(PartialMap(z));
    for (const FiniteAlgebra& sub : subalgebras(z)) {
        for (const HomMap& h : enumerate_homomorphisms(sub, z.algebra())) {
            PartialMap f(z);
            for (Elem e = 0; e < sub.size(); ++e)
                f.set(sub.label(e)[0], z.value(h[e]));
            out.insert(std::move(f));
        }
    }
    return out;
}

/// The invertible partial endomorphism sending b_i to c_i (and 0 to 0 when k is odd).
inline PartialMap invertible_witness(const SugiharaChain& z, const std::vector<int>& b, const std::vector<int>& c)
{
    auto valid = [&](const std::vector<int>& t) {
        if (t.empty() || static_cast<int>(t.size()) > z.n())
            return false;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] < 1 || t[i] > z.n() || (i > 0 && t[i] <= t[i - 1]))
                return false;
        return true;
    };
    if (b.size() != c.size() || !valid(b) || !valid(c))
        throw InvalidArgument("witness tuples must be strictly increasing in 1..n and of equal length");
    PartialMap e(z);
    if (z.odd())
        e.set(0, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        e.set(b[i], c[i]);
        e.set(-b[i], -c[i]);
    }
    if (!is_partial_endomorphism(z, e) || !e.injective())
        throw InternalError("witness is not an invertible partial endomorphism");
    return e;
}

} // namespace sugihara
