#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "config.hpp"
#include "error.hpp"

namespace sugihara {

/// Index of an element within a FiniteAlgebra's carrier.
using Elem = std::uint32_t;

/// External name of an element: an integer tuple. Chain elements are 1-tuples.
using Label = std::vector<int>;

/// A total map between carriers, image of element i stored at position i.
using HomMap = std::vector<Elem>;

/// The Sugihara operations on the integers. Every algebra built from chains
/// is a subalgebra of a power of this structure.
namespace zops {
inline int meet(int a, int b) { return std::min(a, b); }
inline int join(int a, int b) { return std::max(a, b); }
inline int neg(int a) { return -a; }
inline int implies(int a, int b) { return a <= b ? std::max(-a, b) : std::min(-a, b); }
inline int modulus(int a) { return std::max(a, -a); }
} // namespace zops

struct LabelHash {
    std::size_t operator()(const Label& l) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (int v : l)
            h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(v) + 0x9e3779b9u)) * 0x100000001b3ull;
        return h;
    }
};

/// A finite algebra in the signature (meet, join, neg, implies).
///
/// Two storage strategies sit behind one interface. Tabulated algebras carry
/// explicit operation tables and arbitrary integer-tuple labels. Integer
/// algebras are subsets of Z^arity with coordinatewise Sugihara operations;
/// small ones are tabulated at construction, larger ones compute on demand.
/// Values are immutable and cheap to copy.
class FiniteAlgebra {
public:
    /// Elements at or below this size get dense operation tables.
    static constexpr std::size_t kTabulateLimit = 1024;

    FiniteAlgebra() = default;

    static FiniteAlgebra from_tables(std::string name, std::vector<Label> carrier,
                                     std::vector<Elem> meet, std::vector<Elem> join,
                                     std::vector<Elem> neg, std::vector<Elem> implies);

    /// Subset of Z^arity closed under the coordinatewise operations. The carrier is
    /// sorted lexicographically. Throws InvalidArgument when not closed.
    static FiniteAlgebra of_integer_tuples(std::string name, std::vector<Label> carrier);

    /// The full power base^exponent, indexed in lexicographic order.
    static FiniteAlgebra integer_power(std::string name, std::vector<int> base, std::size_t exponent);

    const std::string& name() const { return impl_->name; }
    std::size_t size() const { return impl_->size; }
    std::size_t arity() const { return impl_->arity; }
    bool integer_semantics() const { return impl_->kind != Kind::tables; }
    bool tabulated() const { return !impl_->meet.empty() || impl_->size == 0; }

    Label label(Elem e) const;
    std::optional<Elem> find(std::span<const int> label) const;
    std::optional<Elem> find(std::initializer_list<int> label) const
    {
        return find(std::span<const int>(label.begin(), label.size()));
    }
    Elem at(std::initializer_list<int> label) const
    {
        auto e = find(label);
        if (!e)
            throw InvalidArgument("element not in carrier of " + name());
        return *e;
    }
    std::vector<Label> labels() const;

    Elem meet(Elem a, Elem b) const { return binary(Op::meet, a, b); }
    Elem join(Elem a, Elem b) const { return binary(Op::join, a, b); }
    Elem implies(Elem a, Elem b) const { return binary(Op::implies, a, b); }
    Elem neg(Elem a) const
    {
        if (!impl_->neg.empty())
            return impl_->neg[a];
        return lazy_unary(a);
    }

    FiniteAlgebra renamed(std::string name) const
    {
        auto copy = std::make_shared<Impl>(*impl_);
        copy->name = std::move(name);
        FiniteAlgebra r;
        r.impl_ = std::move(copy);
        return r;
    }

private:
    enum class Kind { tables, tuples, power };
    enum class Op { meet, join, implies };

    struct Impl {
        std::string name;
        Kind kind = Kind::tables;
        std::size_t size = 0;
        std::size_t arity = 0;
        std::vector<int> flat;     // labels, row-major, tables/tuples kinds
        std::vector<int> base;     // sorted base values, power kind
        std::unordered_map<Label, Elem, LabelHash> index;
        std::vector<Elem> meet, join, implies, neg;
    };

    Elem binary(Op op, Elem a, Elem b) const
    {
        const Impl& d = *impl_;
        if (!d.meet.empty()) {
            const std::size_t at = static_cast<std::size_t>(a) * d.size + b;
            switch (op) {
            case Op::meet: return d.meet[at];
            case Op::join: return d.join[at];
            case Op::implies: return d.implies[at];
            }
        }
        return lazy_binary(op, a, b);
    }

    Elem lazy_binary(Op op, Elem a, Elem b) const;
    Elem lazy_unary(Elem a) const;
    void tabulate_integer_ops();

    std::shared_ptr<const Impl> impl_ = std::make_shared<Impl>();
    friend FiniteAlgebra make_integer_algebra(std::shared_ptr<Impl>);
};

inline Label FiniteAlgebra::label(Elem e) const
{
    const Impl& d = *impl_;
    if (e >= d.size)
        throw InvalidArgument("element index out of range in " + d.name);
    Label out(d.arity);
    if (d.kind == Kind::power) {
        const std::size_t radix = d.base.size();
        std::size_t rest = e;
        for (std::size_t i = d.arity; i-- > 0;) {
            out[i] = d.base[rest % radix];
            rest /= radix;
        }
        return out;
    }
    std::copy_n(d.flat.begin() + static_cast<std::ptrdiff_t>(e * d.arity), d.arity, out.begin());
    return out;
}

inline std::optional<Elem> FiniteAlgebra::find(std::span<const int> label) const
{
    const Impl& d = *impl_;
    if (label.size() != d.arity)
        return std::nullopt;
    if (d.kind == Kind::power) {
        std::size_t idx = 0;
        for (int v : label) {
            auto it = std::lower_bound(d.base.begin(), d.base.end(), v);
            if (it == d.base.end() || *it != v)
                return std::nullopt;
            idx = idx * d.base.size() + static_cast<std::size_t>(it - d.base.begin());
        }
        return static_cast<Elem>(idx);
    }
    auto it = d.index.find(Label(label.begin(), label.end()));
    if (it == d.index.end())
        return std::nullopt;
    return it->second;
}

inline std::vector<Label> FiniteAlgebra::labels() const
{
    std::vector<Label> out;
    out.reserve(size());
    for (Elem e = 0; e < size(); ++e)
        out.push_back(label(e));
    return out;
}

inline Elem FiniteAlgebra::lazy_binary(Op op, Elem a, Elem b) const
{
    if (impl_->kind == Kind::tables)
        throw InternalError("tabulated algebra without tables");
    Label x = label(a);
    const Label y = label(b);
    for (std::size_t i = 0; i < x.size(); ++i) {
        switch (op) {
        case Op::meet: x[i] = zops::meet(x[i], y[i]); break;
        case Op::join: x[i] = zops::join(x[i], y[i]); break;
        case Op::implies: x[i] = zops::implies(x[i], y[i]); break;
        }
    }
    auto r = find(x);
    if (!r)
        throw InternalError("operation left the carrier of " + impl_->name);
    return *r;
}

inline Elem FiniteAlgebra::lazy_unary(Elem a) const
{
    if (impl_->kind == Kind::tables)
        throw InternalError("tabulated algebra without tables");
    Label x = label(a);
    for (int& v : x)
        v = zops::neg(v);
    auto r = find(x);
    if (!r)
        throw InternalError("negation left the carrier of " + impl_->name);
    return *r;
}

inline FiniteAlgebra make_integer_algebra(std::shared_ptr<FiniteAlgebra::Impl> impl)
{
    FiniteAlgebra a;
    a.impl_ = impl;
    if (impl->size <= FiniteAlgebra::kTabulateLimit) {
        // Fill tables through the lazy path, then publish them.
        const std::size_t n = impl->size;
        std::vector<Elem> meet(n * n), join(n * n), imp(n * n), neg(n);
        for (Elem x = 0; x < n; ++x) {
            neg[x] = a.lazy_unary(x);
            for (Elem y = 0; y < n; ++y) {
                meet[x * n + y] = a.lazy_binary(FiniteAlgebra::Op::meet, x, y);
                join[x * n + y] = a.lazy_binary(FiniteAlgebra::Op::join, x, y);
                imp[x * n + y] = a.lazy_binary(FiniteAlgebra::Op::implies, x, y);
            }
        }
        impl->meet = std::move(meet);
        impl->join = std::move(join);
        impl->implies = std::move(imp);
        impl->neg = std::move(neg);
    }
    return a;
}

inline FiniteAlgebra FiniteAlgebra::of_integer_tuples(std::string name, std::vector<Label> carrier)
{
    if (carrier.empty())
        throw InvalidArgument("algebra carrier must be nonempty");
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->kind = Kind::tuples;
    impl->size = carrier.size();
    impl->arity = carrier.front().size();
    impl->flat.reserve(impl->size * impl->arity);
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        if (carrier[i].size() != impl->arity)
            throw InvalidArgument("mixed tuple lengths in carrier");
        impl->flat.insert(impl->flat.end(), carrier[i].begin(), carrier[i].end());
        impl->index.emplace(std::move(carrier[i]), static_cast<Elem>(i));
    }
    // Closure check. Small carriers are checked while tabulating.
    try {
        return make_integer_algebra(std::move(impl));
    } catch (const InternalError& e) {
        throw InvalidArgument(std::string("carrier not closed under the operations: ") + e.what());
    }
}

inline FiniteAlgebra FiniteAlgebra::integer_power(std::string name, std::vector<int> base, std::size_t exponent)
{
    if (base.empty() || exponent == 0)
        throw InvalidArgument("power needs a nonempty base and positive exponent");
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (int v : base)
        if (!std::binary_search(base.begin(), base.end(), -v))
            throw InvalidArgument("power base not closed under negation");
    const std::uint64_t total = checked_power(base.size(), exponent, size_bound());
    if (total == 0)
        throw ResourceError("power algebra " + std::to_string(base.size()) + "^" + std::to_string(exponent)
                            + " exceeds size bound " + std::to_string(size_bound()));
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->kind = Kind::power;
    impl->size = static_cast<std::size_t>(total);
    impl->arity = exponent;
    impl->base = std::move(base);
    return make_integer_algebra(std::move(impl));
}

inline FiniteAlgebra FiniteAlgebra::from_tables(std::string name, std::vector<Label> carrier,
                                               std::vector<Elem> meet, std::vector<Elem> join,
                                               std::vector<Elem> neg, std::vector<Elem> implies)
{
    const std::size_t n = carrier.size();
    if (n == 0)
        throw InvalidArgument("algebra carrier must be nonempty");
    if (meet.size() != n * n || join.size() != n * n || implies.size() != n * n || neg.size() != n)
        throw InvalidArgument("operation table has the wrong shape");
    auto in_range = [n](const std::vector<Elem>& t) {
        return std::all_of(t.begin(), t.end(), [n](Elem e) { return e < n; });
    };
    if (!in_range(meet) || !in_range(join) || !in_range(implies) || !in_range(neg))
        throw InvalidArgument("operation table entry outside the carrier");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->kind = Kind::tables;
    impl->size = n;
    impl->arity = carrier.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (carrier[i].size() != impl->arity)
            throw InvalidArgument("mixed label lengths in carrier");
        impl->flat.insert(impl->flat.end(), carrier[i].begin(), carrier[i].end());
        if (!impl->index.emplace(carrier[i], static_cast<Elem>(i)).second)
            throw InvalidArgument("duplicate label in carrier");
    }
    impl->meet = std::move(meet);
    impl->join = std::move(join);
    impl->neg = std::move(neg);
    impl->implies = std::move(implies);
    FiniteAlgebra a;
    a.impl_ = std::move(impl);
    return a;
}

// ---------------------------------------------------------------------------
// Sugihara chains

enum class Parity { even, odd };

/// The k-element Sugihara chain: -n..n for k = 2n+1, the same without 0 for k = 2n.
/// Element index i carries the integer carrier[i]; indices follow the order.
class SugiharaChain {
public:
    SugiharaChain() = default;
    explicit SugiharaChain(int k);

    int k() const { return k_; }
    int n() const { return k_ / 2; }
    Parity parity() const { return k_ % 2 == 0 ? Parity::even : Parity::odd; }
    bool odd() const { return parity() == Parity::odd; }
    const std::vector<int>& carrier() const { return carrier_; }
    const FiniteAlgebra& algebra() const { return algebra_; }
    std::size_t size() const { return carrier_.size(); }

    int value(Elem e) const { return carrier_.at(e); }
    bool contains(int v) const { return std::binary_search(carrier_.begin(), carrier_.end(), v); }
    Elem index(int v) const
    {
        auto it = std::lower_bound(carrier_.begin(), carrier_.end(), v);
        if (it == carrier_.end() || *it != v)
            throw InvalidArgument(std::to_string(v) + " is not an element of Z" + std::to_string(k_));
        return static_cast<Elem>(it - carrier_.begin());
    }

private:
    int k_ = 0;
    std::vector<int> carrier_;
    FiniteAlgebra algebra_;
};

inline SugiharaChain::SugiharaChain(int k) : k_(k)
{
    if (k < 1)
        throw InvalidArgument("chain size must be at least 1, got " + std::to_string(k));
    const int n = k / 2;
    for (int a = -n; a <= n; ++a)
        if (a != 0 || k % 2 == 1)
            carrier_.push_back(a);
    std::vector<Label> labels;
    for (int a : carrier_)
        labels.push_back({a});
    algebra_ = FiniteAlgebra::of_integer_tuples("Z" + std::to_string(k), std::move(labels));
}

inline SugiharaChain make_chain(int k) { return SugiharaChain(k); }

// ---------------------------------------------------------------------------
// Subalgebras

/// The least subset containing `seed` closed under all four operations.
inline std::vector<Elem> closure(const FiniteAlgebra& a, std::span<const Elem> seed)
{
    std::vector<char> in(a.size(), 0);
    std::vector<Elem> members;
    auto add = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    for (Elem e : seed) {
        if (e >= a.size())
            throw InvalidArgument("generator outside the carrier");
        add(e);
    }
    // Each new member is combined with every earlier one, in both orders.
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Elem x = members[i];
        add(a.neg(x));
        for (std::size_t j = 0; j <= i; ++j) {
            const Elem y = members[j];
            add(a.meet(x, y));
            add(a.join(x, y));
            add(a.implies(x, y));
            add(a.implies(y, x));
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

/// The algebra induced on `members`, which must be closed. Labels are kept.
inline FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, std::span<const Elem> members, std::string name)
{
    if (members.empty())
        throw InvalidArgument("subalgebra must be nonempty");
    std::vector<Label> labels;
    labels.reserve(members.size());
    for (Elem e : members)
        labels.push_back(a.label(e));
    if (a.integer_semantics())
        return FiniteAlgebra::of_integer_tuples(std::move(name), std::move(labels));

    std::vector<Elem> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    auto pos = [&](Elem e) -> Elem {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
        if (it == sorted.end() || *it != e)
            throw InvalidArgument("subset not closed under the operations");
        return static_cast<Elem>(it - sorted.begin());
    };
    const std::size_t n = sorted.size();
    std::vector<Label> ls;
    std::vector<Elem> meet(n * n), join(n * n), imp(n * n), neg(n);
    for (std::size_t i = 0; i < n; ++i) {
        ls.push_back(a.label(sorted[i]));
        neg[i] = pos(a.neg(sorted[i]));
        for (std::size_t j = 0; j < n; ++j) {
            meet[i * n + j] = pos(a.meet(sorted[i], sorted[j]));
            join[i * n + j] = pos(a.join(sorted[i], sorted[j]));
            imp[i * n + j] = pos(a.implies(sorted[i], sorted[j]));
        }
    }
    return FiniteAlgebra::from_tables(std::move(name), std::move(ls), std::move(meet), std::move(join),
                                      std::move(neg), std::move(imp));
}

inline FiniteAlgebra generated_subalgebra(const FiniteAlgebra& a, std::span<const Elem> seed)
{
    if (seed.empty())
        throw InvalidArgument("generating set must be nonempty");
    auto members = closure(a, seed);
    return induced_subalgebra(a, members, "Sg(" + a.name() + ")");
}

namespace detail {
inline bool canonical_less(const FiniteAlgebra& x, const FiniteAlgebra& y)
{
    if (x.size() != y.size())
        return x.size() < y.size();
    return x.labels() < y.labels();
}
} // namespace detail

/// Every nonempty subalgebra of a chain: unions of pairs {a,-a}, plus {0} when odd.
inline std::vector<FiniteAlgebra> subalgebras(const SugiharaChain& z)
{
    const int n = z.n();
    std::vector<int> blocks; // block b means {b,-b}; 0 means {0}
    if (z.odd())
        blocks.push_back(0);
    for (int b = 1; b <= n; ++b)
        blocks.push_back(b);
    std::vector<FiniteAlgebra> out;
    const std::uint64_t count = std::uint64_t{1} << blocks.size();
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        std::vector<Label> labels;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (!(mask >> i & 1u))
                continue;
            labels.push_back({blocks[i]});
            if (blocks[i] != 0)
                labels.push_back({-blocks[i]});
        }
        out.push_back(FiniteAlgebra::of_integer_tuples("Z" + std::to_string(z.k()) + "sub", std::move(labels)));
    }
    std::sort(out.begin(), out.end(), detail::canonical_less);
    return out;
}

// ---------------------------------------------------------------------------
// Congruences

/// The congruence identifying exactly the elements of modulus at most m.
struct Congruence {
    int m = 0;
    std::vector<std::vector<int>> blocks; // element values; blocks sorted by least member

    bool related(int a, int b) const
    {
        return a == b || (zops::modulus(a) <= m && zops::modulus(b) <= m);
    }
};

/// Congruence level m of an arbitrary carrier of integer values.
inline Congruence congruence_level(std::span<const int> carrier, int m)
{
    Congruence c;
    c.m = m;
    std::vector<int> inner;
    for (int a : carrier) {
        if (zops::modulus(a) <= m)
            inner.push_back(a);
        else
            c.blocks.push_back({a});
    }
    if (!inner.empty())
        c.blocks.push_back(inner);
    std::sort(c.blocks.begin(), c.blocks.end());
    return c;
}

inline std::vector<Congruence> congruences(const SugiharaChain& z)
{
    std::vector<Congruence> out;
    for (int m = 0; m <= z.n(); ++m)
        out.push_back(congruence_level(z.carrier(), m));
    return out;
}

/// True when the partition (block id per element index) respects all four operations.
inline bool is_compatible(const FiniteAlgebra& a, std::span<const int> block_of)
{
    const std::size_t n = a.size();
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
            if (block_of[x] != block_of[y])
                continue;
            if (block_of[a.neg(x)] != block_of[a.neg(y)])
                return false;
            for (Elem z = 0; z < n; ++z) {
                if (block_of[a.meet(x, z)] != block_of[a.meet(y, z)]
                    || block_of[a.join(x, z)] != block_of[a.join(y, z)]
                    || block_of[a.implies(x, z)] != block_of[a.implies(y, z)]
                    || block_of[a.implies(z, x)] != block_of[a.implies(z, y)])
                    return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Homomorphisms

inline bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const Elem> h)
{
    if (h.size() != a.size())
        return false;
    for (Elem x = 0; x < a.size(); ++x) {
        if (h[x] >= b.size() || h[a.neg(x)] != b.neg(h[x]))
            return false;
        for (Elem y = 0; y < a.size(); ++y) {
            if (h[a.meet(x, y)] != b.meet(h[x], h[y]) || h[a.join(x, y)] != b.join(h[x], h[y])
                || h[a.implies(x, y)] != b.implies(h[x], h[y]))
                return false;
        }
    }
    return true;
}

namespace detail {

/// Backtracking search for homomorphisms with forward propagation: once the
/// arguments of an operation instance are mapped, the image of its result is
/// forced. Source elements are branched in ascending order, target values in
/// ascending order, so solutions come out lexicographically sorted.
class HomSearch {
public:
    HomSearch(const FiniteAlgebra& a, const FiniteAlgebra& b) : a_(a), b_(b), h_(a.size(), kFree) {}

    void run(const std::function<bool(const HomMap&)>& visit)
    {
        visit_ = &visit;
        stop_ = false;
        branch(0);
    }

private:
    static constexpr Elem kFree = static_cast<Elem>(-1);

    bool assign(Elem x, Elem v)
    {
        std::vector<std::pair<Elem, Elem>> queue{{x, v}};
        while (!queue.empty()) {
            auto [p, w] = queue.back();
            queue.pop_back();
            if (h_[p] != kFree) {
                if (h_[p] != w)
                    return false;
                continue;
            }
            h_[p] = w;
            trail_.push_back(p);
            queue.emplace_back(a_.neg(p), b_.neg(w));
            for (Elem y = 0; y < a_.size(); ++y) {
                if (h_[y] == kFree)
                    continue;
                const Elem u = h_[y];
                queue.emplace_back(a_.meet(p, y), b_.meet(w, u));
                queue.emplace_back(a_.join(p, y), b_.join(w, u));
                queue.emplace_back(a_.implies(p, y), b_.implies(w, u));
                queue.emplace_back(a_.implies(y, p), b_.implies(u, w));
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            h_[trail_.back()] = kFree;
            trail_.pop_back();
        }
    }

    void branch(Elem x)
    {
        while (x < a_.size() && h_[x] != kFree)
            ++x;
        if (x == a_.size()) {
            if (!(*visit_)(h_))
                stop_ = true;
            return;
        }
        for (Elem v = 0; v < b_.size() && !stop_; ++v) {
            const std::size_t mark = trail_.size();
            if (assign(x, v))
                branch(x + 1);
            undo(mark);
        }
    }

    const FiniteAlgebra& a_;
    const FiniteAlgebra& b_;
    HomMap h_;
    std::vector<Elem> trail_;
    const std::function<bool(const HomMap&)>* visit_ = nullptr;
    bool stop_ = false;
};

} // namespace detail

/// Calls `visit` on each homomorphism a -> b in lexicographic order until it returns false.
inline void for_each_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                  const std::function<bool(const HomMap&)>& visit)
{
    detail::HomSearch(a, b).run(visit);
}

inline std::vector<HomMap> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b)
{
    std::vector<HomMap> out;
    for_each_homomorphism(a, b, [&](const HomMap& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Powers

inline FiniteAlgebra power_algebra(const SugiharaChain& z, std::size_t s)
{
    if (s == 0)
        throw InvalidArgument("power exponent must be positive");
    return FiniteAlgebra::integer_power("Z" + std::to_string(z.k()) + "^" + std::to_string(s), z.carrier(), s);
}

} // namespace sugihara
