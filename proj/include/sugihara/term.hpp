#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"

namespace sugihara {

enum class TermKind { var, meet, join, neg, implies, modulus, iff };

/// Immutable term over named variables. Modulus and iff are derived:
/// |x| = x->x and x<->y = (x->y) & (y->x).
class Term {
public:
    Term() = default;

    static Term var(std::string name)
    {
        if (name.empty())
            throw InvalidArgument("variable name must be nonempty");
        auto n = std::make_shared<Node>();
        n->kind = TermKind::var;
        n->name = std::move(name);
        return Term(std::move(n));
    }
    static Term unary(TermKind kind, Term a)
    {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->lhs = std::move(a.node_);
        return Term(std::move(n));
    }
    static Term binary(TermKind kind, Term a, Term b)
    {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->lhs = std::move(a.node_);
        n->rhs = std::move(b.node_);
        return Term(std::move(n));
    }

    bool empty() const { return !node_; }
    TermKind kind() const { return node().kind; }
    const std::string& name() const { return node().name; }
    Term lhs() const { return Term(node().lhs); }
    Term rhs() const { return Term(node().rhs); }
    bool is_unary() const { return kind() == TermKind::neg || kind() == TermKind::modulus; }
    /// Node identity; equal for copies sharing structure.
    const void* id() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b) { return same(a.node_.get(), b.node_.get()); }

    /// Number of nodes.
    std::size_t size() const
    {
        if (kind() == TermKind::var)
            return 1;
        return 1 + lhs().size() + (is_unary() ? 0 : rhs().size());
    }

private:
    struct Node {
        TermKind kind = TermKind::var;
        std::string name;
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& node() const
    {
        if (!node_)
            throw InvalidArgument("empty term");
        return *node_;
    }

    static bool same(const Node* a, const Node* b)
    {
        if (a == b)
            return true;
        if (!a || !b || a->kind != b->kind)
            return false;
        if (a->kind == TermKind::var)
            return a->name == b->name;
        return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
    }

    std::shared_ptr<const Node> node_;
};

inline Term var(std::string name) { return Term::var(std::move(name)); }
inline Term meet(Term a, Term b) { return Term::binary(TermKind::meet, std::move(a), std::move(b)); }
inline Term join(Term a, Term b) { return Term::binary(TermKind::join, std::move(a), std::move(b)); }
inline Term implies(Term a, Term b) { return Term::binary(TermKind::implies, std::move(a), std::move(b)); }
inline Term neg(Term a) { return Term::unary(TermKind::neg, std::move(a)); }
inline Term modulus(Term a) { return Term::unary(TermKind::modulus, std::move(a)); }
inline Term iff(Term a, Term b) { return Term::binary(TermKind::iff, std::move(a), std::move(b)); }

/// Replaces modulus and iff by their definitions.
inline Term expand(const Term& t)
{
    switch (t.kind()) {
    case TermKind::var: return t;
    case TermKind::neg: return neg(expand(t.lhs()));
    case TermKind::meet: return meet(expand(t.lhs()), expand(t.rhs()));
    case TermKind::join: return join(expand(t.lhs()), expand(t.rhs()));
    case TermKind::implies: return implies(expand(t.lhs()), expand(t.rhs()));
    case TermKind::modulus: {
        Term a = expand(t.lhs());
        return implies(a, a);
    }
    case TermKind::iff: {
        Term a = expand(t.lhs());
        Term b = expand(t.rhs());
        return meet(implies(a, b), implies(b, a));
    }
    }
    throw InternalError("unknown term kind");
}

inline void collect_variables(const Term& t, std::set<std::string>& out)
{
    if (t.kind() == TermKind::var) {
        out.insert(t.name());
        return;
    }
    collect_variables(t.lhs(), out);
    if (!t.is_unary())
        collect_variables(t.rhs(), out);
}

inline std::set<std::string> variables(const Term& t)
{
    std::set<std::string> out;
    collect_variables(t, out);
    return out;
}

using Assignment = std::map<std::string, Elem>;

/// Evaluates `t` in `a` under `asg`. Derived connectives are evaluated through their definitions.
inline Elem eval_term(const Term& t, const Assignment& asg, const FiniteAlgebra& a)
{
    switch (t.kind()) {
    case TermKind::var: {
        auto it = asg.find(t.name());
        if (it == asg.end())
            throw InvalidArgument("unbound variable '" + t.name() + "'");
        if (it->second >= a.size())
            throw InvalidArgument("value of '" + t.name() + "' is outside the carrier of " + a.name());
        return it->second;
    }
    case TermKind::neg: return a.neg(eval_term(t.lhs(), asg, a));
    case TermKind::modulus: {
        const Elem x = eval_term(t.lhs(), asg, a);
        return a.implies(x, x);
    }
    case TermKind::meet: return a.meet(eval_term(t.lhs(), asg, a), eval_term(t.rhs(), asg, a));
    case TermKind::join: return a.join(eval_term(t.lhs(), asg, a), eval_term(t.rhs(), asg, a));
    case TermKind::implies: return a.implies(eval_term(t.lhs(), asg, a), eval_term(t.rhs(), asg, a));
    case TermKind::iff: {
        const Elem x = eval_term(t.lhs(), asg, a);
        const Elem y = eval_term(t.rhs(), asg, a);
        return a.meet(a.implies(x, y), a.implies(y, x));
    }
    }
    throw InternalError("unknown term kind");
}

/// A term flattened into straight-line code over numbered variable slots, with
/// repeated subterms computed once. Used in tight evaluation loops.
class CompiledTerm {
public:
    CompiledTerm(const Term& t, const std::vector<std::string>& slots) { result_ = emit(t, slots); }

    /// `values` holds one element per slot. `scratch` is reused between calls.
    Elem eval(const FiniteAlgebra& a, const std::vector<Elem>& values, std::vector<Elem>& scratch) const
    {
        scratch.resize(code_.size());
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const Instr& in = code_[i];
            switch (in.kind) {
            case TermKind::var: scratch[i] = values[in.x]; break;
            case TermKind::neg: scratch[i] = a.neg(scratch[in.x]); break;
            case TermKind::meet: scratch[i] = a.meet(scratch[in.x], scratch[in.y]); break;
            case TermKind::join: scratch[i] = a.join(scratch[in.x], scratch[in.y]); break;
            case TermKind::implies: scratch[i] = a.implies(scratch[in.x], scratch[in.y]); break;
            default: throw InternalError("derived connective in compiled code");
            }
        }
        return scratch[result_];
    }

    /// Highest slot index read, or -1 for none.
    int max_slot() const { return max_slot_; }
    std::size_t length() const { return code_.size(); }

private:
    struct Instr {
        TermKind kind;
        std::uint32_t x = 0, y = 0;
        auto operator<=>(const Instr&) const = default;
    };

    std::uint32_t put(Instr in)
    {
        auto [it, fresh] = seen_.emplace(in, static_cast<std::uint32_t>(code_.size()));
        if (fresh)
            code_.push_back(in);
        return it->second;
    }

    std::uint32_t emit(const Term& t, const std::vector<std::string>& slots)
    {
        if (auto it = done_.find(t.id()); it != done_.end())
            return it->second;
        const std::uint32_t r = emit_node(t, slots);
        done_.emplace(t.id(), r);
        return r;
    }

    std::uint32_t emit_node(const Term& t, const std::vector<std::string>& slots)
    {
        switch (t.kind()) {
        case TermKind::var: {
            auto it = std::find(slots.begin(), slots.end(), t.name());
            if (it == slots.end())
                throw InvalidArgument("unbound variable '" + t.name() + "'");
            const auto slot = static_cast<std::uint32_t>(it - slots.begin());
            max_slot_ = std::max(max_slot_, static_cast<int>(slot));
            return put({TermKind::var, slot, 0});
        }
        case TermKind::neg: return put({TermKind::neg, emit(t.lhs(), slots), 0});
        case TermKind::modulus: {
            const auto x = emit(t.lhs(), slots);
            return put({TermKind::implies, x, x});
        }
        case TermKind::iff: {
            const auto x = emit(t.lhs(), slots);
            const auto y = emit(t.rhs(), slots);
            return put({TermKind::meet, put({TermKind::implies, x, y}), put({TermKind::implies, y, x})});
        }
        default: return put({t.kind(), emit(t.lhs(), slots), emit(t.rhs(), slots)});
        }
    }

    std::vector<Instr> code_;
    std::map<Instr, std::uint32_t> seen_;
    std::map<const void*, std::uint32_t> done_;
    std::uint32_t result_ = 0;
    int max_slot_ = -1;
};

} // namespace sugihara
