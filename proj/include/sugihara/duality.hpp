#pragma once

#include <string>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"
#include "structure.hpp"

namespace sugihara {

/// D(A): the homomorphisms A -> Z_k as points, each written as its tuple of values
/// over A's carrier, with the alter-ego symbols lifted pointwise.
inline Structure dual_space(const FiniteAlgebra& a, int k)
{
    const AlterEgo m = alter_ego(k);
    std::vector<Label> pts;
    for_each_homomorphism(a, m.chain.algebra(), [&](const HomMap& h) {
        Label l(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            l[i] = m.chain.value(h[i]);
        pts.push_back(std::move(l));
        return true;
    });
    return lift_structure(m, std::move(pts), "D(" + a.name() + ")");
}

/// All s-tuples over Z_k with symbols lifted coordinatewise.
inline Structure power_structure(int k, std::size_t s)
{
    if (s == 0)
        throw InvalidArgument("power exponent must be positive");
    const AlterEgo m = alter_ego(k);
    const auto& carrier = m.chain.carrier();
    require_within_bound(carrier.size(), s, "power structure");
    std::vector<Label> pts;
    std::vector<std::size_t> digit(s, 0);
    while (true) {
        Label l(s);
        for (std::size_t i = 0; i < s; ++i)
            l[i] = carrier[digit[i]];
        pts.push_back(std::move(l));
        std::size_t i = s;
        while (i > 0 && ++digit[i - 1] == carrier.size())
            digit[--i] = 0;
        if (i == 0)
            break;
    }
    return lift_structure(m, std::move(pts), "M" + std::to_string(k) + "^" + std::to_string(s));
}

/// E(X): the morphisms X -> alter ego, as an algebra with pointwise operations.
/// Each element is labelled by its values at the points of X, in point order.
inline FiniteAlgebra hom_functor_E(const Structure& x, int k, MorphismSearchOptions opts = {})
{
    if (x.size() == 0)
        throw InvalidArgument("E is not defined here for the empty structure");
    const AlterEgo m = alter_ego(k);
    const Structure target = alter_ego_structure(m);
    std::vector<Label> elems;
    for_each_struct_morphism(x, target, [&](const StructMorphism& phi) {
        Label l(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i)
            l[i] = target.points[phi[i]][0];
        elems.push_back(std::move(l));
        return true;
    }, opts);
    if (elems.empty())
        throw InternalError("no morphisms from " + x.name);
    return FiniteAlgebra::of_integer_tuples("E(" + x.name + ")", std::move(elems));
}

struct EvaluationReport {
    bool ok = false;
    std::size_t algebra_size = 0;
    std::size_t dual_points = 0;
    std::size_t double_dual_size = 0;
    bool homomorphism = false;
    bool injective = false;
    bool surjective = false;
    std::string detail;
};

/// Builds e_A: A -> ED(A), a |-> (x |-> x(a)), and checks it is a bijective homomorphism.
inline EvaluationReport check_evaluation_iso(const FiniteAlgebra& a, int k)
{
    EvaluationReport rep;
    const Structure d = dual_space(a, k);
    rep.algebra_size = a.size();
    rep.dual_points = d.size();
    if (d.size() == 0) {
        rep.detail = "D(A) is empty";
        return rep;
    }
    const FiniteAlgebra ed = hom_functor_E(d, k);
    rep.double_dual_size = ed.size();

    HomMap ev(a.size());
    std::vector<char> hit(ed.size(), 0);
    rep.injective = true;
    for (Elem e = 0; e < a.size(); ++e) {
        Label l(d.size());
        for (std::size_t p = 0; p < d.size(); ++p)
            l[p] = d.points[p][e];
        auto img = ed.find(l);
        if (!img) {
            rep.detail = "evaluation at element " + std::to_string(e) + " is not a morphism";
            return rep;
        }
        ev[e] = *img;
        if (hit[*img])
            rep.injective = false;
        hit[*img] = 1;
    }
    rep.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    rep.homomorphism = is_homomorphism(a, ed, ev);
    rep.ok = rep.homomorphism && rep.injective && rep.surjective;
    if (!rep.ok)
        rep.detail = std::string(rep.homomorphism ? "" : "not a homomorphism; ") + (rep.injective ? "" : "not injective; ")
                     + (rep.surjective ? "" : "not surjective");
    return rep;
}

} // namespace sugihara
