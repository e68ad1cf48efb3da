#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "partial_map.hpp"

namespace sugihara {

using Point = std::int32_t;
inline constexpr Point kNoPoint = -1;

/// The symbols of an alter ego of Z_k: partial operations (total ones form G),
/// nullary constants and the congruence relations, referred to by level m.
struct AlterEgo {
    SugiharaChain chain;
    std::vector<NamedMap> operations;
    std::vector<int> constants;
    std::vector<int> relation_levels;

    std::vector<NamedMap> totals() const
    {
        std::vector<NamedMap> out;
        for (const auto& op : operations)
            if (op.map.total())
                out.push_back(op);
        return out;
    }
    std::vector<NamedMap> partials() const
    {
        std::vector<NamedMap> out;
        for (const auto& op : operations)
            if (!op.map.total())
                out.push_back(op);
        return out;
    }
};

/// Odd k = 2n+1: operations f_0..f_n and the total g, constant 0, no relations.
/// Even k = 2n: partial f_2..f_n and g, relations ~_1..~_{n-1}.
inline AlterEgo alter_ego(int k)
{
    if (k < 2)
        throw InvalidArgument("alter ego needs k >= 2, got " + std::to_string(k));
    AlterEgo m{SugiharaChain(k), {}, {}, {}};
    m.operations = standard_generators(m.chain);
    if (m.chain.odd())
        m.constants.push_back(0);
    else
        for (int lvl = 1; lvl < m.chain.n(); ++lvl)
            m.relation_levels.push_back(lvl);
    return m;
}

/// A finite structure in the signature of an alter ego. Topology is discrete and omitted.
/// Points are integer tuples over Z_k, kept in lexicographic order; every symbol acts
/// coordinatewise. Partial operations store kNoPoint outside their domain and
/// relations store a class id per point.
struct Structure {
    std::string name;
    int k = 0;
    std::vector<Label> points;
    std::vector<std::string> op_names;
    std::vector<std::vector<Point>> ops;
    std::vector<std::string> rel_names;
    std::vector<int> rel_levels;
    std::vector<std::vector<Point>> rels;
    std::vector<std::string> const_names;
    std::vector<Point> consts;

    std::size_t size() const { return points.size(); }

    std::optional<Point> find(const Label& l) const
    {
        auto it = std::lower_bound(points.begin(), points.end(), l);
        if (it == points.end() || *it != l)
            return std::nullopt;
        return static_cast<Point>(it - points.begin());
    }

    std::vector<Point> domain(std::size_t op) const
    {
        std::vector<Point> out;
        for (std::size_t p = 0; p < size(); ++p)
            if (ops[op][p] != kNoPoint)
                out.push_back(static_cast<Point>(p));
        return out;
    }

    /// Classes of relation r, each ascending, ordered by least member.
    std::vector<std::vector<Point>> classes(std::size_t r) const
    {
        std::map<Point, std::vector<Point>> by_id;
        for (std::size_t p = 0; p < size(); ++p)
            by_id[rels[r][p]].push_back(static_cast<Point>(p));
        std::vector<std::vector<Point>> out;
        for (auto& [id, members] : by_id)
            out.push_back(std::move(members));
        std::sort(out.begin(), out.end());
        return out;
    }

    bool related(std::size_t r, Point a, Point b) const { return rels[r][a] == rels[r][b]; }
};

/// The structure on `points` (tuples over Z_k) with every alter-ego symbol lifted
/// coordinatewise. A tuple lies in dom e when each coordinate does. Throws
/// InvalidArgument when the point set is not closed under a lifted operation.
inline Structure lift_structure(const AlterEgo& m, std::vector<Label> points, std::string name)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Structure s;
    s.name = std::move(name);
    s.k = m.chain.k();
    s.points = std::move(points);
    const std::size_t arity = s.points.empty() ? 0 : s.points.front().size();
    for (const auto& p : s.points) {
        if (p.size() != arity)
            throw InvalidArgument("points of mixed length");
        for (int v : p)
            if (!m.chain.contains(v))
                throw InvalidArgument(std::to_string(v) + " is not an element of Z" + std::to_string(s.k));
    }

    for (const auto& op : m.operations) {
        s.op_names.push_back(op.name);
        std::vector<Point> act(s.size(), kNoPoint);
        for (std::size_t p = 0; p < s.size(); ++p) {
            Label img(arity);
            bool inside = true;
            for (std::size_t i = 0; i < arity && inside; ++i) {
                if (!op.map.defined(s.points[p][i]))
                    inside = false;
                else
                    img[i] = op.map(s.points[p][i]);
            }
            if (!inside)
                continue;
            auto q = s.find(img);
            if (!q)
                throw InvalidArgument(s.name + " is not closed under " + op.name);
            act[p] = *q;
        }
        s.ops.push_back(std::move(act));
    }

    for (int lvl : m.relation_levels) {
        s.rel_names.push_back("~" + std::to_string(lvl));
        s.rel_levels.push_back(lvl);
        std::map<Label, Point> ids;
        std::vector<Point> cls(s.size());
        for (std::size_t p = 0; p < s.size(); ++p) {
            Label key = s.points[p];
            for (int& v : key)
                if (zops::modulus(v) <= lvl)
                    v = 0;
            cls[p] = ids.emplace(std::move(key), static_cast<Point>(ids.size())).first->second;
        }
        s.rels.push_back(std::move(cls));
    }

    for (int c : m.constants) {
        s.const_names.push_back(std::to_string(c));
        auto q = s.find(Label(arity, c));
        if (!q)
            throw InvalidArgument(s.name + " lacks the constant " + std::to_string(c));
        s.consts.push_back(*q);
    }
    return s;
}

/// The alter ego as a one-dimensional structure.
inline Structure alter_ego_structure(const AlterEgo& m)
{
    std::vector<Label> pts;
    for (int a : m.chain.carrier())
        pts.push_back({a});
    return lift_structure(m, std::move(pts), "M" + std::to_string(m.chain.k()));
}

inline bool same_signature(const Structure& x, const Structure& y)
{
    return x.op_names == y.op_names && x.rel_names == y.rel_names && x.const_names == y.const_names;
}

/// A total map between point sets, image of point i at position i.
using StructMorphism = std::vector<Point>;

inline bool is_struct_morphism(const Structure& x, const Structure& y, const StructMorphism& phi)
{
    if (!same_signature(x, y) || phi.size() != x.size())
        return false;
    for (Point v : phi)
        if (v < 0 || static_cast<std::size_t>(v) >= y.size())
            return false;
    for (std::size_t o = 0; o < x.ops.size(); ++o)
        for (std::size_t p = 0; p < x.size(); ++p) {
            const Point img = x.ops[o][p];
            if (img == kNoPoint)
                continue;
            const Point yi = y.ops[o][phi[p]];
            if (yi == kNoPoint || yi != phi[img])
                return false;
        }
    for (std::size_t r = 0; r < x.rels.size(); ++r) {
        std::unordered_map<Point, Point> image_class;
        for (std::size_t p = 0; p < x.size(); ++p) {
            auto [it, fresh] = image_class.emplace(x.rels[r][p], y.rels[r][phi[p]]);
            if (!fresh && it->second != y.rels[r][phi[p]])
                return false;
        }
    }
    for (std::size_t c = 0; c < x.consts.size(); ++c)
        if (phi[x.consts[c]] != y.consts[c])
            return false;
    return true;
}

struct MorphismSearchOptions {
    /// Maximum number of tentative assignments; 0 means unlimited.
    std::uint64_t node_budget = 0;
};

namespace detail {

/// Backtracking over points in descending constraint degree. Fixing phi(x) forces
/// phi(e(x)) = e(phi(x)) for every operation defined at x, and pins the image
/// class of x under every relation. Candidates for x are restricted up front to
/// points lying in every domain that contains x.
class MorphismSearch {
public:
    MorphismSearch(const Structure& x, const Structure& y, MorphismSearchOptions opts)
        : x_(x), y_(y), opts_(opts), phi_(x.size(), kNoPoint)
    {
        if (!same_signature(x, y))
            throw InvalidArgument("structures " + x.name + " and " + y.name + " have different signatures");
        const std::size_t nx = x.size(), ny = y.size();
        allowed_.assign(nx, std::vector<char>(ny, 1));
        std::vector<std::size_t> degree(nx, 0);
        for (std::size_t o = 0; o < x.ops.size(); ++o)
            for (std::size_t p = 0; p < nx; ++p) {
                if (x.ops[o][p] == kNoPoint)
                    continue;
                ++degree[p];
                ++degree[x.ops[o][p]];
                for (std::size_t q = 0; q < ny; ++q)
                    if (y.ops[o][q] == kNoPoint)
                        allowed_[p][q] = 0;
            }
        order_.resize(nx);
        for (std::size_t p = 0; p < nx; ++p)
            order_[p] = static_cast<Point>(p);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](Point a, Point b) { return degree[a] > degree[b]; });
        for (std::size_t r = 0; r < x.rels.size(); ++r) {
            Point classes = 0;
            for (Point c : x.rels[r])
                classes = std::max(classes, static_cast<Point>(c + 1));
            rel_image_.emplace_back(classes, kNoPoint);
        }
    }

    std::uint64_t run(const std::function<bool(const StructMorphism&)>& visit)
    {
        visit_ = &visit;
        count_ = 0;
        stop_ = false;
        if (x_.size() == 0) {
            ++count_;
            (*visit_)(phi_);
            return count_;
        }
        for (std::size_t c = 0; c < x_.consts.size(); ++c)
            if (!assign(x_.consts[c], y_.consts[c]))
                return 0;
        branch(0);
        return count_;
    }

private:
    struct Undo {
        bool is_rel;
        std::size_t rel;
        Point slot;
    };

    bool assign(Point p, Point v)
    {
        std::vector<std::pair<Point, Point>> queue{{p, v}};
        while (!queue.empty()) {
            auto [a, w] = queue.back();
            queue.pop_back();
            if (opts_.node_budget && ++nodes_ > opts_.node_budget)
                throw ResourceError("structure morphism search exceeded its node budget");
            if (phi_[a] != kNoPoint) {
                if (phi_[a] != w)
                    return false;
                continue;
            }
            if (!allowed_[a][w])
                return false;
            for (std::size_t r = 0; r < x_.rels.size(); ++r) {
                Point& img = rel_image_[r][x_.rels[r][a]];
                if (img == kNoPoint) {
                    img = y_.rels[r][w];
                    trail_.push_back({true, r, x_.rels[r][a]});
                } else if (img != y_.rels[r][w]) {
                    return false;
                }
            }
            phi_[a] = w;
            trail_.push_back({false, 0, a});
            for (std::size_t o = 0; o < x_.ops.size(); ++o) {
                const Point xi = x_.ops[o][a];
                if (xi != kNoPoint)
                    queue.emplace_back(xi, y_.ops[o][w]);
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const Undo u = trail_.back();
            trail_.pop_back();
            if (u.is_rel)
                rel_image_[u.rel][u.slot] = kNoPoint;
            else
                phi_[u.slot] = kNoPoint;
        }
    }

    void branch(std::size_t depth)
    {
        while (depth < order_.size() && phi_[order_[depth]] != kNoPoint)
            ++depth;
        if (depth == order_.size()) {
            ++count_;
            if (!(*visit_)(phi_))
                stop_ = true;
            return;
        }
        const Point p = order_[depth];
        for (Point v = 0; static_cast<std::size_t>(v) < y_.size() && !stop_; ++v) {
            if (!allowed_[p][v])
                continue;
            const std::size_t mark = trail_.size();
            if (assign(p, v))
                branch(depth + 1);
            undo(mark);
        }
    }

    const Structure& x_;
    const Structure& y_;
    MorphismSearchOptions opts_;
    StructMorphism phi_;
    std::vector<std::vector<char>> allowed_;
    std::vector<Point> order_;
    std::vector<std::vector<Point>> rel_image_;
    std::vector<Undo> trail_;
    const std::function<bool(const StructMorphism&)>* visit_ = nullptr;
    std::uint64_t count_ = 0;
    std::uint64_t nodes_ = 0;
    bool stop_ = false;
};

} // namespace detail

/// Visits morphisms in search order until `visit` returns false; returns the number visited.
inline std::uint64_t for_each_struct_morphism(const Structure& x, const Structure& y,
                                              const std::function<bool(const StructMorphism&)>& visit,
                                              MorphismSearchOptions opts = {})
{
    return detail::MorphismSearch(x, y, opts).run(visit);
}

inline std::uint64_t count_struct_morphisms(const Structure& x, const Structure& y, MorphismSearchOptions opts = {})
{
    return for_each_struct_morphism(x, y, [](const StructMorphism&) { return true; }, opts);
}

/// All morphisms x -> y, sorted lexicographically.
inline std::vector<StructMorphism> enumerate_struct_morphisms(const Structure& x, const Structure& y,
                                                             MorphismSearchOptions opts = {})
{
    std::vector<StructMorphism> out;
    for_each_struct_morphism(x, y, [&](const StructMorphism& m) {
        out.push_back(m);
        return true;
    }, opts);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sugihara
