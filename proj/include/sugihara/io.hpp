#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "admissibility.hpp"
#include "algebra.hpp"
#include "error.hpp"
#include "structure.hpp"

namespace sugihara {

using Json = nlohmann::ordered_json;

/// Single coordinates print as plain integers, longer labels as (a,b,...).
inline std::string format_label(const Label& l)
{
    if (l.size() == 1)
        return std::to_string(l[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(l[i]);
    }
    return out + ")";
}

inline Json label_json(const Label& l)
{
    if (l.size() == 1)
        return l[0];
    return Json(l);
}

inline Label label_from_json(const Json& j)
{
    if (j.is_number_integer())
        return {j.get<int>()};
    if (j.is_array() && !j.empty())
        return j.get<Label>();
    throw InvalidArgument("element label must be an integer or a nonempty integer array");
}

// ---------------------------------------------------------------------------
// Algebras

inline Json to_json(const FiniteAlgebra& a)
{
    const std::size_t n = a.size();
    Json carrier = Json::array();
    for (Elem e = 0; e < n; ++e)
        carrier.push_back(label_json(a.label(e)));
    auto table = [&](auto op) {
        Json rows = Json::array();
        for (Elem x = 0; x < n; ++x) {
            Json row = Json::array();
            for (Elem y = 0; y < n; ++y)
                row.push_back(op(x, y));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    Json neg = Json::array();
    for (Elem x = 0; x < n; ++x)
        neg.push_back(a.neg(x));
    Json j;
    j["name"] = a.name();
    j["carrier"] = std::move(carrier);
    j["meet"] = table([&](Elem x, Elem y) { return a.meet(x, y); });
    j["join"] = table([&](Elem x, Elem y) { return a.join(x, y); });
    j["neg"] = std::move(neg);
    j["implies"] = table([&](Elem x, Elem y) { return a.implies(x, y); });
    return j;
}

inline FiniteAlgebra algebra_from_json(const Json& j)
{
    try {
        std::vector<Label> carrier;
        for (const Json& e : j.at("carrier"))
            carrier.push_back(label_from_json(e));
        const std::size_t n = carrier.size();
        auto table = [&](const char* key) {
            std::vector<Elem> out;
            const Json& rows = j.at(key);
            if (!rows.is_array() || rows.size() != n)
                throw InvalidArgument(std::string("table '") + key + "' must have one row per element");
            for (const Json& row : rows) {
                if (!row.is_array() || row.size() != n)
                    throw InvalidArgument(std::string("table '") + key + "' must be square");
                for (const Json& v : row)
                    out.push_back(v.get<Elem>());
            }
            return out;
        };
        std::vector<Elem> neg = j.at("neg").get<std::vector<Elem>>();
        return FiniteAlgebra::from_tables(j.value("name", std::string("A")), std::move(carrier), table("meet"),
                                          table("join"), std::move(neg), table("implies"));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed algebra document: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Structures

inline Json to_json(const Structure& s)
{
    Json j;
    j["name"] = s.name;
    j["k"] = s.k;
    Json pts = Json::array();
    for (const Label& p : s.points)
        pts.push_back(p);
    j["points"] = std::move(pts);
    Json ops = Json::object();
    for (std::size_t o = 0; o < s.ops.size(); ++o) {
        Json action = Json::array();
        for (Point p : s.domain(o))
            action.push_back({p, s.ops[o][p]});
        ops[s.op_names[o]] = {{"domain", s.domain(o)}, {"action", std::move(action)}};
    }
    j["operations"] = std::move(ops);
    Json rels = Json::object();
    for (std::size_t r = 0; r < s.rels.size(); ++r)
        rels[s.rel_names[r]] = s.classes(r);
    j["relations"] = std::move(rels);
    Json consts = Json::object();
    for (std::size_t c = 0; c < s.consts.size(); ++c)
        consts[s.const_names[c]] = s.consts[c];
    j["constants"] = std::move(consts);
    return j;
}

struct RenderOptions {
    /// Name points e1, e2, ... and list their tuples, instead of using the tuples as names.
    bool enumerate_points = false;
};

/// Line-oriented listing of a structure: points, each operation's domain and action,
/// relation classes and constants. Stable for a given structure.
inline std::string render(const Structure& s, RenderOptions opts = {})
{
    auto name = [&](Point p) {
        return opts.enumerate_points ? "e" + std::to_string(p + 1) : format_label(s.points[p]);
    };
    std::ostringstream out;
    out << "structure " << s.name << " over Z" << s.k << "\n";
    out << "points " << s.size() << "\n";
    if (opts.enumerate_points)
        for (std::size_t p = 0; p < s.size(); ++p)
            out << "  " << name(static_cast<Point>(p)) << " = " << format_label(s.points[p]) << "\n";
    for (std::size_t o = 0; o < s.ops.size(); ++o) {
        const auto dom = s.domain(o);
        out << s.op_names[o] << ": dom {";
        for (std::size_t i = 0; i < dom.size(); ++i)
            out << (i ? ", " : "") << name(dom[i]);
        out << "}";
        if (!dom.empty()) {
            out << ";";
            for (std::size_t i = 0; i < dom.size(); ++i)
                out << (i ? ", " : " ") << name(dom[i]) << " -> " << name(s.ops[o][dom[i]]);
        }
        out << "\n";
    }
    for (std::size_t r = 0; r < s.rels.size(); ++r) {
        out << s.rel_names[r] << ":";
        for (const auto& cls : s.classes(r)) {
            out << " {";
            for (std::size_t i = 0; i < cls.size(); ++i)
                out << (i ? ", " : "") << name(cls[i]);
            out << "}";
        }
        out << "\n";
    }
    for (std::size_t c = 0; c < s.consts.size(); ++c)
        out << "constant " << s.const_names[c] << ": " << name(s.consts[c]) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Validity reports

inline Json to_json(const ValidityReport& r)
{
    Json j;
    j["verdict"] = r.valid ? "valid" : "fails";
    j["algebra"] = r.algebra;
    if (!r.valid) {
        Json cm = Json::object();
        for (const auto& [v, l] : r.countermodel)
            cm[v] = label_json(l);
        j["countermodel"] = std::move(cm);
    }
    return j;
}

/// A verdict line, then one `var = value` line per variable of a countermodel.
inline std::string render(const ValidityReport& r)
{
    std::string out = (r.valid ? "valid on " : "fails on ") + r.algebra + "\n";
    for (const auto& [v, l] : r.countermodel)
        out += "  " + v + " = " + format_label(l) + "\n";
    return out;
}

} // namespace sugihara
