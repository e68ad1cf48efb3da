// Command-line driver for the Sugihara algebra toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sugihara/sugihara.hpp>

using namespace sugihara;

namespace {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kResource = 3,
    kParse = 4,
    kIo = 5,
    kInternal = 70,
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format = "text";
    bool unicode = false;
    unsigned threads = 1;
    std::uint64_t size_bound = 0;
    bool json() const { return format == "json"; }
    PrintStyle style() const { return {unicode}; }
};

std::string yes_no(bool v, const Globals& g)
{
    if (g.unicode)
        return v ? "\xE2\x9C\x93" : "\xC3\x97";
    return v ? "yes" : "no";
}

/// Left-justifies to `width` code points.
std::string pad(const std::string& text, std::size_t width)
{
    std::size_t points = 0;
    for (unsigned char c : text)
        points += (c & 0xC0) != 0x80;
    return text + std::string(points < width ? width - points : 1, ' ');
}

std::string join_values(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// "Z<k>", "B<k>", or a path to an algebra document.
FiniteAlgebra resolve_algebra(const std::string& spec)
{
    auto numeric_suffix = [&](char lead) -> std::optional<int> {
        if (spec.size() < 2 || spec[0] != lead)
            return std::nullopt;
        for (std::size_t i = 1; i < spec.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(spec[i])))
                return std::nullopt;
        return std::stoi(spec.substr(1));
    };
    if (auto k = numeric_suffix('Z'))
        return SugiharaChain(*k).algebra();
    if (auto k = numeric_suffix('B'))
        return build_B_direct(*k).algebra;
    const std::string text = read_file(spec);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid algebra document: ") + e.what(), 1, e.byte);
    }
    return algebra_from_json(doc);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_algebra(const Globals& g, int k)
{
    const SugiharaChain z(k);
    const auto subs = subalgebras(z);
    const auto cons = congruences(z);
    if (g.json()) {
        Json j = to_json(z.algebra());
        j["subalgebras"] = subs.size();
        Json cj = Json::array();
        for (const auto& c : cons)
            cj.push_back({{"m", c.m}, {"blocks", c.blocks}});
        j["congruences"] = std::move(cj);
        emit(j);
        return kOk;
    }
    std::cout << "Z" << k << "\n";
    std::cout << "carrier: " << join_values(z.carrier()) << "\n";
    std::cout << "subalgebras: " << subs.size() << "\n";
    std::cout << "congruences: " << cons.size() << "\n";
    for (const auto& c : cons) {
        std::cout << "  ~" << c.m << ":";
        for (const auto& b : c.blocks)
            std::cout << " {" << join_values(b) << "}";
        std::cout << "\n";
    }
    return kOk;
}

int cmd_pez(const Globals& g, int k, bool verify)
{
    const SugiharaChain z(k);
    const auto gens = standard_generators(z);
    const auto closure = monoid_closure(z, gens);
    std::optional<bool> agrees;
    std::size_t brute_size = 0;
    if (verify) {
        const auto brute = partial_endos_bruteforce(z);
        brute_size = brute.size();
        agrees = brute == closure.elements;
    }
    if (g.json()) {
        Json j;
        j["k"] = k;
        Json gj = Json::object();
        for (const auto& gen : gens)
            gj[gen.name] = to_string(gen.map);
        j["generators"] = std::move(gj);
        j["monoid_size"] = closure.elements.size();
        if (agrees) {
            j["bruteforce_size"] = brute_size;
            j["generation_verified"] = *agrees;
        }
        emit(j);
    } else {
        std::cout << "PEZ(" << k << ") generators: " << gens.size() << "\n";
        for (const auto& gen : gens)
            std::cout << "  " << gen.name << " = " << to_string(gen.map) << "\n";
        std::cout << "monoid size (with empty map): " << closure.elements.size() << "\n";
        if (agrees)
            std::cout << "brute force size: " << brute_size << "\n"
                      << "generated monoid equals brute force: " << yes_no(*agrees, g) << "\n";
    }
    return agrees.value_or(true) ? kOk : kCheckFailed;
}

int cmd_dual(const Globals& g, int k, const std::string& of)
{
    const FiniteAlgebra a = of.empty() ? SugiharaChain(k).algebra() : resolve_algebra(of);
    const Structure d = dual_space(a, k);
    if (g.json())
        emit(to_json(d));
    else
        std::cout << render(d, {true});
    return kOk;
}

int cmd_testspace(const Globals& g, int k, bool verify)
{
    const TestSpace y = build_test_space(k);
    std::optional<CertificateReport> ts, ji;
    if (verify) {
        ts = verify_ts_configuration(k);
        ji = verify_join_irreducible(k);
    }
    if (g.json()) {
        Json j = to_json(y.structure);
        j["s"] = y.s;
        j["pivot"] = y.pivot;
        if (verify) {
            j["ts_configuration"] = {{"ok", ts->ok}, {"detail", ts->detail}};
            j["join_irreducible"] = {{"ok", ji->ok}, {"endomorphisms", ji->count}, {"detail", ji->detail}};
        }
        emit(j);
    } else {
        std::cout << render(y.structure);
        if (verify) {
            std::cout << "TS-configuration: " << yes_no(ts->ok, g) << (ts->detail.empty() ? "" : " (" + ts->detail + ")")
                      << "\n";
            std::cout << "join-irreducible: " << yes_no(ji->ok, g) << " (" << ji->count << " endomorphisms"
                      << (ji->detail.empty() ? "" : "; " + ji->detail) << ")\n";
        }
    }
    return (!verify || (ts->ok && ji->ok)) ? kOk : kCheckFailed;
}

int cmd_admalg(const Globals& g, int k, const std::string& method, bool cross_check)
{
    AdmissibilityAlgebra b;
    if (method == "direct")
        b = build_B_direct(k);
    else if (method == "recursive")
        b = build_B_recursive(k);
    else
        b = build_B_via_duality(k).image;
    std::optional<bool> agree;
    if (cross_check) {
        const auto direct = build_B_direct(k).carrier_set();
        const auto dual = build_B_via_duality(k);
        agree = build_B_recursive(k).carrier_set() == direct && dual.isomorphic_to_direct;
    }
    if (g.json()) {
        Json j = to_json(b.algebra);
        j["k"] = k;
        j["s"] = b.s;
        if (agree)
            j["constructions_agree"] = *agree;
        emit(j);
    } else {
        std::cout << "|B_" << k << "| = " << b.algebra.size() << "\n";
        for (Elem e = 0; e < b.algebra.size(); ++e)
            std::cout << "  " << format_label(b.algebra.label(e)) << "\n";
        if (agree)
            std::cout << "direct, recursive and duality constructions agree: " << yes_no(*agree, g) << "\n";
    }
    return agree.value_or(true) ? kOk : kCheckFailed;
}

int cmd_check(const Globals& g, const std::string& path, int k, const std::string& mode)
{
    const std::string text = read_file(path);
    const auto rules = parse_rule_text(text);
    std::vector<std::pair<std::string, Mode>> modes;
    if (mode == "admissible" || mode == "both")
        modes.emplace_back("admissible", Mode::admissible);
    if (mode == "derivable" || mode == "both")
        modes.emplace_back("derivable", Mode::derivable);
    Json out = Json::array();
    for (const Rule& r : rules) {
        const QuasiEquation q = rule_to_quasiequation(r);
        Json rj;
        rj["rule"] = to_string(r, g.style());
        rj["line"] = r.line;
        if (!g.json())
            std::cout << to_string(r, g.style()) << "\n";
        for (const auto& [name, m] : modes) {
            const ValidityReport rep = decide(q, k, m, {g.threads});
            rj[name] = to_json(rep);
            if (!g.json()) {
                std::cout << "  " << name << ": " << yes_no(rep.valid, g) << "\n";
                for (const auto& [v, l] : rep.countermodel)
                    std::cout << "    " << v << " = " << format_label(l) << "\n";
            }
        }
        out.push_back(std::move(rj));
    }
    if (g.json())
        emit(out);
    return kOk;
}

int cmd_freecount(const Globals& g, int k, int s, std::uint64_t budget)
{
    if (s < 1)
        throw InvalidArgument("s must be positive");
    const Structure x = power_structure(k, static_cast<std::size_t>(s));
    const Structure m = alter_ego_structure(alter_ego(k));
    const std::uint64_t n = count_struct_morphisms(x, m, {budget});
    if (g.json())
        emit({{"k", k}, {"s", s}, {"free_algebra_size", n}});
    else
        std::cout << n << "\n";
    return kOk;
}

int cmd_table1(const Globals& g, int max_k)
{
    if (max_k < 2)
        throw InvalidArgument("--max-k must be at least 2");
    Json rows = Json::array();
    bool all_match = true;
    if (!g.json())
        std::cout << std::left << std::setw(4) << "k" << std::setw(4) << "s" << std::setw(10) << "|F(s)|"
                  << std::setw(8) << "|Y_k|" << std::setw(10) << "|E(Y_k)|" << "closed forms\n";
    for (int k = 2; k <= max_k; ++k) {
        const std::size_t s = test_space_arity(k);
        std::optional<std::uint64_t> free;
        if (k <= 4)
            free = count_struct_morphisms(power_structure(k, s), alter_ego_structure(alter_ego(k)));
        const TestSpace y = build_test_space(k);
        const FiniteAlgebra e = hom_functor_E(y.structure, k);
        const std::uint64_t y_form = (std::uint64_t{1} << (k % 2 ? k / 2 + 1 : k / 2)) - 1;
        const bool match = y.structure.size() == y_form && e.size() == admissibility_algebra_size(k);
        all_match = all_match && match;
        if (g.json()) {
            Json r{{"k", k}, {"s", s}, {"Y", y.structure.size()}, {"E_Y", e.size()}, {"closed_forms_match", match}};
            r["free"] = free ? Json(*free) : Json(nullptr);
            rows.push_back(std::move(r));
        } else {
            std::cout << std::setw(4) << k << std::setw(4) << s << std::setw(10)
                      << (free ? std::to_string(*free) : std::string("-")) << std::setw(8) << y.structure.size()
                      << std::setw(10) << e.size() << yes_no(match, g) << "\n";
        }
    }
    if (g.json())
        emit(rows);
    return all_match ? kOk : kCheckFailed;
}

int cmd_table2(const Globals& g, int min_k, int max_k)
{
    if (min_k < 2 || max_k < min_k)
        throw InvalidArgument("need 2 <= --min-k <= --max-k");
    const auto rules = benchmark_rules();
    Json out = Json::array();
    for (const auto& [title, mode] : {std::pair{"admissible", Mode::admissible}, std::pair{"derivable", Mode::derivable}}) {
        if (!g.json()) {
            std::cout << title << "\n" << std::left << std::setw(44) << "  rule";
            for (int k = min_k; k <= max_k; ++k)
                std::cout << std::setw(5) << ("k=" + std::to_string(k));
            std::cout << "even odd\n";
        }
        for (const Rule& r : rules) {
            const QuasiEquation q = rule_to_quasiequation(r);
            std::optional<bool> even, odd;
            bool even_split = false, odd_split = false;
            Json per_k = Json::object();
            std::string cells;
            for (int k = min_k; k <= max_k; ++k) {
                const bool v = decide(q, k, mode, {g.threads}).valid;
                per_k[std::to_string(k)] = v;
                auto& slot = k % 2 ? odd : even;
                auto& split = k % 2 ? odd_split : even_split;
                if (slot && *slot != v)
                    split = true;
                slot = slot.value_or(true) && v;
                cells += pad(yes_no(v, g), 5);
            }
            auto summary = [&](const std::optional<bool>& v, bool split) {
                return split ? std::string("mixed") : v ? yes_no(*v, g) : std::string("-");
            };
            if (g.json()) {
                out.push_back({{"mode", title},
                               {"rule", to_string(r, g.style())},
                               {"by_k", per_k},
                               {"even", summary(even, even_split)},
                               {"odd", summary(odd, odd_split)}});
            } else {
                std::cout << pad("  " + to_string(r, g.style()), 44) << cells << pad(summary(even, even_split), 5)
                          << summary(odd, odd_split) << "\n";
            }
        }
    }
    if (g.json())
        emit(out);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sugihara chains, their natural dualities and admissibility algebras"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--unicode", g.unicode, "Print connectives and verdicts with Unicode symbols");
    app.add_option("--threads", g.threads, "Worker threads for validity checking (0 = all cores)");
    app.add_option("--size-bound", g.size_bound,
                   std::string("Largest power to build (default from ") + kSizeBoundEnv + " or 10^7)");

    int k = 0, s = 0, max_k = 9, min_k = 4;
    bool verify = false, cross = false;
    std::string of, method = "direct", path, mode = "both";
    std::uint64_t budget = 0;

    auto* algebra = app.add_subcommand("algebra", "Carrier, subalgebra count and congruences of Z_k");
    algebra->add_option("k", k)->required()->check(CLI::PositiveNumber);

    auto* pez = app.add_subcommand("pez", "Generators of the partial endomorphism monoid");
    pez->add_option("k", k)->required();
    pez->add_flag("--verify", verify, "Compare the generated monoid with brute force");

    auto* dual = app.add_subcommand("dual", "Dual space of an algebra over the alter ego of Z_k");
    dual->add_option("k", k)->required();
    dual->add_option("--of", of, "Z<m>, B<m> or an algebra JSON file (default Z_k)");

    auto* ts = app.add_subcommand("testspace", "Test space Y_k");
    ts->add_option("k", k)->required();
    ts->add_flag("--verify", verify, "Check the TS-configuration and join-irreducibility");

    auto* adm = app.add_subcommand("admalg", "Admissibility algebra B_k");
    adm->add_option("k", k)->required();
    adm->add_option("--method", method)->check(CLI::IsMember({"direct", "recursive", "duality"}));
    adm->add_flag("--cross-check", cross, "Compare all three constructions");

    auto* check = app.add_subcommand("check", "Decide the rules in a file");
    check->add_option("rulefile", path)->required();
    check->add_option("--k", k)->required();
    check->add_option("--mode", mode)->check(CLI::IsMember({"admissible", "derivable", "both"}));

    auto* free = app.add_subcommand("freecount", "Size of the s-generated free algebra, by counting morphisms");
    free->add_option("k", k)->required();
    free->add_option("s", s)->required();
    free->add_option("--budget", budget, "Abort after this many search nodes (0 = unlimited)");

    auto* t1 = app.add_subcommand("table1", "Free algebra, test space and admissibility algebra sizes");
    t1->add_option("--max-k", max_k);

    auto* t2 = app.add_subcommand("table2", "Admissibility and derivability of the benchmark rules");
    t2->add_option("--min-k", min_k);
    t2->add_option("--max-k", max_k = 8);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (g.size_bound)
            set_size_bound(g.size_bound);
        if (algebra->parsed())
            return cmd_algebra(g, k);
        if (pez->parsed())
            return cmd_pez(g, k, verify);
        if (dual->parsed())
            return cmd_dual(g, k, of);
        if (ts->parsed())
            return cmd_testspace(g, k, verify);
        if (adm->parsed())
            return cmd_admalg(g, k, method, cross);
        if (check->parsed())
            return cmd_check(g, path, k, mode);
        if (free->parsed())
            return cmd_freecount(g, k, s, budget);
        if (t1->parsed())
            return cmd_table1(g, max_k);
        if (t2->parsed())
            return cmd_table2(g, min_k, max_k);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
