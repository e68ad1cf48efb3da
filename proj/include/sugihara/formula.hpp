#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "admissibility.hpp"
#include "error.hpp"
#include "term.hpp"

namespace sugihara {

// Grammar, loosest binding first:
//   formula := impl ( '<->' impl )*          left-associative
//   impl    := disj ( '->' impl )?           right-associative
//   disj    := conj ( '|' conj )*
//   conj    := unary ( '&' unary )*
//   unary   := '~' unary | 'abs' '(' formula ')' | '|' formula '|' | '(' formula ')' | variable
// Unicode spellings: the connectives as symbols, with turnstile for '|-'. A line that
// uses any Unicode connective is read in Unicode mode, where '|' delimits the modulus
// and disjunction must be written with the symbol.

/// How '|' is read: as disjunction (ascii) or as the modulus delimiter (unicode).
enum class Syntax { automatic, ascii, unicode };

namespace detail {

enum class Tok { var, lparen, rparen, comma, neg, meet, join, bar, implies, iff, turnstile, abs, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

struct Spelling {
    std::string_view text;
    Tok kind;
};

// Longest spellings first.
inline constexpr Spelling kUnicode[] = {
    {"\xC2\xAC", Tok::neg},         // not sign
    {"\xE2\x88\xA7", Tok::meet},    // logical and
    {"\xE2\x88\xA8", Tok::join},    // logical or
    {"\xE2\x86\x92", Tok::implies}, // rightwards arrow
    {"\xE2\x86\x94", Tok::iff},     // left right arrow
    {"\xE2\x8A\xA2", Tok::turnstile},
};

inline constexpr Spelling kAscii[] = {
    {"<->", Tok::iff}, {"->", Tok::implies}, {"|-", Tok::turnstile}, {"~", Tok::neg}, {"&", Tok::meet},
    {"|", Tok::bar},   {"(", Tok::lparen},   {")", Tok::rparen},      {",", Tok::comma},
};

inline bool uses_unicode(std::string_view text)
{
    for (const auto& sp : kUnicode)
        if (text.find(sp.text) != std::string_view::npos)
            return true;
    return false;
}

inline std::vector<Token> tokenize(std::string_view text, std::size_t line)
{
    std::vector<Token> out;
    std::size_t i = 0, column = 1;
    auto advance = [&](std::size_t bytes) {
        for (std::size_t b = 0; b < bytes; ++b)
            if ((static_cast<unsigned char>(text[i + b]) & 0xC0) != 0x80)
                ++column;
        i += bytes;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        bool matched = false;
        for (const auto* table : {std::begin(kUnicode), std::begin(kAscii)}) {
            const auto* end = table == std::begin(kUnicode) ? std::end(kUnicode) : std::end(kAscii);
            for (const auto* sp = table; sp != end && !matched; ++sp) {
                if (text.substr(i, sp->text.size()) == sp->text
                    && !(sp->kind == Tok::turnstile && text.substr(i, 3) == "|->")) {
                    out.push_back({sp->kind, std::string(sp->text), line, column});
                    advance(sp->text.size());
                    matched = true;
                }
            }
            if (matched)
                break;
        }
        if (matched)
            continue;
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word(text.substr(i, j - i));
            std::size_t k = j;
            while (k < text.size() && (text[k] == ' ' || text[k] == '\t'))
                ++k;
            const Tok kind = (word == "abs" && k < text.size() && text[k] == '(') ? Tok::abs : Tok::var;
            out.push_back({kind, word, line, column});
            advance(j - i);
            continue;
        }
        const auto lead = static_cast<unsigned char>(c);
        const std::size_t width = lead < 0x80 ? 1 : (lead >> 5) == 6 ? 2 : (lead >> 4) == 14 ? 3 : 4;
        throw ParseError("unexpected character '" + std::string(text.substr(i, width)) + "'", line, column);
    }
    out.push_back({Tok::end, "", line, column});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::size_t line, Syntax syntax)
        : toks_(tokenize(text, line)),
          unicode_(syntax == Syntax::unicode || (syntax == Syntax::automatic && uses_unicode(text)))
    {
    }

    Term formula_to_end()
    {
        Term t = formula();
        expect(Tok::end, "end of input");
        return t;
    }

    std::pair<std::vector<Term>, Term> rule()
    {
        std::vector<Term> premises;
        if (peek().kind != Tok::turnstile) {
            premises.push_back(formula());
            while (peek().kind == Tok::comma) {
                next();
                premises.push_back(formula());
            }
        }
        expect(Tok::turnstile, "'|-'");
        Term conclusion = formula();
        expect(Tok::end, "end of rule");
        return {std::move(premises), std::move(conclusion)};
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    void expect(Tok kind, const std::string& what)
    {
        if (peek().kind != kind)
            fail("expected " + what);
        next();
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        const Token& t = peek();
        const std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(what + ", found " + got, t.line, t.column);
    }

    bool is_join(const Token& t) const { return t.kind == Tok::join || (t.kind == Tok::bar && !unicode_); }

    Term formula()
    {
        Term t = implication();
        while (peek().kind == Tok::iff) {
            next();
            t = iff(t, implication());
        }
        return t;
    }

    Term implication()
    {
        Term t = disjunction();
        if (peek().kind == Tok::implies) {
            next();
            return implies(t, implication());
        }
        return t;
    }

    Term disjunction()
    {
        Term t = conjunction();
        while (is_join(peek())) {
            next();
            t = join(t, conjunction());
        }
        return t;
    }

    Term conjunction()
    {
        Term t = unary();
        while (peek().kind == Tok::meet) {
            next();
            t = meet(t, unary());
        }
        return t;
    }

    Term unary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::neg:
            next();
            return neg(unary());
        case Tok::abs: {
            next();
            expect(Tok::lparen, "'('");
            Term inner = formula();
            expect(Tok::rparen, "')'");
            return modulus(inner);
        }
        case Tok::bar: {
            if (!unicode_)
                fail("expected a formula ('|' is disjunction here; write abs(x) for the modulus)");
            next();
            Term inner = formula();
            expect(Tok::bar, "closing '|'");
            return modulus(inner);
        }
        case Tok::lparen: {
            next();
            Term inner = formula();
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::var: {
            std::string name = t.text;
            next();
            return var(std::move(name));
        }
        default: fail("expected a formula");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool unicode_;
};

} // namespace detail

inline Term parse_formula(std::string_view text, Syntax syntax = Syntax::automatic, std::size_t line = 1)
{
    return detail::Parser(text, line, syntax).formula_to_end();
}

struct Rule {
    std::vector<Term> premises;
    Term conclusion;
    std::string text;
    std::size_t line = 1;
};

inline Rule parse_rule(std::string_view text, std::size_t line = 1, Syntax syntax = Syntax::automatic)
{
    auto [premises, conclusion] = detail::Parser(text, line, syntax).rule();
    return {std::move(premises), std::move(conclusion), std::string(text), line};
}

/// One rule per line; '#' starts a comment; blank lines are skipped.
inline std::vector<Rule> parse_rule_file(std::istream& in)
{
    std::vector<Rule> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto first = line.find_first_not_of(" \t");
        const auto last = line.find_last_not_of(" \t\r");
        Rule r = parse_rule(std::string_view(line).substr(0, last + 1), number);
        r.text = line.substr(first, last + 1 - first);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<Rule> parse_rule_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_rule_file(in);
}

/// Each formula a becomes the equation a = a -> a.
inline Equation formula_equation(const Term& a) { return {a, implies(a, a)}; }

inline QuasiEquation rule_to_quasiequation(const Rule& r)
{
    QuasiEquation q;
    for (const Term& p : r.premises)
        q.premises.push_back(formula_equation(p));
    q.conclusion = formula_equation(r.conclusion);
    return q;
}

// ---------------------------------------------------------------------------
// Printing

struct PrintStyle {
    bool unicode = false;
};

namespace detail {

inline int precedence(TermKind k)
{
    switch (k) {
    case TermKind::iff: return 1;
    case TermKind::implies: return 2;
    case TermKind::join: return 3;
    case TermKind::meet: return 4;
    default: return 5;
    }
}

inline void print(const Term& t, PrintStyle st, std::string& out, int min_prec)
{
    const int p = precedence(t.kind());
    const bool paren = p < min_prec;
    if (paren)
        out += '(';
    switch (t.kind()) {
    case TermKind::var: out += t.name(); break;
    case TermKind::neg:
        out += st.unicode ? "\xC2\xAC" : "~";
        print(t.lhs(), st, out, 5);
        break;
    case TermKind::modulus:
        out += st.unicode ? "|" : "abs(";
        print(t.lhs(), st, out, 0);
        out += st.unicode ? "|" : ")";
        break;
    case TermKind::meet:
    case TermKind::join:
    case TermKind::iff: {
        const char* sym = nullptr;
        if (t.kind() == TermKind::meet)
            sym = st.unicode ? " \xE2\x88\xA7 " : " & ";
        else if (t.kind() == TermKind::join)
            sym = st.unicode ? " \xE2\x88\xA8 " : " | ";
        else
            sym = st.unicode ? " \xE2\x86\x94 " : " <-> ";
        print(t.lhs(), st, out, p);
        out += sym;
        print(t.rhs(), st, out, p + 1);
        break;
    }
    case TermKind::implies:
        print(t.lhs(), st, out, p + 1);
        out += st.unicode ? " \xE2\x86\x92 " : " -> ";
        print(t.rhs(), st, out, p);
        break;
    }
    if (paren)
        out += ')';
}

} // namespace detail

/// Minimal parentheses; parse_formula(to_string(t)) == t.
inline std::string to_string(const Term& t, PrintStyle st = {})
{
    std::string out;
    detail::print(t, st, out, 0);
    return out;
}

inline std::string to_string(const Rule& r, PrintStyle st = {})
{
    std::string out;
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(r.premises[i], st);
    }
    if (!r.premises.empty())
        out += ' ';
    out += st.unicode ? "\xE2\x8A\xA2 " : "|- ";
    return out + to_string(r.conclusion, st);
}

/// Five rules on which admissibility and derivability separate the chains.
inline std::vector<Rule> benchmark_rules()
{
    return parse_rule_text("p <-> ~p |- q <-> r\n"
                           "p, ~p | q |- q\n"
                           "p, (p -> abs(q)) -> (p -> q) |- p -> q\n"
                           "q, p -> (q -> r) |- p -> r\n"
                           "~abs(p) | q |- q\n");
}

} // namespace sugihara
