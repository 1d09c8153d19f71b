#include "ptasynth/parser.hpp"

#include "ptasynth/error.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ptasynth {

namespace {

// ============================================================================
// Tokens
// ============================================================================

enum class Tok { Ident, Number, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::vector<Token> tokenize(const std::string& text, std::size_t first_line = 1) {
    static const char* two_char[] = {"->", "<=", ">=", ":=", "&&", "||", "==", "<>", "[]"};
    std::vector<Token> out;
    std::size_t line = first_line;
    std::size_t col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
                ++i;
            t.kind = Tok::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            t.kind = Tok::Number;
        } else {
            t.kind = Tok::Sym;
            bool matched = false;
            for (const char* s : two_char) {
                if (text.compare(i, 2, s) == 0) {
                    i += 2;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                if (std::string("<>=:;,&|!()+-*^/").find(c) == std::string::npos)
                    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
                ++i;
            }
        }
        t.text = text.substr(start, i - start);
        col += i - start;
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

// ============================================================================
// Shared recursive-descent cursor
// ============================================================================

class Cursor {
public:
    Cursor(std::vector<Token> toks, const Pta& pta) : toks_(std::move(toks)), pta_(pta) {}

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_sym(const std::string& s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
    }
    bool is_word(const std::string& s) const {
        return peek().kind == Tok::Ident && peek().text == s;
    }
    bool accept(const std::string& s) {
        if (is_sym(s)) {
            next();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " (found '" + (at_end() ? std::string("end of input") : peek().text) + "')",
                         peek().line, peek().column);
    }
    void expect(const std::string& s) {
        if (!accept(s)) fail("expected '" + s + "'");
    }
    std::string ident(const std::string& what) {
        if (peek().kind != Tok::Ident) fail("expected " + what);
        return next().text;
    }
    Integer number() {
        if (peek().kind != Tok::Number) fail("expected a number");
        return Integer(next().text);
    }

    // ---- parameter expressions ----

    Expression expression() {
        if (is_word("inf")) {
            next();
            return Expression::infinity();
        }
        Expression e;
        bool negate = false;
        if (accept("-"))
            negate = true;
        else
            accept("+");
        Expression t = term();
        e = negate ? -t : t;
        while (is_sym("+") || is_sym("-")) {
            bool minus = next().text == "-";
            Expression rhs = term();
            if (minus)
                e -= rhs;
            else
                e += rhs;
        }
        return e;
    }

    Expression term() {
        Expression t = factor();
        for (;;) {
            if (accept("*")) {
                t = t * factor();
            } else if (peek().kind == Tok::Ident && !is_keyword(peek().text) &&
                       pta_.find_param(peek().text)) {
                // implicit product, as in "2p"
                t = t * factor();
            } else {
                break;
            }
        }
        return t;
    }

    Expression factor() {
        if (accept("(")) {
            Expression e = expression();
            expect(")");
            return e;
        }
        if (peek().kind == Tok::Number) return Expression::constant(number());
        if (peek().kind == Tok::Ident) {
            const Token& t = peek();
            auto p = pta_.find_param(t.text);
            if (!p) {
                if (pta_.find_clock(t.text))
                    throw ParseError("clock '" + t.text + "' may not appear in a bound", t.line, t.column);
                throw UndeclaredError("undeclared parameter '" + t.text + "'", t.line, t.column);
            }
            next();
            Expression base = Expression::parameter(*p);
            if (accept("^")) {
                Integer k = number();
                if (k < 1 || k > 64) fail("unsupported exponent");
                Expression r = base;
                for (long i = 1; i < k.get_si(); ++i) r = r * base;
                return r;
            }
            return base;
        }
        fail("expected a parameter expression");
    }

    // ---- atoms ----

    /// Clock term t in {x, -x, x-y}: returns (plus, minus).
    std::pair<std::optional<ClockId>, std::optional<ClockId>> clock_term() {
        bool neg = accept("-");
        ClockId first = clock_ref();
        if (neg) {
            if (is_sym("-") || is_sym("+")) fail("expected a relation after '-" + pta_.clocks[first] + "'");
            return {std::nullopt, first};
        }
        if (is_sym("-") && peek(1).kind == Tok::Ident && pta_.find_clock(peek(1).text)) {
            next();
            ClockId second = clock_ref();
            if (second == first) fail("a clock minus itself is not a constraint");
            return {first, second};
        }
        return {first, std::nullopt};
    }

    ClockId clock_ref() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail("expected a clock");
        auto c = pta_.find_clock(t.text);
        if (!c) throw UndeclaredError("undeclared clock '" + t.text + "'", t.line, t.column);
        next();
        return *c;
    }

    /// "t rel e" rewritten into one or two normal-form atoms.
    std::vector<AtomicConstraint> atom() {
        auto [plus, minus] = clock_term();
        if (peek().kind != Tok::Sym) fail("expected a relation");
        std::string rel = next().text;
        if (rel == "==") rel = "=";
        Expression e = expression();
        AtomicConstraint a{plus, minus, Rel::Le, e};
        AtomicConstraint flipped{minus, plus, Rel::Le, Expression{}};
        auto flip_rhs = [&]() {
            if (e.is_infinite()) fail("a lower bound of infinity is unsatisfiable and not supported");
            flipped.rhs = -e;
        };
        if (rel == "<") {
            a.rel = Rel::Lt;
            return {a};
        }
        if (rel == "<=") return {a};
        if (rel == ">") {
            flip_rhs();
            flipped.rel = Rel::Lt;
            return {flipped};
        }
        if (rel == ">=") {
            flip_rhs();
            return {flipped};
        }
        if (rel == "=") {
            flip_rhs();
            a.origin = AtomOrigin::EqualitySplit;
            flipped.origin = AtomOrigin::EqualitySplit;
            return {a, flipped};
        }
        fail("unknown relation '" + rel + "'");
    }

    SimpleConstraint constraint() {
        SimpleConstraint g;
        if (is_word("true")) {
            next();
            return g;
        }
        for (;;) {
            auto atoms = atom();
            g.atoms.insert(g.atoms.end(), atoms.begin(), atoms.end());
            if (!accept("&") && !accept("&&")) break;
        }
        return g;
    }

    // ---- state properties ----

    StateProperty disjunction() {
        StateProperty p = conjunction();
        while (accept("||") || accept("|")) p = StateProperty::disjunction(std::move(p), conjunction());
        return p;
    }

    StateProperty conjunction() {
        StateProperty p = unary();
        while (accept("&&") || accept("&")) p = StateProperty::conjunction(std::move(p), unary());
        return p;
    }

    StateProperty unary() {
        if (accept("!")) return StateProperty::negation(unary());
        if (accept("(")) {
            StateProperty p = disjunction();
            expect(")");
            return p;
        }
        if (is_word("true") || is_word("false")) return StateProperty::truth(next().text == "true");
        if (is_sym("-")) return atom_property();
        if (peek().kind == Tok::Ident) {
            const Token& t = peek();
            if (auto q = pta_.find_location(t.text)) {
                next();
                return StateProperty::at(*q);
            }
            if (pta_.find_clock(t.text)) return atom_property();
            throw UndeclaredError("undeclared identifier '" + t.text + "'", t.line, t.column);
        }
        fail("expected a state property");
    }

    StateProperty atom_property() {
        auto atoms = atom();
        StateProperty p = StateProperty::of_atom(atoms[0]);
        for (std::size_t i = 1; i < atoms.size(); ++i)
            p = StateProperty::conjunction(std::move(p), StateProperty::of_atom(atoms[i]));
        return p;
    }

    static bool is_keyword(const std::string& s) {
        return s == "reset" || s == "true" || s == "false" || s == "inf" || s == "init" || s == "inv";
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Pta& pta_;
};

struct Line {
    std::size_t number;
    std::string text;
};

std::vector<std::string> ident_list(Cursor& cur, const std::string& what) {
    std::vector<std::string> names;
    if (cur.at_end()) return names;
    for (;;) {
        names.push_back(cur.ident(what));
        if (!cur.accept(",")) break;
    }
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return names;
}

}  // namespace

// ============================================================================
// Model reader
// ============================================================================

Pta parse_model(const std::string& text) {
    Pta pta;
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string s;
        std::size_t n = 0;
        while (std::getline(in, s)) lines.push_back({++n, s});
    }
    auto keyword_of = [](const Line& l) {
        std::size_t i = l.text.find_first_not_of(" \t\r");
        if (i == std::string::npos || l.text[i] == '#') return std::string();
        std::size_t j = i;
        while (j < l.text.size() && (std::isalnum(static_cast<unsigned char>(l.text[j])) || l.text[j] == '_')) ++j;
        return l.text.substr(i, j - i);
    };

    std::set<std::string> names;
    auto declare = [&](const std::string& name, const Token& at) {
        if (!names.insert(name).second)
            throw ParseError("'" + name + "' is declared twice", at.line, at.column);
    };

    bool has_init = false;
    // Pass 1: declarations and locations.  Pass 2: edges.
    for (int pass = 1; pass <= 2; ++pass) {
        for (const auto& l : lines) {
            std::string kw = keyword_of(l);
            if (kw.empty()) continue;
            Cursor cur(tokenize(l.text, l.number), pta);
            // tokenize restarts columns per line, which is what we report
            if (kw == "clocks" || kw == "params") {
                if (pass == 2) continue;
                Token head = cur.next();
                cur.expect(":");
                Token at = cur.peek();
                auto list = ident_list(cur, kw == "clocks" ? "a clock name" : "a parameter name");
                for (const auto& n : list) declare(n, at);
                auto& dst = kw == "clocks" ? pta.clocks : pta.params;
                dst.insert(dst.end(), list.begin(), list.end());
                (void)head;
            } else if (kw == "domain") {
                if (pass == 2) continue;
                cur.next();
                cur.expect(":");
                while (!cur.at_end()) {
                    std::string key = cur.ident("'time' or 'param'");
                    cur.expect("=");
                    const Token& v = cur.peek();
                    std::string value = cur.ident("a domain name");
                    try {
                        if (key == "time")
                            pta.time_domain = parse_time_domain(value);
                        else if (key == "param")
                            pta.param_domain = parse_param_domain(value);
                        else
                            throw std::invalid_argument("unknown domain key '" + key + "'");
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(e.what(), v.line, v.column);
                    }
                }
            } else if (kw == "loc") {
                if (pass == 1) {
                    cur.next();
                    Token at = cur.peek();
                    std::string name = cur.ident("a location name");
                    declare(name, at);
                    pta.locations.push_back(name);
                    pta.invariants.emplace_back();
                    if (cur.is_word("init")) {
                        cur.next();
                        if (has_init) throw ParseError("second initial location", at.line, at.column);
                        has_init = true;
                        pta.initial = pta.locations.size() - 1;
                    }
                    continue;
                }
                // Invariants are read in pass 2, once every clock is known.
                cur.next();
                std::string name = cur.ident("a location name");
                if (cur.is_word("init")) cur.next();
                if (!cur.is_word("inv")) cur.fail("expected 'inv:'");
                cur.next();
                cur.expect(":");
                LocationId q = *pta.find_location(name);
                pta.invariants[q] = cur.constraint();
                if (!cur.at_end()) cur.fail("unexpected trailing input");
            } else if (kw == "edge") {
                if (pass == 1) continue;
                cur.next();
                Transition t;
                auto loc = [&]() {
                    const Token& at = cur.peek();
                    std::string n = cur.ident("a location name");
                    auto q = pta.find_location(n);
                    if (!q) throw UndeclaredError("undeclared location '" + n + "'", at.line, at.column);
                    return *q;
                };
                t.source = loc();
                cur.expect("->");
                t.target = loc();
                cur.expect(":");
                t.guard = cur.constraint();
                cur.expect(";");
                t.action = pta.intern_action(cur.ident("an action name"));
                if (cur.accept(";") && cur.is_word("reset")) {
                    cur.next();
                    std::set<ClockId> reset;
                    for (;;) {
                        const Token& at = cur.peek();
                        ClockId c = cur.clock_ref();
                        if (!cur.accept(":=")) cur.fail("malformed update, expected ':='");
                        if (cur.peek().kind != Tok::Number) cur.fail("malformed update, expected a natural constant");
                        Integer b = cur.number();
                        if (!reset.insert(c).second)
                            throw ParseError("clock reset twice on one edge", at.line, at.column);
                        t.updates.push_back({c, b});
                        if (!cur.accept(",")) break;
                    }
                    cur.accept(";");
                }
                if (!cur.at_end()) cur.fail("unexpected trailing input");
                pta.transitions.push_back(std::move(t));
            } else {
                throw ParseError("unknown declaration '" + kw + "'", l.number, 1);
            }
        }
    }
    if (pta.locations.empty()) throw ParseError("model declares no locations", lines.size() + 1, 1);
    if (!has_init) pta.initial = 0;
    pta.validate();
    return pta;
}

SystemProperty parse_property(const std::string& text, const Pta& pta) {
    Cursor cur(tokenize(text), pta);
    SystemProperty psi;
    if (cur.is_word("EF") || cur.is_word("E")) {
        bool long_form = cur.next().text == "E";
        if (long_form) cur.expect("<>");
        psi.quantifier = Quantifier::ExistsEventually;
    } else if (cur.is_word("AG") || cur.is_word("A")) {
        bool long_form = cur.next().text == "A";
        if (long_form) cur.expect("[]");
        psi.quantifier = Quantifier::ForallAlways;
    } else {
        cur.fail("expected 'EF' or 'AG'");
    }
    psi.phi = cur.disjunction();
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return psi;
}

Expression parse_expression(const std::string& text, const Pta& pta) {
    Cursor cur(tokenize(text), pta);
    Expression e = cur.expression();
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return e;
}

// ============================================================================
// Writer
// ============================================================================

std::string render_model(const Pta& pta) {
    std::ostringstream os;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s;
    };
    os << "clocks: " << join(pta.clocks) << "\n";
    os << "params: " << join(pta.params) << "\n";
    os << "domain: time=" << to_string(pta.time_domain) << " param=" << to_string(pta.param_domain)
       << "\n";
    for (std::size_t q = 0; q < pta.locations.size(); ++q) {
        os << "loc " << pta.locations[q] << (q == pta.initial ? " init" : "")
           << " inv: " << pta.invariants[q].render(pta.clocks, pta.params) << "\n";
    }
    for (const auto& t : pta.transitions) {
        os << "edge " << pta.locations[t.source] << " -> " << pta.locations[t.target] << " : "
           << t.guard.render(pta.clocks, pta.params) << " ; " << pta.actions[t.action] << " ;";
        if (!t.updates.empty()) {
            os << " reset ";
            for (std::size_t i = 0; i < t.updates.size(); ++i)
                os << (i ? ", " : "") << pta.clocks[t.updates[i].clock] << ":=" << t.updates[i].value.get_str();
        }
        os << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ptasynth
