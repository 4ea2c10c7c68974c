#include "wtg/game.hpp"

#include "wtg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wtg {

const char* to_string(Owner o) {
    switch (o) {
        case Owner::Min: return "min";
        case Owner::Max: return "max";
        case Owner::Target: return "target";
    }
    return "?";
}

const char* to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

int Game::clock_index(const std::string& name) const {
    for (size_t i = 0; i < clocks.size(); ++i)
        if (clocks[i] == name) return static_cast<int>(i);
    return -1;
}

int Game::location_index(const std::string& name) const {
    for (size_t i = 0; i < locations.size(); ++i)
        if (locations[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> Game::outgoing(int loc) const {
    std::vector<int> out;
    for (size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].source == loc) out.push_back(static_cast<int>(i));
    return out;
}

namespace {

struct Token {
    std::string text;
    int col;  // 1-based
    bool quoted = false;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        if (ch == '"') {
            size_t end = line.find('"', i + 1);
            if (end == std::string::npos) throw ParseError(lineno, static_cast<int>(i) + 1, "unterminated string");
            toks.push_back({line.substr(i + 1, end - i - 1), static_cast<int>(i) + 2, true});
            i = end + 1;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '"' && line[j] != '#') ++j;
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

long parse_weight(const std::string& s, int line, int col) {
    bool ok = !s.empty();
    for (size_t i = 0; i < s.size() && ok; ++i)
        ok = std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && (s[i] == '-' || s[i] == '+') && s.size() > 1);
    if (!ok) {
        if (s.find('/') != std::string::npos || s.find('.') != std::string::npos)
            throw ParseError(line, col, "non-integer weight '" + s + "'");
        throw ParseError(line, col, "malformed weight '" + s + "'");
    }
    return std::stol(s);
}

Owner parse_owner(const std::string& s, int line, int col) {
    if (s == "min") return Owner::Min;
    if (s == "max") return Owner::Max;
    if (s == "target") return Owner::Target;
    throw ParseError(line, col, "expected min, max or target, got '" + s + "'");
}

// Guard lexer: identifiers, integers, comparison operators, '&&'.
struct GTok {
    enum Kind { Ident, Number, Op, And } kind;
    std::string text;
    int pos;
};

std::vector<GTok> lex_guard(const std::string& s, int line, int col0) {
    std::vector<GTok> out;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        int pos = static_cast<int>(i);
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({GTok::Ident, s.substr(i, j - i), pos});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/' || s[j] == '.')) ++j;
            out.push_back({GTok::Number, s.substr(i, j - i), pos});
            i = j;
        } else if (s.compare(i, 2, "&&") == 0) {
            out.push_back({GTok::And, "&&", pos});
            i += 2;
        } else if (s.compare(i, 2, "<=") == 0 || s.compare(i, 2, ">=") == 0 || s.compare(i, 2, "==") == 0) {
            out.push_back({GTok::Op, s.substr(i, 2), pos});
            i += 2;
        } else if (ch == '<' || ch == '>' || ch == '=') {
            out.push_back({GTok::Op, std::string(1, ch), pos});
            i += 1;
        } else {
            throw ParseError(line, col0 + pos, std::string("unexpected character '") + ch + "' in guard");
        }
    }
    return out;
}

CmpOp op_from(const std::string& s) {
    if (s == "<") return CmpOp::Lt;
    if (s == "<=") return CmpOp::Le;
    if (s == ">=") return CmpOp::Ge;
    if (s == ">") return CmpOp::Gt;
    return CmpOp::Eq;
}

CmpOp flip(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return CmpOp::Gt;
        case CmpOp::Le: return CmpOp::Ge;
        case CmpOp::Ge: return CmpOp::Le;
        case CmpOp::Gt: return CmpOp::Lt;
        default: return op;
    }
}

Guard parse_guard_at(const std::string& text, const std::vector<std::string>& clocks, long M, int line, int col0) {
    Guard g;
    auto toks = lex_guard(text, line, col0);
    if (toks.size() == 1 && toks[0].kind == GTok::Ident && toks[0].text == "true") return g;
    size_t i = 0;
    auto fail = [&](size_t k, const std::string& msg) -> ParseError {
        int pos = k < toks.size() ? toks[k].pos : static_cast<int>(text.size());
        return ParseError(line, col0 + pos, msg);
    };
    auto clock_of = [&](size_t k) {
        for (size_t c = 0; c < clocks.size(); ++c)
            if (clocks[c] == toks[k].text) return static_cast<int>(c);
        throw fail(k, "unknown clock '" + toks[k].text + "'");
    };
    auto bound_of = [&](size_t k) {
        const std::string& s = toks[k].text;
        if (s.find('/') != std::string::npos || s.find('.') != std::string::npos)
            throw fail(k, "guard bound must be a nonnegative integer");
        long b = std::stol(s);
        if (b > M) throw fail(k, "guard bound exceeds M");
        return b;
    };
    while (true) {
        // conjunct: [c OP] x OP c   or   c OP x
        std::vector<GTok> part;
        size_t start = i;
        while (i < toks.size() && toks[i].kind != GTok::And) part.push_back(toks[i++]);
        auto kinds = [&](std::initializer_list<GTok::Kind> ks) {
            if (part.size() != ks.size()) return false;
            size_t k = 0;
            for (auto kd : ks)
                if (part[k++].kind != kd) return false;
            return true;
        };
        if (kinds({GTok::Ident, GTok::Op, GTok::Number})) {
            g.atoms.push_back({clock_of(start), op_from(part[1].text), bound_of(start + 2)});
        } else if (kinds({GTok::Number, GTok::Op, GTok::Ident})) {
            g.atoms.push_back({clock_of(start + 2), flip(op_from(part[1].text)), bound_of(start)});
        } else if (kinds({GTok::Number, GTok::Op, GTok::Ident, GTok::Op, GTok::Number})) {
            int c = clock_of(start + 2);
            g.atoms.push_back({c, flip(op_from(part[1].text)), bound_of(start)});
            g.atoms.push_back({c, op_from(part[3].text), bound_of(start + 4)});
        } else {
            for (size_t k = 0; k + 2 < part.size(); ++k)
                if (part[k].kind == GTok::Ident && part[k + 1].kind == GTok::Ident)
                    throw fail(start + k, "malformed atom");
            bool two_clocks = std::count_if(part.begin(), part.end(), [](const GTok& t) { return t.kind == GTok::Ident; }) >= 2;
            throw fail(start, two_clocks ? "diagonal guards are not supported" : "malformed guard atom");
        }
        if (i >= toks.size()) break;
        ++i;  // skip &&
        if (i >= toks.size()) throw fail(i, "dangling '&&'");
    }
    return g;
}

std::string atom_to_string(const Atom& a, const std::vector<std::string>& clocks) {
    return clocks[a.clock] + " " + to_string(a.op) + " " + std::to_string(a.bound);
}

}  // namespace

Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks, long M) {
    return parse_guard_at(text, clocks, M, 1, 1);
}

std::string guard_to_string(const Guard& g, const std::vector<std::string>& clocks) {
    if (g.empty_set) {
        // no atom syntax for the empty set; a contradictory pair represents it
        return clocks.empty() ? "true" : clocks[0] + " < 0";
    }
    if (g.atoms.empty()) return "true";
    std::string s;
    for (size_t i = 0; i < g.atoms.size(); ++i) {
        if (i) s += " && ";
        s += atom_to_string(g.atoms[i], clocks);
    }
    return s;
}

Game parse_game(const std::string& text) {
    Game g;
    bool have_clocks = false, have_bound = false, have_init = false;
    struct PendingEdge {
        std::string from, to, guard;
        std::vector<std::pair<std::string, int>> resets;
        long weight;
        int line, col_from, col_to, col_guard;
    };
    std::vector<PendingEdge> edges;
    std::string init_name;
    int init_line = 0, init_col = 0;
    std::vector<std::pair<Token, int>> init_vals;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokenize_line(raw, lineno);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        if (kw == "clocks") {
            if (toks.size() < 2) throw ParseError(lineno, toks[0].col, "expected at least one clock name");
            for (size_t i = 1; i < toks.size(); ++i) {
                const auto& name = toks[i].text;
                if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
                    throw ParseError(lineno, toks[i].col, "bad clock name '" + name + "'");
                if (std::find(g.clocks.begin(), g.clocks.end(), name) != g.clocks.end())
                    throw ParseError(lineno, toks[i].col, "duplicate clock '" + name + "'");
                g.clocks.push_back(name);
            }
            have_clocks = true;
        } else if (kw == "bound") {
            if (toks.size() != 2) throw ParseError(lineno, toks[0].col, "expected 'bound M'");
            long M = 0;
            try { M = parse_weight(toks[1].text, lineno, toks[1].col); } catch (const ParseError&) {
                throw ParseError(lineno, toks[1].col, "bound must be a positive integer");
            }
            if (M <= 0) throw ParseError(lineno, toks[1].col, "bound must be a positive integer");
            g.M = M;
            have_bound = true;
        } else if (kw == "location") {
            if (toks.size() < 3) throw ParseError(lineno, toks[0].col, "expected 'location NAME min|max|target'");
            Location loc;
            loc.name = toks[1].text;
            if (g.location_index(loc.name) >= 0) throw ParseError(lineno, toks[1].col, "duplicate location '" + loc.name + "'");
            loc.owner = parse_owner(toks[2].text, lineno, toks[2].col);
            for (size_t i = 3; i < toks.size(); ++i) {
                const auto& t = toks[i].text;
                if (t.rfind("weight=", 0) == 0) loc.rate = parse_weight(t.substr(7), lineno, toks[i].col + 7);
                else if (t == "urgent") loc.urgent = true;
                else throw ParseError(lineno, toks[i].col, "unexpected '" + t + "'");
            }
            if (loc.owner == Owner::Target) loc.rate = 0;
            g.locations.push_back(loc);
        } else if (kw == "edge") {
            if (toks.size() < 4 || toks[2].text != "->") throw ParseError(lineno, toks[0].col, "expected 'edge A -> B ...'");
            PendingEdge e{toks[1].text, toks[3].text, "true", {}, 0, lineno, toks[1].col, toks[3].col, 0};
            for (size_t i = 4; i < toks.size(); ++i) {
                const auto& t = toks[i].text;
                if (t == "guard") {
                    if (i + 1 >= toks.size()) throw ParseError(lineno, toks[i].col, "missing guard text");
                    e.guard = toks[i + 1].text;
                    e.col_guard = toks[i + 1].col;
                    ++i;
                } else if (t == "reset") {
                    if (i + 1 >= toks.size()) throw ParseError(lineno, toks[i].col, "missing reset list");
                    std::string list = toks[i + 1].text;
                    int col = toks[i + 1].col;
                    size_t pos = 0;
                    while (pos <= list.size()) {
                        size_t comma = list.find(',', pos);
                        if (comma == std::string::npos) comma = list.size();
                        std::string name = list.substr(pos, comma - pos);
                        if (!name.empty()) e.resets.push_back({name, col + static_cast<int>(pos)});
                        pos = comma + 1;
                    }
                    ++i;
                } else if (t.rfind("weight=", 0) == 0) {
                    e.weight = parse_weight(t.substr(7), lineno, toks[i].col + 7);
                } else {
                    throw ParseError(lineno, toks[i].col, "unexpected '" + t + "'");
                }
            }
            edges.push_back(e);
        } else if (kw == "init") {
            if (toks.size() < 2) throw ParseError(lineno, toks[0].col, "expected 'init NAME x=v ...'");
            init_name = toks[1].text;
            init_line = lineno;
            init_col = toks[1].col;
            for (size_t i = 2; i < toks.size(); ++i) init_vals.push_back({toks[i], lineno});
            have_init = true;
        } else {
            throw ParseError(lineno, toks[0].col, "unknown directive '" + kw + "'");
        }
    }
    if (!have_clocks) throw ParseError(lineno + 1, 1, "missing 'clocks' line");
    if (!have_bound) throw ParseError(lineno + 1, 1, "missing 'bound' line");
    if (!have_init) throw ParseError(lineno + 1, 1, "missing 'init' line");

    for (const auto& e : edges) {
        Transition t;
        t.source = g.location_index(e.from);
        if (t.source < 0) throw ParseError(e.line, e.col_from, "unknown location '" + e.from + "'");
        t.target = g.location_index(e.to);
        if (t.target < 0) throw ParseError(e.line, e.col_to, "unknown location '" + e.to + "'");
        t.guard = e.col_guard ? parse_guard_at(e.guard, g.clocks, g.M, e.line, e.col_guard) : Guard{};
        for (const auto& [name, col] : e.resets) {
            int c = g.clock_index(name);
            if (c < 0) throw ParseError(e.line, col, "unknown clock '" + name + "'");
            t.resets.push_back(c);
        }
        std::sort(t.resets.begin(), t.resets.end());
        t.resets.erase(std::unique(t.resets.begin(), t.resets.end()), t.resets.end());
        t.weight = e.weight;
        g.transitions.push_back(t);
    }
    g.init_location = g.location_index(init_name);
    if (g.init_location < 0) throw ParseError(init_line, init_col, "unknown location '" + init_name + "'");
    g.init_valuation.assign(g.clocks.size(), Rational(0));
    for (const auto& [tok, line] : init_vals) {
        auto eq = tok.text.find('=');
        if (eq == std::string::npos) throw ParseError(line, tok.col, "expected clock=value");
        int c = g.clock_index(tok.text.substr(0, eq));
        if (c < 0) throw ParseError(line, tok.col, "unknown clock '" + tok.text.substr(0, eq) + "'");
        try {
            g.init_valuation[c] = parse_rational(tok.text.substr(eq + 1));
        } catch (const InputError& ex) {
            throw ParseError(line, tok.col + static_cast<int>(eq) + 1, ex.what());
        }
    }
    validate(g);
    return g;
}

void validate(const Game& g) {
    if (g.M <= 0) throw InputError("bound must be positive");
    for (size_t i = 0; i < g.locations.size(); ++i)
        for (size_t j = i + 1; j < g.locations.size(); ++j)
            if (g.locations[i].name == g.locations[j].name) throw InputError("duplicate location '" + g.locations[i].name + "'");
    for (const auto& t : g.transitions) {
        if (t.source < 0 || t.source >= static_cast<int>(g.locations.size()) || t.target < 0 ||
            t.target >= static_cast<int>(g.locations.size()))
            throw InputError("transition refers to an unknown location");
        for (const auto& a : t.guard.atoms) {
            if (a.clock < 0 || a.clock >= g.num_clocks()) throw InputError("unknown clock in guard");
            if (a.bound < 0) throw InputError("negative guard bound");
            if (a.bound > g.M) throw InputError("guard bound exceeds M");
        }
        for (int c : t.resets)
            if (c < 0 || c >= g.num_clocks()) throw InputError("unknown clock in reset");
    }
    if (g.init_location < 0 || g.init_location >= static_cast<int>(g.locations.size()))
        throw InputError("unknown initial location");
    if (static_cast<int>(g.init_valuation.size()) != g.num_clocks()) throw InputError("initial valuation is not total");
    for (const auto& v : g.init_valuation)
        if (v < 0 || v > g.M) throw InputError("initial valuation outside [0, M]");
}

Game parse_game_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON syntax error: ") + e.what());
    }
    try {
        Game g;
        for (const auto& c : j.at("clocks")) g.clocks.push_back(c.get<std::string>());
        g.M = j.at("bound").get<long>();
        for (const auto& l : j.at("locations")) {
            Location loc;
            loc.name = l.at("name").get<std::string>();
            std::string owner = l.at("owner").get<std::string>();
            loc.owner = parse_owner(owner, 0, 0);
            if (l.contains("weight")) {
                if (!l["weight"].is_number_integer()) throw InputError("non-integer weight");
                loc.rate = l["weight"].get<long>();
            }
            loc.urgent = l.value("urgent", false);
            if (loc.owner == Owner::Target) loc.rate = 0;
            g.locations.push_back(loc);
        }
        for (const auto& e : j.at("edges")) {
            Transition t;
            t.source = g.location_index(e.at("from").get<std::string>());
            t.target = g.location_index(e.at("to").get<std::string>());
            if (t.source < 0 || t.target < 0) throw InputError("unknown location in edge");
            t.guard = parse_guard(e.value("guard", std::string("true")), g.clocks, g.M);
            if (e.contains("reset"))
                for (const auto& c : e["reset"]) {
                    int idx = g.clock_index(c.get<std::string>());
                    if (idx < 0) throw InputError("unknown clock '" + c.get<std::string>() + "'");
                    t.resets.push_back(idx);
                }
            std::sort(t.resets.begin(), t.resets.end());
            t.resets.erase(std::unique(t.resets.begin(), t.resets.end()), t.resets.end());
            if (e.contains("weight")) {
                if (!e["weight"].is_number_integer()) throw InputError("non-integer weight");
                t.weight = e["weight"].get<long>();
            }
            g.transitions.push_back(t);
        }
        const auto& init = j.at("init");
        g.init_location = g.location_index(init.at("location").get<std::string>());
        if (g.init_location < 0) throw InputError("unknown initial location");
        g.init_valuation.assign(g.clocks.size(), Rational(0));
        if (init.contains("valuation"))
            for (const auto& [k, v] : init["valuation"].items()) {
                int c = g.clock_index(k);
                if (c < 0) throw InputError("unknown clock '" + k + "'");
                g.init_valuation[c] = v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
            }
        validate(g);
        return g;
    } catch (const ParseError& e) {
        throw InputError(e.what());
    } catch (const json::exception& e) {
        throw InputError(std::string("bad game JSON: ") + e.what());
    }
}

Game load_game_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_game_json(text);
    return parse_game(text);
}

std::string print_game(const Game& g) {
    std::ostringstream out;
    out << "clocks";
    for (const auto& c : g.clocks) out << ' ' << c;
    out << "\nbound " << g.M << '\n';
    for (const auto& l : g.locations) {
        out << "location " << l.name << ' ' << to_string(l.owner);
        if (l.owner != Owner::Target) out << " weight=" << l.rate;
        if (l.urgent) out << " urgent";
        out << '\n';
    }
    for (const auto& t : g.transitions) {
        out << "edge " << g.locations[t.source].name << " -> " << g.locations[t.target].name << " guard \""
            << guard_to_string(t.guard, g.clocks) << '"';
        if (!t.resets.empty()) {
            out << " reset ";
            for (size_t i = 0; i < t.resets.size(); ++i) out << (i ? "," : "") << g.clocks[t.resets[i]];
        }
        out << " weight=" << t.weight << '\n';
    }
    out << "init " << g.locations[g.init_location].name;
    for (size_t i = 0; i < g.clocks.size(); ++i) out << ' ' << g.clocks[i] << '=' << to_string(g.init_valuation[i]);
    out << '\n';
    return out.str();
}

bool atom_sat(const Atom& a, const Rational& v) {
    int c = cmp(v, Rational(a.bound));
    switch (a.op) {
        case CmpOp::Lt: return c < 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ge: return c >= 0;
        case CmpOp::Gt: return c > 0;
    }
    return false;
}

bool guard_sat(const Guard& g, const Valuation& v) {
    if (g.empty_set) return false;
    for (const auto& a : g.atoms)
        if (!atom_sat(a, v.at(a.clock))) return false;
    return true;
}

Guard normalize_guard(const Guard& g) {
    if (g.empty_set) return g;
    struct Bounds {
        bool has_lo = false, lo_strict = false, has_hi = false, hi_strict = false;
        long lo = 0, hi = 0;
    };
    std::vector<int> order;
    std::map<int, Bounds> b;
    for (const auto& a : g.atoms) {
        if (!b.count(a.clock)) order.push_back(a.clock);
        auto& bd = b[a.clock];
        auto tighten_lo = [&](long v, bool strict) {
            if (!bd.has_lo || v > bd.lo || (v == bd.lo && strict)) { bd.lo = v; bd.lo_strict = strict; }
            bd.has_lo = true;
        };
        auto tighten_hi = [&](long v, bool strict) {
            if (!bd.has_hi || v < bd.hi || (v == bd.hi && strict)) { bd.hi = v; bd.hi_strict = strict; }
            bd.has_hi = true;
        };
        switch (a.op) {
            case CmpOp::Lt: tighten_hi(a.bound, true); break;
            case CmpOp::Le: tighten_hi(a.bound, false); break;
            case CmpOp::Eq: tighten_lo(a.bound, false); tighten_hi(a.bound, false); break;
            case CmpOp::Ge: tighten_lo(a.bound, false); break;
            case CmpOp::Gt: tighten_lo(a.bound, true); break;
        }
    }
    Guard out;
    for (int c : order) {
        auto& bd = b[c];
        // x >= 0 is implied by the domain
        if (bd.has_lo && bd.lo == 0 && !bd.lo_strict) bd.has_lo = false;
        if (bd.has_hi && (bd.hi < 0 || (bd.hi == 0 && bd.hi_strict))) { out.atoms.clear(); out.empty_set = true; return out; }
        if (bd.has_lo && bd.has_hi && (bd.lo > bd.hi || (bd.lo == bd.hi && (bd.lo_strict || bd.hi_strict)))) {
            out.atoms.clear();
            out.empty_set = true;
            return out;
        }
        if (bd.has_lo && bd.has_hi && bd.lo == bd.hi) {
            out.atoms.push_back({c, CmpOp::Eq, bd.lo});
            continue;
        }
        if (bd.has_lo) out.atoms.push_back({c, bd.lo_strict ? CmpOp::Gt : CmpOp::Ge, bd.lo});
        if (bd.has_hi) out.atoms.push_back({c, bd.hi_strict ? CmpOp::Lt : CmpOp::Le, bd.hi});
    }
    return out;
}

std::vector<Guard> guard_complement(const Guard& g) {
    Guard n = normalize_guard(g);
    if (n.empty_set) return {Guard{}};
    // Split equalities into >= and <= so every atom has a single-atom negation.
    std::vector<Atom> seq;
    for (const auto& a : n.atoms) {
        if (a.op == CmpOp::Eq) {
            seq.push_back({a.clock, CmpOp::Ge, a.bound});
            seq.push_back({a.clock, CmpOp::Le, a.bound});
        } else {
            seq.push_back(a);
        }
    }
    auto negate = [](const Atom& a) {
        Atom r = a;
        switch (a.op) {
            case CmpOp::Lt: r.op = CmpOp::Ge; break;
            case CmpOp::Le: r.op = CmpOp::Gt; break;
            case CmpOp::Ge: r.op = CmpOp::Lt; break;
            case CmpOp::Gt: r.op = CmpOp::Le; break;
            case CmpOp::Eq: break;
        }
        return r;
    };
    std::vector<Guard> out;
    for (size_t i = 0; i < seq.size(); ++i) {
        Guard piece;
        for (size_t k = 0; k < i; ++k) piece.atoms.push_back(seq[k]);
        piece.atoms.push_back(negate(seq[i]));
        piece = normalize_guard(piece);
        if (!piece.empty_set) out.push_back(piece);
    }
    return out;
}

std::optional<int> depth(const Game& g) {
    int n = static_cast<int>(g.locations.size());
    std::vector<int> state(n, 0), best(n, 0);
    bool cyclic = false;
    std::function<void(int)> dfs = [&](int u) {
        state[u] = 1;
        for (const auto& t : g.transitions) {
            if (t.source != u) continue;
            if (state[t.target] == 1) { cyclic = true; continue; }
            if (state[t.target] == 0) dfs(t.target);
            best[u] = std::max(best[u], best[t.target] + 1);
        }
        state[u] = 2;
    };
    for (int u = 0; u < n; ++u)
        if (state[u] == 0) dfs(u);
    if (cyclic) return std::nullopt;
    int d = 0;
    for (int u = 0; u < n; ++u) d = std::max(d, best[u]);
    return d;
}

WeightStats weight_stats(const Game& g) {
    WeightStats s;
    for (const auto& l : g.locations) s.W_loc = std::max(s.W_loc, std::labs(l.rate));
    for (const auto& t : g.transitions) s.W_tr = std::max(s.W_tr, std::labs(t.weight));
    s.W_e = g.M * s.W_loc + s.W_tr;
    return s;
}

}  // namespace wtg
