#include "wtg/expr.hpp"

#include "wtg/errors.hpp"

#include <cctype>

namespace wtg {

ParamExpr ParamExpr::clock(int n, int i, const Rational& k) {
    ParamExpr e(n);
    e.a[i] = k;
    return e;
}

ParamExpr ParamExpr::constant(int n, const Rational& b, const Rational& c) {
    ParamExpr e(n);
    e.b = b;
    e.c = c;
    return e;
}

Rational ParamExpr::A() const {
    Rational s = 0;
    for (const auto& x : a) s += x;
    return s;
}

bool ParamExpr::is_constant() const {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

Rational ParamExpr::eval(const Valuation& v, const Rational& p) const {
    Rational s = b + c * p;
    for (size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) s += a[i] * v.at(i);
    return s;
}

Lex ParamExpr::eval(const LexPoint& w) const {
    Lex s{b, c};
    for (size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) s = s + w.at(i) * a[i];
    return s;
}

ParamExpr ParamExpr::operator+(const ParamExpr& o) const {
    ParamExpr r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    r.b += o.b;
    r.c += o.c;
    return r;
}

ParamExpr ParamExpr::operator-(const ParamExpr& o) const { return *this + (-o); }

ParamExpr ParamExpr::operator-() const { return *this * Rational(-1); }

ParamExpr ParamExpr::operator*(const Rational& k) const {
    ParamExpr r = *this;
    for (auto& x : r.a) x *= k;
    r.b *= k;
    r.c *= k;
    return r;
}

int ParamExpr::normalize() {
    const Rational* lead = nullptr;
    for (const auto& x : a)
        if (sgn(x) != 0) { lead = &x; break; }
    if (!lead && sgn(c) != 0) lead = &c;
    if (!lead && sgn(b) != 0) lead = &b;
    if (!lead) return 0;
    Rational k = 1 / *lead;
    int s = sgn(k);
    *this = *this * k;
    return s;
}

std::string ParamExpr::key() const {
    std::string s;
    for (const auto& x : a) { s += x.get_str(); s += ','; }
    s += b.get_str();
    s += ',';
    s += c.get_str();
    return s;
}

namespace {

void append_term(std::string& out, const Rational& k, const std::string& sym) {
    if (sgn(k) == 0) return;
    Rational mag = abs(k);
    if (out.empty()) {
        if (sgn(k) < 0) out += "-";
    } else {
        out += sgn(k) < 0 ? " - " : " + ";
    }
    if (sym.empty()) {
        out += mag.get_str();
    } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += sym;
    }
}

}  // namespace

std::string ParamExpr::str(const std::vector<std::string>& clocks) const {
    std::string out;
    for (size_t i = 0; i < a.size(); ++i) append_term(out, a[i], i < clocks.size() ? clocks[i] : "x" + std::to_string(i + 1));
    append_term(out, b, "");
    append_term(out, c, "p");
    return out.empty() ? "0" : out;
}

ExtRational Piece::eval(const Valuation& v, const Rational& p) const {
    if (inf > 0) return ExtRational::pos_inf();
    if (inf < 0) return ExtRational::neg_inf();
    return ExtRational(e.eval(v, p));
}

std::string Piece::str(const std::vector<std::string>& clocks) const {
    if (inf > 0) return "inf";
    if (inf < 0) return "-inf";
    return e.str(clocks);
}

Piece operator+(const Piece& x, const Piece& y) {
    if (x.inf != 0 && y.inf != 0 && x.inf != y.inf) throw std::logic_error("attempt to add +inf and -inf");
    if (x.inf != 0) return x;
    if (y.inf != 0) return y;
    return Piece::finite(x.e + y.e);
}

ExtRational eval_expr(const Piece& e, const Valuation& v, const Rational& p) { return e.eval(v, p); }

ParamExpr diag_intersection(const ParamExpr& e, const ParamExpr& f) {
    Rational A = e.A(), B = f.A();
    if (sgn(A) == 0 || sgn(B) == 0) throw DiagonalInput();
    ParamExpr r(e.n());
    for (int i = 0; i < e.n(); ++i) r.a[i] = A * f.a[i] - B * e.a[i];
    r.b = A * f.b - B * e.b;
    r.c = A * f.c - B * e.c;
    r.normalize();
    return r;
}

ParamExpr unreset(const ParamExpr& e, const std::vector<int>& y) {
    ParamExpr r = e;
    for (int i : y) r.a.at(i) = 0;
    return r;
}

std::vector<std::string> default_clock_names(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
    return v;
}

ParamExpr parse_expr(const std::string& s, const std::vector<std::string>& clocks) {
    ParamExpr e(static_cast<int>(clocks.size()));
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    bool first = true;
    while (true) {
        skip();
        if (i >= s.size()) break;
        int sgn_term = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn_term = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw InputError("expected '+' or '-' in expression '" + s + "'");
        }
        first = false;
        Rational k = 1;
        bool have_num = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
            k = parse_rational(s.substr(i, j - i));
            i = j;
            have_num = true;
            skip();
            if (i < s.size() && s[i] == '*') { ++i; skip(); }
        }
        std::string sym;
        if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            sym = s.substr(i, j - i);
            i = j;
        }
        if (sym.empty() && !have_num) throw InputError("malformed expression '" + s + "'");
        k *= sgn_term;
        if (sym.empty()) {
            e.b += k;
        } else if (sym == "p") {
            e.c += k;
        } else {
            size_t c = 0;
            while (c < clocks.size() && clocks[c] != sym) ++c;
            if (c == clocks.size()) throw InputError("unknown symbol '" + sym + "' in expression");
            e.a[c] += k;
        }
    }
    if (first) throw InputError("empty expression");
    return e;
}

Piece parse_piece(const std::string& s, const std::vector<std::string>& clocks) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    int n = static_cast<int>(clocks.size());
    if (t == "inf" || t == "+inf") return Piece::pos_inf(n);
    if (t == "-inf") return Piece::neg_inf(n);
    return Piece::finite(parse_expr(s, clocks));
}

}  // namespace wtg
