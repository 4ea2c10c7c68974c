#pragma once

#include "wtg/rational.hpp"

#include <string>
#include <vector>

namespace wtg {

using Valuation = std::vector<Rational>;

// b + c*eps for a positive infinitesimal eps; ordered lexicographically.
struct Lex {
    Rational b = 0;
    Rational c = 0;

    Lex() = default;
    Lex(Rational b_, Rational c_ = 0) : b(std::move(b_)), c(std::move(c_)) {}

    int sign() const { return sgn(b) != 0 ? sgn(b) : sgn(c); }
    Lex operator+(const Lex& o) const { return {b + o.b, c + o.c}; }
    Lex operator-(const Lex& o) const { return {b - o.b, c - o.c}; }
    Lex operator-() const { return {-b, -c}; }
    Lex operator*(const Rational& k) const { return {b * k, c * k}; }
    Lex operator/(const Rational& k) const { return {b / k, c / k}; }
    bool operator==(const Lex& o) const { return b == o.b && c == o.c; }
    bool operator<(const Lex& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Lex& o) const { return (*this - o).sign() <= 0; }
    Rational at(const Rational& p) const { return b + c * p; }
};

using LexPoint = std::vector<Lex>;

// sum_x a[x]*x + b + c*p
struct ParamExpr {
    std::vector<Rational> a;
    Rational b = 0;
    Rational c = 0;

    ParamExpr() = default;
    explicit ParamExpr(int n) : a(n, Rational(0)) {}
    ParamExpr(std::vector<Rational> a_, Rational b_, Rational c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

    static ParamExpr clock(int n, int i, const Rational& k = 1);
    static ParamExpr constant(int n, const Rational& b, const Rational& c = 0);

    int n() const { return static_cast<int>(a.size()); }
    Rational A() const;  // sum of clock coefficients
    bool is_constant() const;
    bool is_diagonal() const { return sgn(A()) == 0; }
    bool is_zero() const { return is_constant() && sgn(b) == 0 && sgn(c) == 0; }

    Rational eval(const Valuation& v, const Rational& p) const;
    Lex eval(const LexPoint& w) const;
    Lex constant_part() const { return {b, c}; }

    ParamExpr operator+(const ParamExpr& o) const;
    ParamExpr operator-(const ParamExpr& o) const;
    ParamExpr operator-() const;
    ParamExpr operator*(const Rational& k) const;

    // First nonzero of (a..., c, b) scaled to 1. Returns the sign of the scale factor (0 for the zero expression).
    int normalize();
    ParamExpr normalized() const { ParamExpr e = *this; e.normalize(); return e; }

    std::string key() const;
    std::string str(const std::vector<std::string>& clocks) const;
    bool operator==(const ParamExpr& o) const { return a == o.a && b == o.b && c == o.c; }
};

// A piece of a value function: a finite expression or a signed infinity.
struct Piece {
    int inf = 0;  // +1, -1 or 0
    ParamExpr e;

    static Piece finite(ParamExpr e) { return {0, std::move(e)}; }
    static Piece pos_inf(int n) { return {1, ParamExpr(n)}; }
    static Piece neg_inf(int n) { return {-1, ParamExpr(n)}; }

    bool finite() const { return inf == 0; }
    ExtRational eval(const Valuation& v, const Rational& p) const;
    std::string str(const std::vector<std::string>& clocks) const;
    bool operator==(const Piece& o) const { return inf == o.inf && (inf != 0 || e == o.e); }
};

Piece operator+(const Piece& x, const Piece& y);

ExtRational eval_expr(const Piece& e, const Valuation& v, const Rational& p);
ParamExpr diag_intersection(const ParamExpr& e, const ParamExpr& f);
// Substitute 0 for the clocks in y.
ParamExpr unreset(const ParamExpr& e, const std::vector<int>& y);

ParamExpr parse_expr(const std::string& s, const std::vector<std::string>& clocks);
Piece parse_piece(const std::string& s, const std::vector<std::string>& clocks);

std::vector<std::string> default_clock_names(int n);

}  // namespace wtg
