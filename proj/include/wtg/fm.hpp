#pragma once

#include "wtg/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wtg {

enum class Rel { GT, GE, EQ };

// a.x + b + c*p  REL  0
struct Con {
    std::vector<Rational> a;
    Rational b = 0;
    Rational c = 0;
    Rel rel = Rel::GE;
};

Con con_from(const ParamExpr& e, char sign);  // sign in '<', '=', '>', 'l' (<=), 'g' (>=)
Con nonneg(int n, int i);

// Feasible set of p > 0, always an interval.
struct PInterval {
    bool empty = false;
    Rational lo = 0;
    bool lo_closed = false;
    bool hi_inf = true;
    Rational hi = 0;
    bool hi_closed = false;

    bool contains(const Rational& p) const;
    // Nonempty on (0, d) for some d > 0.
    bool near_zero() const { return !empty && sgn(lo) == 0; }
    std::string str() const;
};

// Feasibility for every sufficiently small p > 0. The witness is a point of (Q + Q*eps)^n.
bool lex_feasible(const std::vector<Con>& cons, int n, LexPoint* witness = nullptr);

// The set of p > 0 for which the system is feasible.
PInterval project_to_p(const std::vector<Con>& cons, int n);

// Feasibility at a fixed p, with a rational witness.
bool feasible_at(const std::vector<Con>& cons, int n, const Rational& p, Valuation* witness = nullptr);

}  // namespace wtg
