#pragma once

#include "support.hpp"

// Closed-form value functions of the two-clock acyclic example (fig1.game) on the whole domain.
namespace wtg::testing::fig1 {

inline ParamExpr ex(const std::string& s) { return parse_expr(s, {"x1", "x2"}); }

inline Piece fin(const std::string& s) { return Piece::finite(ex(s)); }

inline PVF l1() {
    return pvf_from_rule(2, 2, {}, [](const Valuation&, const Rational&) { return fin("2p"); });
}

inline PVF l2() {
    return pvf_from_rule(2, 2, {ex("x2 - 1"), ex("x2 - 2 + 2p")}, [](const Valuation& v, const Rational& p) {
        if (v[1] < 1) return fin("2 + 4p - x2");
        if (v[1] <= 2 - 2 * p) return fin("1 + 4p");
        return Piece::pos_inf(2);
    });
}

inline PVF l3() {
    return pvf_from_rule(2, 2, {ex("x1 - 1"), ex("x1 - 2"), ex("x2 - 1"), ex("x1 - x2")}, [](const Valuation& v, const Rational&) {
        if (v[0] <= 1 && v[1] < v[0]) return fin("4p + x1 - x2 - 1");
        if (1 < v[0] && v[0] < 2 && v[1] < 1) return fin("4p - x2");
        return Piece::pos_inf(2);
    });
}

// The lower border x1 = x2 + 2p - 1 of the second case is excluded: there Min would need t >= 1 - x1 and t < 2 - 2p - x2.
inline PVF l4() {
    return pvf_from_rule(2, 2, {ex("x1 - x2"), ex("x1 - 2 + 2p"), ex("x2 - 2 + 2p"), ex("x1 - x2 + 1 - 2p")},
                         [](const Valuation& v, const Rational& p) {
                             if (v[1] <= v[0] && v[0] < 2 - 2 * p) return fin("x1 - 2 + 2p");
                             if (v[1] + 2 * p - 1 < v[0] && v[0] < v[1] && v[1] < 2 - 2 * p) return fin("x2 - 2 + 2p");
                             return Piece::pos_inf(2);
                         });
}

// l_i as written in the worked example: x2 - 1 + 6p below x2 = x1 - 5p - 1/2 when x1 <= 1.
inline PVF li_closed_form() {
    return pvf_from_rule(2, 2,
                         {ex("x1 - 1"), ex("x1 - x2 - 5p - 1/2"), ex("x1 - x2 - 2p"), ex("x1 - 2 + 2p"), ex("x2 - 1/2 + p"),
                          ex("x2 - 1 + 2p")},
                         [](const Valuation& v, const Rational& p) {
                             const Rational &x1 = v[0], &x2 = v[1];
                             const Rational half = frac(1, 2);
                             if ((x1 <= 1 && x2 <= x1 - 5 * p - half) || (1 < x1 && x1 < 2 - 2 * p && x2 <= half - p))
                                 return fin("x2 - 1 + 6p");
                             if ((x1 <= 1 && x1 - 5 * p - half < x2 && x2 <= x1 - 2 * p) ||
                                 (1 < x1 && x1 < 2 - 2 * p && half - p < x2 && x2 <= 1 - 2 * p) ||
                                 (x1 == 2 - 2 * p && x2 <= 1 - 2 * p))
                                 return fin("4p - x2");
                             return Piece::pos_inf(2);
                         });
}

// l_i as confirmed by the discretized oracle: for x1 < 1 the l_4 branch costs x2 + 1 + 6p - 2x1.
inline PVF li() {
    return pvf_from_rule(2, 2,
                         {ex("x1 - 1"), ex("x1 - 2 + 2p"), ex("x2 - 1 + 2p"), ex("x1 - x2 - 2p"), ex("x1 - x2 - 1/2 - p"),
                          ex("x2 - 1/2 + p")},
                         [](const Valuation& v, const Rational& p) {
                             const Rational &x1 = v[0], &x2 = v[1];
                             const Rational half = frac(1, 2);
                             if (x1 >= 2 - 2 * p || x2 >= 1 - 2 * p) return Piece::pos_inf(2);
                             if (x1 < 1) {
                                 if (x1 - x2 - 2 * p <= 0) return Piece::pos_inf(2);
                                 return x1 - x2 - half - p >= 0 ? fin("x2 + 1 + 6p - 2x1") : fin("4p - x2");
                             }
                             return x2 <= half - p ? fin("x2 - 1 + 6p") : fin("4p - x2");
                         });
}

inline PVF goal() {
    return pvf_from_rule(2, 2, {}, [](const Valuation&, const Rational&) { return fin("0"); });
}

}  // namespace wtg::testing::fig1
