#include "wtg/fm.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wtg {

Con con_from(const ParamExpr& e, char sign) {
    switch (sign) {
        case '>': return {e.a, e.b, e.c, Rel::GT};
        case 'g': return {e.a, e.b, e.c, Rel::GE};
        case '=': return {e.a, e.b, e.c, Rel::EQ};
        case '<': { ParamExpr m = -e; return {m.a, m.b, m.c, Rel::GT}; }
        case 'l': { ParamExpr m = -e; return {m.a, m.b, m.c, Rel::GE}; }
    }
    throw std::invalid_argument("bad sign character");
}

Con nonneg(int n, int i) {
    Con k;
    k.a.assign(n, Rational(0));
    k.a[i] = 1;
    k.rel = Rel::GE;
    return k;
}

bool PInterval::contains(const Rational& p) const {
    if (empty || sgn(p) <= 0) return false;
    int l = cmp(p, lo);
    if (l < 0 || (l == 0 && !lo_closed)) return false;
    if (hi_inf) return true;
    int h = cmp(p, hi);
    return h < 0 || (h == 0 && hi_closed);
}

std::string PInterval::str() const {
    if (empty) return "{}";
    std::string s = lo_closed ? "[" : "(";
    s += lo.get_str() + ", ";
    s += hi_inf ? "inf" : hi.get_str();
    s += (!hi_inf && hi_closed) ? "]" : ")";
    return s;
}

namespace {

enum class Mode { Lex, Param };

struct Level {
    int var;
    std::vector<Con> cons;  // constraints involving var, other variables eliminated later
};

struct EqSub {
    int var;
    Con eq;
};

struct Engine {
    int n;
    Mode mode;
    std::vector<EqSub> subs;
    std::vector<Level> levels;
    PInterval interval;
    bool infeasible = false;

    bool has_var(const Con& k) const {
        for (const auto& x : k.a)
            if (sgn(x) != 0) return true;
        return false;
    }

    // Constraint with no clock: decide (lex) or restrict the p-interval (param).
    void decide_constant(const Con& k) {
        if (mode == Mode::Lex) {
            int s = Lex{k.b, k.c}.sign();
            bool ok = k.rel == Rel::EQ ? s == 0 : k.rel == Rel::GT ? s > 0 : s >= 0;
            if (!ok) infeasible = true;
            return;
        }
        PInterval& I = interval;
        if (I.empty) return;
        if (sgn(k.c) == 0) {
            int s = sgn(k.b);
            bool ok = k.rel == Rel::EQ ? s == 0 : k.rel == Rel::GT ? s > 0 : s >= 0;
            if (!ok) I.empty = true;
            return;
        }
        Rational r = -k.b / k.c;  // c*p + b = 0 at p = r
        bool closed = k.rel != Rel::GT;
        auto raise_lo = [&](const Rational& v, bool cl) {
            int c = cmp(v, I.lo);
            if (c > 0 || (c == 0 && !cl)) { I.lo = v; I.lo_closed = cl; }
        };
        auto lower_hi = [&](const Rational& v, bool cl) {
            int c = I.hi_inf ? -1 : cmp(v, I.hi);
            if (c < 0 || (c == 0 && !cl)) { I.hi = v; I.hi_closed = cl; I.hi_inf = false; }
        };
        if (k.rel == Rel::EQ) {
            raise_lo(r, true);
            lower_hi(r, true);
        } else if (sgn(k.c) > 0) {
            raise_lo(r, closed);
        } else {
            lower_hi(r, closed);
        }
        if (sgn(I.lo) < 0) { I.lo = 0; I.lo_closed = false; }
        if (sgn(I.lo) == 0) I.lo_closed = false;
        if (!I.hi_inf) {
            int c = cmp(I.lo, I.hi);
            if (c > 0 || (c == 0 && !(I.lo_closed && I.hi_closed))) I.empty = true;
            if (sgn(I.hi) <= 0) I.empty = true;
        }
    }

    static Con combine(const Con& x, const Rational& kx, const Con& y, const Rational& ky) {
        Con r;
        r.a.resize(x.a.size());
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * kx + y.a[i] * ky;
        r.b = x.b * kx + y.b * ky;
        r.c = x.c * kx + y.c * ky;
        return r;
    }

    // Scale so the first nonzero clock coefficient has magnitude 1.
    static void scale(Con& k) {
        for (const auto& x : k.a)
            if (sgn(x) != 0) {
                Rational f = 1 / abs(x);
                if (f != 1) {
                    for (auto& y : k.a) y *= f;
                    k.b *= f;
                    k.c *= f;
                }
                return;
            }
    }

    static std::string dir_key(const Con& k) {
        std::string s;
        for (const auto& x : k.a) { s += x.get_str(); s += ','; }
        return s;
    }

    // Is x at least as tight as y (y implied by x for small p / for all p > 0)?
    bool dominates(const Con& x, const Con& y) const {
        if (mode == Mode::Lex) {
            int s = (Lex{x.b, x.c} - Lex{y.b, y.c}).sign();
            if (s < 0) return true;
            if (s > 0) return false;
            return x.rel == Rel::GT || y.rel == Rel::GE;
        }
        int sb = cmp(x.b, y.b), sc = cmp(x.c, y.c);
        if (sb > 0 || sc > 0) return false;
        return x.rel == Rel::GT || y.rel == Rel::GE || sb < 0 || sc < 0;
    }

    void prune(std::vector<Con>& cons) const {
        std::map<std::string, std::vector<size_t>> groups;
        for (size_t i = 0; i < cons.size(); ++i) groups[dir_key(cons[i])].push_back(i);
        std::vector<bool> drop(cons.size(), false);
        for (auto& [key, idx] : groups) {
            if (idx.size() < 2) continue;
            for (size_t u = 0; u < idx.size(); ++u) {
                if (drop[idx[u]]) continue;
                for (size_t v = 0; v < idx.size(); ++v) {
                    if (u == v || drop[idx[v]]) continue;
                    if (dominates(cons[idx[u]], cons[idx[v]])) drop[idx[v]] = true;
                }
            }
        }
        std::vector<Con> out;
        for (size_t i = 0; i < cons.size(); ++i)
            if (!drop[i]) out.push_back(std::move(cons[i]));
        cons.swap(out);
    }

    void run(std::vector<Con> cons) {
        // Equalities first, by substitution.
        while (!infeasible) {
            auto it = std::find_if(cons.begin(), cons.end(), [&](const Con& k) { return k.rel == Rel::EQ; });
            if (it == cons.end()) break;
            Con eq = *it;
            cons.erase(it);
            int var = -1;
            for (int i = 0; i < n; ++i)
                if (sgn(eq.a[i]) != 0) { var = i; break; }
            if (var < 0) { decide_constant(eq); continue; }
            for (auto& k : cons) {
                if (sgn(k.a[var]) == 0) continue;
                Rational f = -k.a[var] / eq.a[var];
                Rel rel = k.rel;
                k = combine(k, 1, eq, f);
                k.rel = rel;
            }
            subs.push_back({var, eq});
        }
        std::vector<Con> rest;
        for (auto& k : cons) {
            if (has_var(k)) { scale(k); rest.push_back(std::move(k)); }
            else decide_constant(k);
        }
        if (infeasible) return;
        for (int var = 0; var < n && !infeasible; ++var) {
            prune(rest);
            Level lvl{var, {}};
            std::vector<Con> keep;
            for (auto& k : rest) {
                if (sgn(k.a[var]) != 0) lvl.cons.push_back(k);
                else keep.push_back(std::move(k));
            }
            if (lvl.cons.empty()) { rest.swap(keep); continue; }
            for (const auto& x : lvl.cons) {
                if (sgn(x.a[var]) <= 0) continue;
                for (const auto& y : lvl.cons) {
                    if (sgn(y.a[var]) >= 0) continue;
                    Con r = combine(x, -y.a[var], y, x.a[var]);
                    r.a[var] = 0;
                    r.rel = (x.rel == Rel::GT || y.rel == Rel::GT) ? Rel::GT : Rel::GE;
                    if (has_var(r)) { scale(r); keep.push_back(std::move(r)); }
                    else decide_constant(r);
                }
            }
            levels.push_back(std::move(lvl));
            rest.swap(keep);
        }
        if (mode == Mode::Param && interval.empty) infeasible = true;
    }

    // Back-substitution in (Q + Q eps)^n.
    LexPoint witness() const {
        LexPoint w(n, Lex{});
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            int var = it->var;
            bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
            Lex lo, hi;
            for (const auto& k : it->cons) {
                Lex rest{k.b, k.c};
                for (int i = 0; i < n; ++i)
                    if (i != var && sgn(k.a[i]) != 0) rest = rest + w[i] * k.a[i];
                Lex bound = -rest / k.a[var];
                bool strict = k.rel == Rel::GT;
                if (sgn(k.a[var]) > 0) {
                    if (!has_lo || lo < bound || (lo == bound && strict)) { lo = bound; lo_strict = strict; }
                    has_lo = true;
                } else {
                    if (!has_hi || bound < hi || (hi == bound && strict)) { hi = bound; hi_strict = strict; }
                    has_hi = true;
                }
            }
            if (has_lo && has_hi) w[var] = lo == hi ? lo : (lo + hi) / Rational(2);
            else if (has_lo) w[var] = lo + Lex{1};
            else if (has_hi) w[var] = hi - Lex{1};
            (void)lo_strict;
            (void)hi_strict;
        }
        for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
            const Con& eq = it->eq;
            Lex rest{eq.b, eq.c};
            for (int i = 0; i < n; ++i)
                if (i != it->var && sgn(eq.a[i]) != 0) rest = rest + w[i] * eq.a[i];
            w[it->var] = -rest / eq.a[it->var];
        }
        return w;
    }
};

}  // namespace

bool lex_feasible(const std::vector<Con>& cons, int n, LexPoint* witness) {
    Engine e{n, Mode::Lex, {}, {}, {}, false};
    e.run(cons);
    if (e.infeasible) return false;
    if (witness) *witness = e.witness();
    return true;
}

PInterval project_to_p(const std::vector<Con>& cons, int n) {
    Engine e{n, Mode::Param, {}, {}, {}, false};
    e.run(cons);
    PInterval I = e.interval;
    if (e.infeasible) I.empty = true;
    return I;
}

bool feasible_at(const std::vector<Con>& cons, int n, const Rational& p, Valuation* witness) {
    std::vector<Con> fixed = cons;
    for (auto& k : fixed) {
        k.b += k.c * p;
        k.c = 0;
    }
    LexPoint w;
    if (!lex_feasible(fixed, n, witness ? &w : nullptr)) return false;
    if (witness) {
        witness->clear();
        for (const auto& x : w) witness->push_back(x.b);
    }
    return true;
}

}  // namespace wtg
