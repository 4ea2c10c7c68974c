#include "wtg/pvf.hpp"

#include "wtg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wtg {

namespace {

Eta cap_at_root(const Rational& r, bool attained) {
    return attained ? Eta::below(r) : Eta::at_most(r);
}

// The p > 0 at which the constant b + c*p changes sign, if any.
void cap_constant_root(const Lex& k, Eta& cap) {
    if (sgn(k.b) == 0 || sgn(k.c) == 0 || sgn(k.b) == sgn(k.c)) return;
    cap = min(cap, Eta::below(-k.b / k.c));
}

// Emergence cap: the earliest p at which the cell meets the hyperplane side `side`.
void cap_emergence(const std::vector<Con>& cell, int n, const ParamExpr& e, char side, Eta& cap) {
    std::vector<Con> cons = cell;
    cons.push_back(con_from(e, side));
    PInterval I = project_to_p(cons, n);
    if (I.empty) return;
    cap = min(cap, cap_at_root(I.lo, I.lo_closed));
}

// Reduces an expression modulo the equalities of a cell (pivoting on clocks).
class EqReducer {
public:
    EqReducer(const Partition& P, int cell) {
        for (size_t k = 0; k < P.exprs.size(); ++k)
            if (P.cells[cell][k] == '=') add(P.exprs[k]);
    }
    ParamExpr reduce(ParamExpr e) const {
        for (const auto& [piv, r] : rows_)
            if (sgn(e.a[piv]) != 0) e = e - r * e.a[piv];
        return e;
    }

private:
    void add(const ParamExpr& e) {
        ParamExpr r = reduce(e);
        for (int i = 0; i < r.n(); ++i) {
            if (sgn(r.a[i]) == 0) continue;
            r = r * (1 / r.a[i]);
            for (auto& [piv, row] : rows_)
                if (sgn(row.a[i]) != 0) row = row - r * row.a[i];
            rows_.emplace_back(i, r);
            return;
        }
    }
    std::vector<std::pair<int, ParamExpr>> rows_;
};

bool zero_on_cell(const ParamExpr& d, const EqReducer& red) {
    ParamExpr r = red.reduce(d);
    return r.is_zero();
}

// Pointwise order of two candidates on a cell: -1, 0 (equal), 1, or 2 if they cross.
struct PairInfo {
    int sign = 0;
    int expr = -1;   // index of the crossing expression in the new list
    int scale = 1;   // sign(raw difference) = scale * sign(normalized difference)
};

Piece jump(const Piece& f, const ParamExpr& border, long rate) {
    if (!f.finite()) return f;
    // f(v + t) + rate*t with t = -border(v)/A.
    Rational A = border.A();
    Rational k = (f.e.A() + rate) / A;
    return Piece::finite(f.e - border * k);
}

Piece subst2p(const Piece& f, long rate) {
    if (!f.finite()) return f;
    Piece r = f;
    r.e.c += 2 * (f.e.A() + rate);
    return r;
}

LexPoint shifted(const LexPoint& w, const Lex& t) {
    LexPoint r = w;
    for (auto& x : r) x = x + t;
    return r;
}

int cell_at(const Partition& P, const LexPoint& w) {
    SignVector s;
    for (const auto& e : P.exprs) s += sign_char(e.eval(w).sign());
    int c = P.find(s);
    if (c < 0) throw std::logic_error("delay ray left the partition at " + s);
    return c;
}

struct Crossing {
    Lex t;
    int expr;
};

// Times at which the ray from w crosses the non-diagonal expressions, grouped and sorted.
std::vector<Crossing> crossings(const Partition& P, const LexPoint& w, const Lex* limit) {
    std::vector<Crossing> all;
    for (size_t k = 0; k < P.exprs.size(); ++k) {
        const auto& e = P.exprs[k];
        Rational A = e.A();
        if (sgn(A) == 0) continue;
        Lex t = -e.eval(w) / A;
        if (t.sign() < 0) continue;
        if (limit && *limit < t) continue;
        all.push_back({t, static_cast<int>(k)});
    }
    std::stable_sort(all.begin(), all.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
    std::vector<Crossing> out;
    for (const auto& c : all)
        if (out.empty() || !(out.back().t == c.t)) out.push_back(c);
    return out;
}

}  // namespace

bool is_atomic(const Partition& P) {
    Eta cap = P.cap;
    return atomic_diagonals(P, &cap).empty();
}

PVF constant_pvf(int n, long M, const Piece& value, const Eta& cap) {
    PVF f;
    f.part = enumerate_cells(n, M, {}, cap);
    f.pieces.assign(f.part.cells.size(), value);
    return f;
}

PVF lift(const PVF& f, const Partition& fine) {
    PVF r;
    r.part = fine;
    r.part.cap = min(r.part.cap, f.part.cap);
    r.trace = f.eta();
    std::vector<int> parent = parent_map(fine, f.part);
    for (int c : parent) r.pieces.push_back(f.pieces[c]);
    return r;
}

ExtRational eval_pvf(const PVF& f, const Valuation& v, const Rational& p) {
    Eta e = f.eta();
    if (!e.admits(p)) throw PerturbationTooLarge(p.get_str(), e.str());
    for (const auto& x : v)
        if (sgn(x) < 0 || x > f.part.M) throw InputError("valuation outside [0, M]");
    int c = f.part.locate(v, p);
    if (c < 0) throw std::logic_error("valuation not covered by any cell");
    return f.pieces[c].eval(v, p);
}

PVF envelope(const Partition& P, const std::vector<std::vector<Piece>>& cands, bool take_min) {
    const int n = P.n;
    const size_t ncell = P.cells.size();
    Eta cap = P.cap;
    std::vector<ParamExpr> extra;
    std::map<std::string, int> extra_index;

    std::vector<std::vector<Piece>> lists(ncell);
    std::vector<Piece> fixed(ncell);
    std::vector<bool> is_fixed(ncell, false);
    std::vector<std::map<std::pair<int, int>, PairInfo>> info(ncell);

    const int bad = take_min ? -1 : 1;  // infinity that wins
    for (size_t c = 0; c < ncell; ++c) {
        std::vector<Piece> L;
        bool winner = false, all_lose = true;
        for (const auto& x : cands[c]) {
            if (x.inf == bad) winner = true;
            if (x.inf != -bad) all_lose = false;
        }
        if (winner) { fixed[c] = Piece{bad, ParamExpr(n)}; is_fixed[c] = true; continue; }
        if (all_lose) { fixed[c] = Piece{-bad, ParamExpr(n)}; is_fixed[c] = true; continue; }
        for (const auto& x : cands[c]) {
            if (!x.finite()) continue;
            if (std::find(L.begin(), L.end(), x) == L.end()) L.push_back(x);
        }
        if (L.size() == 1) { fixed[c] = L[0]; is_fixed[c] = true; continue; }
        std::vector<Con> cell = P.constraints(static_cast<int>(c));
        EqReducer red(P, static_cast<int>(c));
        for (size_t i = 0; i < L.size(); ++i) {
            for (size_t j = i + 1; j < L.size(); ++j) {
                ParamExpr D = L[i].e - L[j].e;
                PairInfo pi;
                if (D.is_constant()) {
                    pi.sign = D.constant_part().sign();
                    cap_constant_root(D.constant_part(), cap);
                } else if (zero_on_cell(D, red)) {
                    pi.sign = 0;
                    // Equal on the cell's affine hull; constants in the reduction are zero.
                } else {
                    ParamExpr Dn = D;
                    int scale = Dn.normalize();
                    std::vector<Con> pos = cell, neg = cell;
                    pos.push_back(con_from(Dn, '>'));
                    neg.push_back(con_from(Dn, '<'));
                    bool fp = lex_feasible(pos, n), fn = lex_feasible(neg, n);
                    if (fp && fn) {
                        std::string key = Dn.key();
                        int idx = P.find_expr(Dn);
                        if (idx < 0) {
                            auto it = extra_index.find(key);
                            if (it == extra_index.end()) {
                                it = extra_index.emplace(key, static_cast<int>(extra.size())).first;
                                extra.push_back(Dn);
                            }
                            idx = -2 - it->second;
                        }
                        pi.sign = 2;
                        pi.expr = idx;
                        pi.scale = scale;
                    } else if (fp) {
                        pi.sign = scale;
                        cap_emergence(cell, n, Dn, '<', cap);
                    } else if (fn) {
                        pi.sign = -scale;
                        cap_emergence(cell, n, Dn, '>', cap);
                    } else {
                        pi.sign = 0;
                        cap_emergence(cell, n, Dn, '<', cap);
                        cap_emergence(cell, n, Dn, '>', cap);
                    }
                }
                info[c][{static_cast<int>(i), static_cast<int>(j)}] = pi;
            }
        }
        lists[c] = std::move(L);
    }

    PVF out;
    std::vector<int> parent;
    std::vector<int> extra_pos;
    if (extra.empty()) {
        out.part = P;
        out.part.cap = cap;
        for (size_t c = 0; c < ncell; ++c) parent.push_back(static_cast<int>(c));
    } else {
        std::vector<ParamExpr> all = P.exprs;
        all.insert(all.end(), extra.begin(), extra.end());
        out.part = enumerate_cells(n, P.M, all, cap);
        parent = parent_map(out.part, P);
        for (const auto& e : extra) extra_pos.push_back(out.part.find_expr(e));
    }
    out.trace = P.eta();
    auto sign_in = [&](int cell, const PairInfo& pi, const SignVector& s) {
        if (pi.sign != 2) return pi.sign;
        int k = pi.expr >= 0 ? out.part.find_expr(P.exprs[pi.expr]) : extra_pos[-2 - pi.expr];
        (void)cell;
        return pi.scale * sign_of(s[k]);
    };
    for (size_t c = 0; c < out.part.cells.size(); ++c) {
        int pc = parent[c];
        if (is_fixed[pc]) { out.pieces.push_back(fixed[pc]); continue; }
        const auto& L = lists[pc];
        int best = 0;
        for (int i = 1; i < static_cast<int>(L.size()); ++i) {
            // sign of L[best] - L[i]
            int s = best < i ? sign_in(pc, info[pc].at({best, i}), out.part.cells[c])
                             : -sign_in(pc, info[pc].at({i, best}), out.part.cells[c]);
            if (take_min ? s > 0 : s < 0) best = i;
        }
        out.pieces.push_back(L[best]);
    }
    return out;
}

namespace {

PVF combine(const std::vector<PVF>& fs, bool take_min) {
    if (fs.empty()) throw std::invalid_argument("min/max of an empty list");
    if (fs.size() == 1) return fs[0];
    std::vector<ParamExpr> all;
    Eta cap = fs[0].part.cap, trace;
    for (const auto& f : fs) {
        all.insert(all.end(), f.part.exprs.begin(), f.part.exprs.end());
        cap = min(cap, f.part.cap);
        trace = min(trace, f.eta());
    }
    Partition P = enumerate_cells(fs[0].n(), fs[0].part.M, all, cap);
    std::vector<std::vector<int>> parents;
    for (const auto& f : fs) parents.push_back(parent_map(P, f.part));
    std::vector<std::vector<Piece>> cands(P.cells.size());
    for (size_t c = 0; c < P.cells.size(); ++c)
        for (size_t i = 0; i < fs.size(); ++i) cands[c].push_back(fs[i].pieces[parents[i][c]]);
    PVF r = envelope(P, cands, take_min);
    r.trace = min(r.trace, trace);
    return r;
}

}  // namespace

PVF op_min(const std::vector<PVF>& fs) { return combine(fs, true); }
PVF op_max(const std::vector<PVF>& fs) { return combine(fs, false); }

PVF op_guard(const PVF& f, const Guard& g0, Owner source_owner) {
    const int n = f.n();
    const Piece outside = source_owner == Owner::Max ? Piece::neg_inf(n) : Piece::pos_inf(n);
    Guard g = normalize_guard(g0);
    PVF r;
    if (g.empty_set) {
        r.part = f.part;
        r.trace = f.trace;
        r.pieces.assign(f.part.cells.size(), outside);
        return prune(r);
    }
    std::vector<ParamExpr> atoms;
    for (const auto& a : g.atoms)
        atoms.push_back(ParamExpr::clock(n, a.clock) - ParamExpr::constant(n, Rational(a.bound)));
    std::vector<ParamExpr> all = f.part.exprs;
    all.insert(all.end(), atoms.begin(), atoms.end());
    Partition P = enumerate_cells(n, f.part.M, all, f.part.cap);
    r = lift(f, P);
    std::vector<int> pos;
    for (const auto& e : atoms) pos.push_back(P.find_expr(e.normalized()));
    for (size_t c = 0; c < P.cells.size(); ++c) {
        bool sat = true;
        for (size_t i = 0; i < g.atoms.size() && sat; ++i) {
            int s = sign_of(P.cells[c][pos[i]]);
            switch (g.atoms[i].op) {
                case CmpOp::Lt: sat = s < 0; break;
                case CmpOp::Le: sat = s <= 0; break;
                case CmpOp::Eq: sat = s == 0; break;
                case CmpOp::Ge: sat = s >= 0; break;
                case CmpOp::Gt: sat = s > 0; break;
            }
        }
        if (!sat) r.pieces[c] = outside;
    }
    return r;
}

PVF op_unreset(const PVF& f, const std::vector<int>& Y) {
    if (Y.empty()) return f;
    const int n = f.n();
    Eta cap = f.part.cap;
    struct Mapped {
        bool constant;
        int sign;    // for constants
        int scale;   // for the rest
        ParamExpr e;
    };
    std::vector<Mapped> mapped;
    std::vector<ParamExpr> all;
    for (const auto& e : f.part.exprs) {
        ParamExpr u = unreset(e, Y);
        if (u.is_constant()) {
            cap_constant_root(u.constant_part(), cap);
            mapped.push_back({true, u.constant_part().sign(), 1, u});
        } else {
            int s = u.normalize();
            mapped.push_back({false, 0, s, u});
            all.push_back(u);
        }
    }
    Partition P = enumerate_cells(n, f.part.M, all, cap);
    PVF r;
    r.part = P;
    r.trace = f.eta();
    for (size_t c = 0; c < P.cells.size(); ++c) {
        SignVector old;
        for (const auto& m : mapped) {
            if (m.constant) old += sign_char(m.sign);
            else old += sign_char(m.scale * sign_of(P.cells[c][P.find_expr(m.e)]));
        }
        int oc = f.part.find(old);
        if (oc < 0) throw std::logic_error("unreset face not covered: " + old);
        const Piece& pc = f.pieces[oc];
        r.pieces.push_back(pc.finite() ? Piece::finite(unreset(pc.e, Y)) : pc);
    }
    return r;
}

PVF refine(const PVF& f) {
    Partition P = refine_atomic(f.part);
    if (P.exprs.size() == f.part.exprs.size() && P.cap == f.part.cap) return f;
    PVF r = lift(f, P);
    r.part.cap = P.cap;
    return r;
}

PVF op_pre(const PVF& f, long rate, Owner owner) {
    if (!is_atomic(f.part)) throw NotAtomic();
    const Partition& P = f.part;
    const int n = P.n;
    const bool is_min = owner == Owner::Min;
    std::vector<std::vector<Piece>> cands(P.cells.size());
    for (size_t c = 0; c < P.cells.size(); ++c) {
        const LexPoint& w = P.witness[c];
        std::vector<Crossing> T = crossings(P, w, nullptr);
        auto& out = cands[c];
        out.push_back(f.pieces[c]);
        Lex prev{0};
        int last = static_cast<int>(c);
        for (size_t k = 0; k < T.size(); ++k) {
            Lex next = k + 1 < T.size() ? T[k + 1].t : T[k].t + Lex{1};
            int after = cell_at(P, shifted(w, (T[k].t + next) / 2));
            if (T[k].t.sign() == 0) {
                out.push_back(f.pieces[after]);
            } else {
                const ParamExpr& B = P.exprs[T[k].expr];
                int before = cell_at(P, shifted(w, (prev + T[k].t) / 2));
                int at = cell_at(P, shifted(w, T[k].t));
                out.push_back(jump(f.pieces[before], B, rate));
                out.push_back(jump(f.pieces[at], B, rate));
                out.push_back(jump(f.pieces[after], B, rate));
            }
            prev = T[k].t;
            last = after;
        }
        const Piece& tail = f.pieces[last];
        if (tail.finite()) {
            Rational slope = tail.e.A() + rate;
            if (is_min && sgn(slope) < 0) out.push_back(Piece::neg_inf(n));
            if (!is_min && sgn(slope) > 0) out.push_back(Piece::pos_inf(n));
        } else {
            out.push_back(tail);
        }
    }
    PVF r = envelope(P, cands, is_min);
    r.trace = min(r.trace, f.eta());
    return r;
}

PVF op_perturb(const PVF& f, long rate) {
    const int n = f.n();
    std::vector<ParamExpr> all = f.part.exprs;
    for (const auto& e : f.part.exprs) {
        Rational A = e.A();
        if (sgn(A) == 0) continue;
        ParamExpr s = e;
        s.c += 2 * A;
        all.push_back(s);
    }
    Partition Q = refine_atomic(enumerate_cells(n, f.part.M, all, f.part.cap));
    PVF g = lift(f, Q);
    const Lex two_eps{0, 2};
    std::vector<std::vector<Piece>> cands(Q.cells.size());
    for (size_t c = 0; c < Q.cells.size(); ++c) {
        const LexPoint& w = Q.witness[c];
        std::vector<Crossing> T = crossings(Q, w, &two_eps);
        auto& out = cands[c];
        out.push_back(g.pieces[c]);
        Lex prev{0};
        for (size_t k = 0; k < T.size(); ++k) {
            if (T[k].t == two_eps) break;
            Lex next = k + 1 < T.size() ? T[k + 1].t : two_eps;
            int after = cell_at(Q, shifted(w, (T[k].t + next) / 2));
            if (T[k].t.sign() == 0) {
                out.push_back(g.pieces[after]);
            } else {
                const ParamExpr& B = Q.exprs[T[k].expr];
                int before = cell_at(Q, shifted(w, (prev + T[k].t) / 2));
                int at = cell_at(Q, shifted(w, T[k].t));
                out.push_back(jump(g.pieces[before], B, rate));
                out.push_back(jump(g.pieces[at], B, rate));
                out.push_back(jump(g.pieces[after], B, rate));
            }
            prev = T[k].t;
        }
        int before_end = cell_at(Q, shifted(w, (prev + two_eps) / 2));
        int end = cell_at(Q, shifted(w, two_eps));
        out.push_back(subst2p(g.pieces[before_end], rate));
        out.push_back(subst2p(g.pieces[end], rate));
    }
    PVF r = envelope(Q, cands, false);
    r.trace = min(r.trace, g.eta());
    return r;
}

PVF add_weight(const PVF& f, long w) {
    if (w == 0) return f;
    PVF r = f;
    for (auto& x : r.pieces)
        if (x.finite()) x.e.b += w;
    return r;
}

bool agree_on_cell(const Piece& f, const Piece& g, const Partition& P, int cell) {
    if (!f.finite() || !g.finite()) return f.inf == g.inf;
    EqReducer red(P, cell);
    return zero_on_cell(f.e - g.e, red);
}

PVF prune(const PVF& f0) {
    PVF f = f0;
    for (int k = static_cast<int>(f.part.exprs.size()) - 1; k >= 0; --k) {
        if (f.part.is_ceiling(k)) continue;
        std::map<std::string, std::vector<int>> groups;
        std::vector<std::string> order;
        for (size_t c = 0; c < f.part.cells.size(); ++c) {
            std::string s = f.part.cells[c];
            s.erase(k, 1);
            auto [it, fresh] = groups.try_emplace(s);
            if (fresh) order.push_back(s);
            it->second.push_back(static_cast<int>(c));
        }
        bool ok = true;
        std::vector<int> rep;
        for (const auto& key : order) {
            const auto& cs = groups[key];
            int r = cs[0];
            for (int c : cs)
                if (f.part.cells[c][k] != '=') { r = c; break; }
            for (int c : cs)
                if (!agree_on_cell(f.pieces[c], f.pieces[r], f.part, c)) { ok = false; break; }
            if (!ok) break;
            rep.push_back(r);
        }
        if (!ok) continue;
        PVF g;
        g.trace = f.eta();
        g.part.n = f.part.n;
        g.part.M = f.part.M;
        g.part.cap = f.part.cap;
        g.part.exprs = f.part.exprs;
        g.part.exprs.erase(g.part.exprs.begin() + k);
        for (size_t i = 0; i < order.size(); ++i) {
            const auto& cs = groups[order[i]];
            Eta e = f.part.cell_eta[cs[0]];
            for (int c : cs) {
                const Eta& x = f.part.cell_eta[c];
                if (e.infinite || x.infinite) e = Eta{};
                else if (x.v > e.v || (x.v == e.v && !x.open)) e = x;
            }
            g.part.cells.push_back(order[i]);
            g.part.cell_eta.push_back(e);
            g.part.witness.push_back(f.part.witness[rep[i]]);
            g.pieces.push_back(f.pieces[rep[i]]);
        }
        g.part.rebuild_index();
        f = std::move(g);
    }
    return f;
}

bool pvf_equal(const PVF& f, const PVF& g) {
    Intersection I = intersect_partitions(f.part, g.part);
    for (size_t c = 0; c < I.part.cells.size(); ++c)
        if (!agree_on_cell(f.pieces[I.parent1[c]], g.pieces[I.parent2[c]], I.part, static_cast<int>(c))) return false;
    return true;
}

Eta ValueMap::eta() const {
    Eta e;
    for (const auto& v : values) e = min(e, v.eta());
    return e;
}

ValueMap initial_values(const Game& g) {
    ValueMap v;
    const int n = g.num_clocks();
    for (const auto& l : g.locations)
        v.values.push_back(constant_pvf(n, g.M, l.owner == Owner::Target ? Piece::finite(ParamExpr(n)) : Piece::pos_inf(n)));
    return v;
}

PVF apply_F_location(const ValueMap& V, const Game& g, int loc) {
    const int n = g.num_clocks();
    const Location& L = g.locations[loc];
    if (L.owner == Owner::Target) return constant_pvf(n, g.M, Piece::finite(ParamExpr(n)));
    std::vector<PVF> branches;
    for (int t : g.outgoing(loc)) {
        const Transition& d = g.transitions[t];
        PVF h = op_unreset(V.values[d.target], d.resets);
        h = prune(op_guard(h, d.guard, L.owner));
        if (L.owner == Owner::Min) h = prune(op_perturb(refine(h), L.rate));
        if (!L.urgent) h = prune(op_pre(refine(h), L.rate, L.owner));
        branches.push_back(add_weight(h, d.weight));
    }
    if (branches.empty()) return constant_pvf(n, g.M, Piece::pos_inf(n));
    if (L.owner == Owner::Min) return prune(op_min(branches));
    // Max is never forced to move: where no guard can be reached the value is +inf.
    std::vector<PVF> avail;
    for (int t : g.outgoing(loc)) {
        PVF h = prune(op_guard(constant_pvf(n, g.M, Piece::finite(ParamExpr(n))), g.transitions[t].guard, Owner::Max));
        if (!L.urgent) h = prune(op_pre(refine(h), L.rate, Owner::Max));
        avail.push_back(h);
    }
    PVF stuck = op_max(avail);
    for (auto& x : stuck.pieces) x = x.inf < 0 ? Piece::pos_inf(n) : Piece::neg_inf(n);
    branches.push_back(prune(stuck));
    return prune(op_max(branches));
}

ValueMap apply_F(const ValueMap& V, const Game& g) {
    ValueMap r;
    for (int l = 0; l < static_cast<int>(g.locations.size()); ++l) r.values.push_back(apply_F_location(V, g, l));
    return r;
}

std::string pvf_json(const PVF& f, const std::vector<std::string>& clocks) {
    nlohmann::ordered_json j;
    Eta e = f.eta();
    j["eta"] = e.str();
    j["eta_open"] = e.open;
    j["exprs"] = nlohmann::ordered_json::array();
    for (const auto& x : f.part.exprs) j["exprs"].push_back(x.str(clocks));
    j["cells"] = nlohmann::ordered_json::array();
    for (size_t c = 0; c < f.part.cells.size(); ++c)
        j["cells"].push_back({{"signs", f.part.cells[c]}, {"piece", f.pieces[c].str(clocks)}});
    return j.dump();
}

}  // namespace wtg
