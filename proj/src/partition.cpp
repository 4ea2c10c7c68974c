#include "wtg/partition.hpp"

#include "wtg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace wtg {

bool Eta::admits(const Rational& p) const {
    if (sgn(p) <= 0) return false;
    if (infinite) return true;
    int c = cmp(p, v);
    return c < 0 || (c == 0 && !open);
}

std::string Eta::str() const {
    if (infinite) return "inf";
    return v.get_str();
}

bool Eta::operator==(const Eta& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return v == o.v && open == o.open;
}

Eta min(const Eta& x, const Eta& y) {
    if (x.infinite) return y;
    if (y.infinite) return x;
    int c = cmp(x.v, y.v);
    if (c < 0) return x;
    if (c > 0) return y;
    return x.open ? x : y;
}

char sign_char(int s) { return s < 0 ? '<' : s > 0 ? '>' : '='; }
int sign_of(char c) { return c == '<' ? -1 : c == '>' ? 1 : 0; }

Eta Partition::eta() const {
    Eta e = cap;
    for (const auto& x : cell_eta) e = min(e, x);
    return e;
}

void Partition::rebuild_index() {
    index_.clear();
    for (size_t i = 0; i < cells.size(); ++i) index_[cells[i]] = static_cast<int>(i);
}

int Partition::find(const SignVector& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

int Partition::find_expr(const ParamExpr& e) const {
    for (size_t i = 0; i < exprs.size(); ++i)
        if (exprs[i] == e) return static_cast<int>(i);
    return -1;
}

SignVector Partition::signs_at(const Valuation& v, const Rational& p) const {
    SignVector s;
    for (const auto& e : exprs) s += sign_char(sgn(e.eval(v, p)));
    return s;
}

int Partition::locate(const Valuation& v, const Rational& p) const { return find(signs_at(v, p)); }

std::vector<Con> Partition::constraints(int cell) const {
    std::vector<Con> cons;
    for (int i = 0; i < n; ++i) cons.push_back(nonneg(n, i));
    for (size_t k = 0; k < exprs.size(); ++k) cons.push_back(con_from(exprs[k], cells[cell][k]));
    return cons;
}

bool Partition::is_ceiling(int k) const {
    const auto& e = exprs[k];
    if (e.b != -M || sgn(e.c) != 0) return false;
    int ones = 0;
    for (const auto& x : e.a) {
        if (x == 1) ++ones;
        else if (sgn(x) != 0) return false;
    }
    return ones == 1;
}

namespace {

std::vector<ParamExpr> normalized_union(int n, long M, const std::vector<ParamExpr>& exprs) {
    std::vector<ParamExpr> out;
    std::unordered_set<std::string> seen;
    auto add = [&](ParamExpr e) {
        if (e.is_constant()) return;
        e.normalize();
        if (seen.insert(e.key()).second) out.push_back(std::move(e));
    };
    for (int i = 0; i < n; ++i) add(ParamExpr::clock(n, i) - ParamExpr::constant(n, Rational(M)));
    for (const auto& e : exprs) add(e);
    return out;
}

struct Family {
    std::vector<Rational> alpha;
    std::vector<int> members;  // ascending threshold -(b + c eps)
};

}  // namespace

Partition enumerate_cells(int n, long M, const std::vector<ParamExpr>& input, const Eta& cap) {
    Partition P;
    P.n = n;
    P.M = M;
    P.cap = cap;
    P.exprs = normalized_union(n, M, input);
    const int m = static_cast<int>(P.exprs.size());

    std::vector<Family> fams;
    {
        std::map<std::string, int> by_alpha;
        for (int k = 0; k < m; ++k) {
            std::string key;
            for (const auto& x : P.exprs[k].a) { key += x.get_str(); key += ','; }
            auto it = by_alpha.find(key);
            if (it == by_alpha.end()) {
                by_alpha[key] = static_cast<int>(fams.size());
                fams.push_back({P.exprs[k].a, {k}});
            } else {
                fams[it->second].members.push_back(k);
            }
        }
        for (auto& f : fams)
            std::sort(f.members.begin(), f.members.end(), [&](int x, int y) {
                return Lex{P.exprs[y].b, P.exprs[y].c} < Lex{P.exprs[x].b, P.exprs[x].c};
            });
    }

    std::vector<Con> cons;
    for (int i = 0; i < n; ++i) cons.push_back(nonneg(n, i));
    std::string signs(m, '?');
    LexPoint w;
    // Sign vectors that only become nonempty for larger p cap the partition at their emergence.
    Eta bound = cap;
    auto reaches = [&](const PInterval& I) {
        if (I.empty) return false;
        if (bound.infinite) return true;
        int c = cmp(I.lo, bound.v);
        return c < 0 || (c == 0 && I.lo_closed && !bound.open);
    };

    std::function<void(size_t)> dfs = [&](size_t f) {
        if (f == fams.size()) {
            PInterval I = project_to_p(cons, n);
            if (!I.near_zero()) {
                if (reaches(I)) bound = min(bound, I.lo_closed ? Eta::below(I.lo) : Eta::at_most(I.lo));
                return;
            }
            if (!lex_feasible(cons, n, &w)) throw std::logic_error("cell feasible near zero but not lexicographically");
            P.cells.push_back(signs);
            P.cell_eta.push_back(I.hi_inf ? Eta{} : Eta{false, I.hi, !I.hi_closed});
            P.witness.push_back(w);
            return;
        }
        const auto& fam = fams[f];
        const int k = static_cast<int>(fam.members.size());
        for (int slot = 0; slot <= 2 * k; ++slot) {
            size_t base = cons.size();
            if (slot % 2 == 0) {
                int j = slot / 2;
                if (j > 0) cons.push_back(con_from(P.exprs[fam.members[j - 1]], '>'));
                if (j < k) cons.push_back(con_from(P.exprs[fam.members[j]], '<'));
                for (int i = 0; i < k; ++i) signs[fam.members[i]] = i < j ? '>' : '<';
            } else {
                int j = slot / 2;
                cons.push_back(con_from(P.exprs[fam.members[j]], '='));
                for (int i = 0; i < k; ++i) signs[fam.members[i]] = i < j ? '>' : i == j ? '=' : '<';
            }
            if (reaches(project_to_p(cons, n))) dfs(f + 1);
            cons.resize(base);
        }
    };
    dfs(0);
    P.cap = bound;
    P.rebuild_index();
    return P;
}

CellStatus cell_status(int n, const std::vector<ParamExpr>& exprs, const SignVector& s) {
    std::vector<Con> cons;
    for (int i = 0; i < n; ++i) cons.push_back(nonneg(n, i));
    for (size_t k = 0; k < exprs.size(); ++k) cons.push_back(con_from(exprs[k], s.at(k)));
    PInterval I = project_to_p(cons, n);
    if (!I.near_zero()) return {};
    return {true, I.hi_inf ? Eta{} : Eta{false, I.hi, !I.hi_closed}};
}

std::vector<int> parent_map(const Partition& fine, const Partition& coarse) {
    std::vector<int> pos;
    for (const auto& e : coarse.exprs) {
        int k = fine.find_expr(e);
        if (k < 0) throw std::logic_error("parent_map: coarse expression missing from fine partition");
        pos.push_back(k);
    }
    std::vector<int> parent(fine.cells.size());
    for (size_t c = 0; c < fine.cells.size(); ++c) {
        SignVector s;
        for (int k : pos) s += fine.cells[c][k];
        parent[c] = coarse.find(s);
        if (parent[c] < 0) throw std::logic_error("parent_map: no containing cell for " + fine.cells[c]);
    }
    return parent;
}

Intersection intersect_partitions(const Partition& p1, const Partition& p2) {
    std::vector<ParamExpr> all = p1.exprs;
    all.insert(all.end(), p2.exprs.begin(), p2.exprs.end());
    Intersection r;
    r.part = enumerate_cells(p1.n, p1.M, all, min(p1.cap, p2.cap));
    r.part.cap = min(r.part.cap, min(p1.eta(), p2.eta()));
    r.parent1 = parent_map(r.part, p1);
    r.parent2 = parent_map(r.part, p2);
    return r;
}

std::vector<ParamExpr> atomic_diagonals(const Partition& P, Eta* cap) {
    const int n = P.n;
    std::vector<ParamExpr> borders;  // non-diagonal borders, axes first
    std::vector<int> member;         // index in P.exprs, -1 for axes
    for (int i = 0; i < n; ++i) { borders.push_back(ParamExpr::clock(n, i)); member.push_back(-1); }
    for (size_t k = 0; k < P.exprs.size(); ++k)
        if (!P.exprs[k].is_diagonal()) { borders.push_back(P.exprs[k]); member.push_back(static_cast<int>(k)); }

    std::vector<ParamExpr> out;
    std::unordered_set<std::string> seen;
    for (const auto& e : P.exprs) seen.insert(e.key());
    std::vector<Con> base;
    for (int i = 0; i < n; ++i) base.push_back(nonneg(n, i));
    for (size_t i = 0; i < borders.size(); ++i) {
        for (size_t j = i + 1; j < borders.size(); ++j) {
            ParamExpr d = diag_intersection(borders[i], borders[j]);
            if (d.is_constant() || seen.count(d.key())) continue;
            std::vector<Con> cons = base;
            cons.push_back(con_from(borders[i], '='));
            cons.push_back(con_from(borders[j], '='));
            if (lex_feasible(cons, n)) {
                seen.insert(d.key());
                out.push_back(d);
                continue;
            }
            // The two hyperplanes meet inside the orthant only for larger p. That matters only for
            // cells from which both are crossed in the future.
            if (!cap || member[i] < 0 || member[j] < 0) continue;
            Rational Ai = borders[i].A(), Aj = borders[j].A();
            for (size_t c = 0; c < P.cells.size(); ++c) {
                int si = sign_of(P.cells[c][member[i]]) * sgn(Ai);
                int sj = sign_of(P.cells[c][member[j]]) * sgn(Aj);
                if (si >= 0 || sj >= 0) continue;
                std::vector<Con> cc = P.constraints(static_cast<int>(c));
                cc.push_back(con_from(d, '='));
                PInterval I = project_to_p(cc, n);
                if (I.empty) continue;
                *cap = min(*cap, I.lo_closed ? Eta::below(I.lo) : Eta::at_most(I.lo));
            }
        }
    }
    return out;
}

Partition refine_atomic(const Partition& P) {
    Eta cap = P.cap;
    std::vector<ParamExpr> extra = atomic_diagonals(P, &cap);
    if (extra.empty() && cap == P.cap) return P;
    std::vector<ParamExpr> all = P.exprs;
    all.insert(all.end(), extra.begin(), extra.end());
    return enumerate_cells(P.n, P.M, all, cap);
}

Valuation cell_witness(const Partition& P, int cell, const Rational& pv) {
    Valuation v;
    if (!feasible_at(P.constraints(cell), P.n, pv, &v)) throw InfeasibleAtP();
    return v;
}

std::string partition_json(const Partition& P, const std::vector<std::string>& clocks) {
    nlohmann::ordered_json j;
    j["exprs"] = nlohmann::ordered_json::array();
    for (const auto& e : P.exprs) j["exprs"].push_back(e.str(clocks));
    Eta e = P.eta();
    j["eta"] = e.str();
    j["eta_open"] = e.open;
    j["cells"] = nlohmann::ordered_json::array();
    for (size_t c = 0; c < P.cells.size(); ++c)
        j["cells"].push_back({{"signs", P.cells[c]}, {"eta", P.cell_eta[c].str()}});
    return j.dump();
}

}  // namespace wtg
