#include "wtg/solver.hpp"

#include "wtg/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace wtg {

namespace {

std::vector<std::pair<std::string, std::string>> describe(const Game& g, const RegionGame& rg, const SccReport& r) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : r.sccs) {
        if (s.sign == SccSign::Trivial) continue;
        std::string d;
        std::vector<int> locs;
        for (int st : s.states) {
            int l = rg.states[st].first;
            if (std::find(locs.begin(), locs.end(), l) != locs.end()) continue;
            locs.push_back(l);
            d += (d.empty() ? "" : ",") + g.locations[l].name;
        }
        out.emplace_back(d, to_string(s.sign));
    }
    return out;
}

bool all_equal(const ValueMap& a, const ValueMap& b) {
    for (size_t l = 0; l < a.values.size(); ++l)
        if (!pvf_equal(a.values[l], b.values[l])) return false;
    return true;
}

}  // namespace

ExtRational LimitFunction::eval(const Valuation& v) const {
    int c = part.locate(v, 0);
    if (c < 0) throw std::logic_error("valuation outside the limit partition");
    return pieces[c].eval(v, 0);
}

SolveReport solve_acyclic(const Game& g) {
    validate(g);
    auto D = depth(g);
    if (!D) throw NotAcyclic();
    SolveReport r;
    r.mode = "acyclic";
    r.values = initial_values(g);
    for (int i = 0; i < *D; ++i) r.values = apply_F(r.values, g);
    r.iterations = *D;
    r.converged = true;
    r.eta = r.values.eta();
    return r;
}

int default_iteration_cap(const Game& g, const DivergenceReport& d, std::size_t region_states) {
    long We = std::max<long>(weight_stats(g).W_e, 1);
    long cap = 16L * static_cast<long>(region_states) * We * (d.sccs.dag_depth + 1);
    return static_cast<int>(std::min<long>(cap, 1L << 30));
}

SolveReport solve_divergent(const Game& g, std::optional<int> cap) {
    validate(g);
    RegionGame rg = build_region_game(g);
    DivergenceReport d;
    d.sccs = scc_signs(g, rg);
    for (size_t c = 0; c < d.sccs.sccs.size(); ++c)
        if (d.sccs.sccs[c].sign == SccSign::Mixed) { d.divergent = false; d.mixed.push_back(static_cast<int>(c)); }
    if (!d.divergent) throw PreconditionError("game is not divergent");
    int limit = cap ? *cap : default_iteration_cap(g, d, rg.states.size());

    SolveReport r;
    r.mode = "divergent";
    r.scc_signs = describe(g, rg, d.sccs);
    r.values = initial_values(g);
    for (int i = 0; i < limit; ++i) {
        ValueMap next = apply_F(r.values, g);
        if (all_equal(next, r.values)) {
            r.converged = true;
            r.eta = r.values.eta();
            return r;
        }
        r.values = std::move(next);
        r.iterations = i + 1;
    }
    throw NonConvergent(limit);
}

SolveReport solve(const Game& g, const std::string& mode, std::optional<int> cap) {
    if (mode == "acyclic") return solve_acyclic(g);
    if (mode == "divergent") return solve_divergent(g, cap);
    if (mode != "auto") throw InputError("unknown mode '" + mode + "'");
    validate(g);
    if (depth(g)) return solve_acyclic(g);
    return solve_divergent(g, cap);
}

namespace {

int source_cell(const PVF& f, const Valuation& v) {
    SignVector s;
    for (const auto& e : f.part.exprs) s.push_back(sign_char(Lex(e.eval(v, 0), e.c).sign()));
    int c = f.part.find(s);
    if (c < 0) throw std::logic_error("no small-p cell at the given valuation");
    return c;
}

Piece drop_p(Piece p) {
    if (p.finite()) p.e.c = 0;
    return p;
}

}  // namespace

ExtRational limit_value(const PVF& f, const Valuation& v) {
    return f.pieces[source_cell(f, v)].eval(v, 0);
}

LimitFunction limit_of(const PVF& f) {
    std::vector<ParamExpr> exprs;
    for (auto e : f.part.exprs) {
        e.c = 0;
        exprs.push_back(e);
    }
    LimitFunction L;
    L.part = enumerate_cells(f.n(), f.part.M, exprs, Eta{});
    for (size_t c = 0; c < L.part.cells.size(); ++c) {
        Valuation w = cell_witness(L.part, static_cast<int>(c), 1);
        L.pieces.push_back(drop_p(f.pieces[source_cell(f, w)]));
    }
    return L;
}

std::vector<LimitFunction> robust_limit(const ValueMap& v) {
    std::vector<LimitFunction> out;
    for (const auto& f : v.values) out.push_back(limit_of(f));
    return out;
}

bool decide_threshold(const Game& g, int loc, const Valuation& v, const ExtRational& lambda) {
    SolveReport r = solve(g);
    if (loc < 0 || loc >= static_cast<int>(g.locations.size())) throw InputError("unknown location");
    return limit_value(r.values.values[loc], v) <= lambda;
}

std::string report_json(const Game& g, const SolveReport& r) {
    nlohmann::ordered_json j;
    j["mode"] = r.mode;
    j["eta"] = r.eta.str();
    j["eta_open"] = r.eta.open;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["scc_signs"] = nlohmann::ordered_json::array();
    for (const auto& [d, s] : r.scc_signs) j["scc_signs"].push_back({{"locations", d}, {"sign", s}});
    j["locations"] = nlohmann::ordered_json::array();
    for (size_t l = 0; l < g.locations.size(); ++l) {
        nlohmann::ordered_json e;
        e["name"] = g.locations[l].name;
        e["value"] = nlohmann::ordered_json::parse(pvf_json(r.values.values[l], g.clocks));
        e["limit"] = nlohmann::ordered_json::parse(limit_json(limit_of(r.values.values[l]), g.clocks));
        j["locations"].push_back(e);
    }
    return j.dump(2);
}

std::string limit_json(const LimitFunction& f, const std::vector<std::string>& clocks) {
    nlohmann::ordered_json j;
    j["exprs"] = nlohmann::ordered_json::array();
    for (const auto& x : f.part.exprs) j["exprs"].push_back(x.str(clocks));
    j["cells"] = nlohmann::ordered_json::array();
    for (size_t c = 0; c < f.part.cells.size(); ++c)
        j["cells"].push_back({{"signs", f.part.cells[c]}, {"piece", f.pieces[c].str(clocks)}});
    return j.dump();
}

}  // namespace wtg
