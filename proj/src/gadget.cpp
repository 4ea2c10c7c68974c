#include "wtg/gadget.hpp"

#include <json.hpp>

#include <algorithm>

namespace wtg {

namespace {

std::string fresh_name(const Game& g, std::string base) {
    while (g.location_index(base) >= 0) base += "'";
    return base;
}

bool is_checkpoint(const GadgetMap& m, int loc) {
    for (const auto& [t, l] : m.checkpoint)
        if (l == loc) return true;
    return false;
}

}  // namespace

GadgetMap to_excessive(const Game& g) {
    GadgetMap m;
    m.source = g;
    Game& e = m.game;
    e.clocks = g.clocks;
    e.M = g.M;
    e.locations = g.locations;
    for (auto& l : e.locations) l.urgent = false;
    e.init_location = g.init_location;
    e.init_valuation = g.init_valuation;

    m.frown = static_cast<int>(e.locations.size());
    e.locations.push_back({fresh_name(g, "frown"), Owner::Min, 0, false});

    std::vector<Transition> exits;
    for (size_t t = 0; t < g.transitions.size(); ++t) {
        const Transition& tr = g.transitions[t];
        if (g.locations[tr.source].owner != Owner::Min) {
            e.transitions.push_back(tr);
            continue;
        }
        int cp = static_cast<int>(e.locations.size());
        std::string name = g.locations[tr.source].name + "^d" + std::to_string(t);
        while (e.location_index(name) >= 0) name += "'";
        e.locations.push_back({name, Owner::Max, 0, true});
        m.checkpoint.emplace_back(static_cast<int>(t), cp);
        e.transitions.push_back({tr.source, Guard{}, {}, cp, tr.weight});
        exits.push_back({cp, tr.guard, tr.resets, tr.target, 0});
        for (const auto& piece : guard_complement(tr.guard)) exits.push_back({cp, piece, {}, m.frown, 0});
    }
    e.transitions.insert(e.transitions.end(), exits.begin(), exits.end());
    e.transitions.push_back({m.frown, Guard{}, {}, m.frown, 0});
    return m;
}

bool gadget_wellformed(const GadgetMap& m) {
    const Game& g = m.source;
    const Game& e = m.game;
    std::size_t min_edges = 0;
    for (const auto& t : g.transitions)
        if (g.locations[t.source].owner == Owner::Min) ++min_edges;
    if (m.checkpoint.size() != min_edges) return false;
    if (e.locations.size() != g.locations.size() + 1 + min_edges) return false;
    if (m.frown < 0 || m.frown >= static_cast<int>(e.locations.size())) return false;
    const Location& fr = e.locations[m.frown];
    if (fr.owner != Owner::Min || fr.rate != 0 || fr.urgent) return false;
    bool self_loop = false;
    for (const auto& t : e.transitions)
        if (t.source == m.frown) {
            if (t.target != m.frown || !t.guard.is_true() || !t.resets.empty()) return false;
            self_loop = true;
        }
    if (!self_loop) return false;

    for (size_t l = 0; l < g.locations.size(); ++l)
        if (!(e.locations[l] == g.locations[l])) return false;

    // Max transitions are copied verbatim.
    std::vector<Transition> copied;
    for (const auto& t : g.transitions)
        if (g.locations[t.source].owner != Owner::Min) copied.push_back(t);
    std::vector<Transition> from_max;
    for (const auto& t : e.transitions)
        if (t.source < static_cast<int>(g.locations.size()) && g.locations[t.source].owner != Owner::Min) from_max.push_back(t);
    if (copied != from_max) return false;

    // Sample grid of step 1/2 over [0, M+1]^n, at most a few thousand points.
    const int n = g.num_clocks();
    const long steps = 2 * (g.M + 1) + 1;
    std::vector<Valuation> grid;
    std::vector<long> k(n, 0);
    while (true) {
        Valuation v(n);
        for (int x = 0; x < n; ++x) v[x] = frac(k[x], 2);
        grid.push_back(v);
        int x = 0;
        while (x < n && ++k[x] == steps) k[x++] = 0;
        if (x == n || grid.size() > 20000) break;
    }

    for (const auto& [ti, cp] : m.checkpoint) {
        const Transition& src = g.transitions[ti];
        const Location& c = e.locations[cp];
        if (c.owner != Owner::Max || !c.urgent || c.rate != 0) return false;
        int into = 0;
        for (const auto& t : e.transitions) {
            if (t.target != cp) continue;
            ++into;
            if (t.source != src.source || !t.guard.is_true() || !t.resets.empty() || t.weight != src.weight) return false;
        }
        if (into != 1) return false;
        std::vector<Transition> out;
        for (const auto& t : e.transitions)
            if (t.source == cp) out.push_back(t);
        if (out.empty()) return false;
        const Transition& go = out.front();
        if (!(go.guard == src.guard) || go.resets != src.resets || go.target != src.target || go.weight != 0) return false;
        for (size_t i = 1; i < out.size(); ++i)
            if (out[i].target != m.frown || !out[i].resets.empty() || out[i].weight != 0) return false;
        for (const auto& v : grid) {
            int hits = 0;
            for (const auto& t : out) hits += guard_sat(t.guard, v) ? 1 : 0;
            if (hits != 1) return false;
        }
    }
    for (size_t l = g.locations.size(); l < e.locations.size(); ++l)
        if (static_cast<int>(l) != m.frown && !is_checkpoint(m, static_cast<int>(l))) return false;
    return true;
}

std::string gadget_map_json(const GadgetMap& m) {
    nlohmann::ordered_json j;
    j["frown"] = m.game.locations[m.frown].name;
    j["checkpoints"] = nlohmann::ordered_json::array();
    for (const auto& [t, l] : m.checkpoint) {
        const Transition& tr = m.source.transitions[t];
        j["checkpoints"].push_back({{"transition", t},
                                    {"source", m.source.locations[tr.source].name},
                                    {"target", m.source.locations[tr.target].name},
                                    {"checkpoint", m.game.locations[l].name}});
    }
    return j.dump(2);
}

}  // namespace wtg
