#include "wtg/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace wtg {

namespace {

bool capped(const Region& r, int x, long M) { return r.ints[x] > M; }

void compress(Region& r) {
    std::vector<int> used;
    for (int f : r.fracs)
        if (f > 0) used.push_back(f);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& f : r.fracs)
        if (f > 0) f = 1 + static_cast<int>(std::lower_bound(used.begin(), used.end(), f) - used.begin());
}

void canon(Region& r, long M) {
    for (size_t x = 0; x < r.ints.size(); ++x)
        if (r.ints[x] >= M) r.fracs[x] = 0;
    compress(r);
}

}  // namespace

std::vector<Region> all_regions(int n, long M) {
    std::vector<Region> out;
    std::vector<int> ints(n, 0), fr(n, 0);
    std::function<void(int)> pick_frac = [&](int x) {
        if (x == n) {
            Region r{ints, fr};
            Region c = r;
            canon(c, M);
            if (c == r) out.push_back(r);
            return;
        }
        if (ints[x] >= M) { fr[x] = 0; pick_frac(x + 1); return; }
        for (int f = 0; f <= n; ++f) { fr[x] = f; pick_frac(x + 1); }
    };
    std::function<void(int)> pick_int = [&](int x) {
        if (x == n) { pick_frac(0); return; }
        for (long i = 0; i <= M + 1; ++i) { ints[x] = static_cast<int>(i); pick_int(x + 1); }
    };
    pick_int(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Region> time_successor(const Region& r, long M) {
    const int n = static_cast<int>(r.ints.size());
    Region s = r;
    bool any = false, zero = false;
    for (int x = 0; x < n; ++x) {
        if (capped(r, x, M)) continue;
        any = true;
        if (r.fracs[x] == 0) zero = true;
    }
    if (!any) return std::nullopt;
    if (zero) {
        for (int x = 0; x < n; ++x) {
            if (capped(r, x, M)) continue;
            if (r.fracs[x] > 0) s.fracs[x] = r.fracs[x] + 1;
            else if (r.ints[x] == M) s.ints[x] = static_cast<int>(M + 1);
            else s.fracs[x] = 1;
        }
    } else {
        int top = 0;
        for (int x = 0; x < n; ++x)
            if (!capped(r, x, M)) top = std::max(top, r.fracs[x]);
        for (int x = 0; x < n; ++x)
            if (!capped(r, x, M) && r.fracs[x] == top) { s.ints[x] += 1; s.fracs[x] = 0; }
    }
    canon(s, M);
    return s;
}

Region reset_region(const Region& r, const std::vector<int>& Y) {
    Region s = r;
    for (int y : Y) { s.ints[y] = 0; s.fracs[y] = 0; }
    compress(s);
    return s;
}

bool region_sat(const Region& r, const Guard& g, long M) {
    if (g.empty_set) return false;
    for (const auto& a : g.atoms) {
        int c;
        if (capped(r, a.clock, M)) c = 1;
        else if (r.fracs[a.clock] == 0) c = r.ints[a.clock] < a.bound ? -1 : r.ints[a.clock] > a.bound ? 1 : 0;
        else c = r.ints[a.clock] < a.bound ? -1 : 1;
        bool ok = false;
        switch (a.op) {
            case CmpOp::Lt: ok = c < 0; break;
            case CmpOp::Le: ok = c <= 0; break;
            case CmpOp::Eq: ok = c == 0; break;
            case CmpOp::Ge: ok = c >= 0; break;
            case CmpOp::Gt: ok = c > 0; break;
        }
        if (!ok) return false;
    }
    return true;
}

std::vector<std::vector<int>> corners(const Region& r, long M) {
    const int n = static_cast<int>(r.ints.size());
    int k = 0;
    for (int x = 0; x < n; ++x)
        if (!capped(r, x, M)) k = std::max(k, r.fracs[x]);
    std::vector<std::vector<int>> out;
    for (int j = 0; j <= k; ++j) {
        std::vector<int> c(n);
        for (int x = 0; x < n; ++x) {
            if (capped(r, x, M)) c[x] = static_cast<int>(M + 1);
            else c[x] = r.ints[x] + (r.fracs[x] > 0 && r.fracs[x] > k - j ? 1 : 0);
        }
        out.push_back(c);
    }
    return out;
}

Region region_of(const Valuation& v, long M) {
    Region r;
    std::vector<Rational> fr;
    for (const auto& x : v) {
        if (x > M) { r.ints.push_back(static_cast<int>(M + 1)); fr.push_back(0); continue; }
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        r.ints.push_back(static_cast<int>(f.get_si()));
        fr.push_back(x - Rational(f));
    }
    std::vector<Rational> pos;
    for (const auto& f : fr)
        if (sgn(f) > 0) pos.push_back(f);
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    for (const auto& f : fr)
        r.fracs.push_back(sgn(f) > 0 ? 1 + static_cast<int>(std::lower_bound(pos.begin(), pos.end(), f) - pos.begin()) : 0);
    return r;
}

RegionGame build_region_game(const Game& g) {
    RegionGame rg;
    rg.n = g.num_clocks();
    rg.M = g.M;
    rg.regions = all_regions(rg.n, g.M);
    std::map<Region, int> index;
    for (size_t i = 0; i < rg.regions.size(); ++i) index[rg.regions[i]] = static_cast<int>(i);
    std::vector<Guard> guards;
    for (const auto& t : g.transitions) guards.push_back(normalize_guard(t.guard));
    for (size_t l = 0; l < g.locations.size(); ++l)
        for (size_t r = 0; r < rg.regions.size(); ++r) rg.states.emplace_back(static_cast<int>(l), static_cast<int>(r));
    for (size_t l = 0; l < g.locations.size(); ++l) {
        if (g.locations[l].owner == Owner::Target) continue;
        std::vector<int> out = g.outgoing(static_cast<int>(l));
        for (size_t r = 0; r < rg.regions.size(); ++r) {
            std::optional<Region> cur = rg.regions[r];
            while (cur) {
                for (int t : out) {
                    if (!region_sat(*cur, guards[t], g.M)) continue;
                    const Transition& tr = g.transitions[t];
                    int to = index.at(reset_region(*cur, tr.resets));
                    rg.edges.push_back({rg.state_index(static_cast<int>(l), static_cast<int>(r)), rg.state_index(tr.target, to), t});
                }
                if (g.locations[l].urgent) break;
                cur = time_successor(*cur, g.M);
            }
        }
    }
    return rg;
}

const char* to_string(SccSign s) {
    switch (s) {
        case SccSign::Trivial: return "Trivial";
        case SccSign::Positive: return "Positive";
        case SccSign::Negative: return "Negative";
        case SccSign::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

struct WEdge {
    int from, to;
    long w;
};

// True if the graph has a cycle of weight <= 0.
bool has_nonpositive_cycle(int nodes, const std::vector<WEdge>& edges) {
    std::vector<long> d(nodes, 0);
    for (int it = 0; it < nodes; ++it) {
        bool changed = false;
        for (const auto& e : edges)
            if (d[e.from] + e.w < d[e.to]) { d[e.to] = d[e.from] + e.w; changed = true; }
        if (!changed) break;
        if (it == nodes - 1) return true;  // negative cycle
    }
    for (const auto& e : edges)
        if (d[e.from] + e.w < d[e.to]) return true;
    // Zero cycles live in the subgraph of tight edges.
    std::vector<std::vector<int>> adj(nodes);
    for (const auto& e : edges)
        if (d[e.from] + e.w == d[e.to]) adj[e.from].push_back(e.to);
    std::vector<int> color(nodes, 0);
    std::function<bool(int)> dfs = [&](int u) {
        color[u] = 1;
        for (int v : adj[u]) {
            if (color[v] == 1) return true;
            if (color[v] == 0 && dfs(v)) return true;
        }
        color[u] = 2;
        return false;
    };
    for (int u = 0; u < nodes; ++u)
        if (color[u] == 0 && dfs(u)) return true;
    return false;
}

}  // namespace

SccReport scc_signs(const Game& g, const RegionGame& rg) {
    const int N = static_cast<int>(rg.states.size());
    std::vector<std::vector<int>> adj(N);
    for (const auto& e : rg.edges) adj[e.from].push_back(e.to);

    SccReport rep;
    rep.scc_of.assign(N, -1);
    std::vector<int> idx(N, -1), low(N, 0), stack;
    std::vector<char> on(N, 0);
    int counter = 0;
    std::function<void(int)> strong = [&](int v) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = 1;
        for (int w : adj[v]) {
            if (idx[w] < 0) { strong(w); low[v] = std::min(low[v], low[w]); }
            else if (on[w]) low[v] = std::min(low[v], idx[w]);
        }
        if (low[v] == idx[v]) {
            SccInfo info;
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on[w] = 0;
                rep.scc_of[w] = static_cast<int>(rep.sccs.size());
                info.states.push_back(w);
                if (w == v) break;
            }
            std::sort(info.states.begin(), info.states.end());
            rep.sccs.push_back(std::move(info));
        }
    };
    for (int v = 0; v < N; ++v)
        if (idx[v] < 0) strong(v);

    // Longest chain in the SCC DAG (Tarjan emits sinks first).
    std::vector<int> height(rep.sccs.size(), 0);
    for (size_t c = 0; c < rep.sccs.size(); ++c)
        for (int v : rep.sccs[c].states)
            for (int w : adj[v])
                if (rep.scc_of[w] != static_cast<int>(c)) height[c] = std::max(height[c], height[rep.scc_of[w]] + 1);
    for (int h : height) rep.dag_depth = std::max(rep.dag_depth, h);

    std::vector<Guard> guards;
    for (const auto& t : g.transitions) guards.push_back(normalize_guard(t.guard));
    std::map<Region, int> rindex;
    for (size_t i = 0; i < rg.regions.size(); ++i) rindex[rg.regions[i]] = static_cast<int>(i);

    for (size_t c = 0; c < rep.sccs.size(); ++c) {
        auto& info = rep.sccs[c];
        bool cyclic = info.states.size() > 1;
        if (!cyclic)
            for (int w : adj[info.states[0]])
                if (w == info.states[0]) cyclic = true;
        if (!cyclic) { info.sign = SccSign::Trivial; continue; }

        // Corner-point graph restricted to the SCC.
        std::map<std::pair<int, std::vector<int>>, int> node;
        auto node_of = [&](int state, const std::vector<int>& corner) {
            auto key = std::make_pair(state, corner);
            auto it = node.find(key);
            if (it != node.end()) return it->second;
            int id = static_cast<int>(node.size());
            node[key] = id;
            return id;
        };
        std::vector<WEdge> wedges;
        for (int s : info.states) {
            auto [l, ri] = rg.states[s];
            const Region& r = rg.regions[ri];
            const Location& loc = g.locations[l];
            std::vector<Region> succ{r};
            if (!loc.urgent)
                for (auto cur = time_successor(r, g.M); cur; cur = time_successor(*cur, g.M)) succ.push_back(*cur);
            for (const auto& kappa : corners(r, g.M)) {
                int from = node_of(s, kappa);
                for (long d = 0; d <= (loc.urgent ? 0 : g.M + 1); ++d) {
                    std::vector<int> beta = kappa;
                    for (auto& x : beta) x = x > g.M ? x : static_cast<int>(std::min<long>(x + d, g.M + 1));
                    for (const auto& r2 : succ) {
                        auto cs = corners(r2, g.M);
                        if (std::find(cs.begin(), cs.end(), beta) == cs.end()) continue;
                        for (int t : g.outgoing(l)) {
                            if (!region_sat(r2, guards[t], g.M)) continue;
                            const Transition& tr = g.transitions[t];
                            Region r3 = reset_region(r2, tr.resets);
                            int s3 = rg.state_index(tr.target, rindex.at(r3));
                            if (rep.scc_of[s3] != static_cast<int>(c)) continue;
                            std::vector<int> b3 = beta;
                            for (int y : tr.resets) b3[y] = 0;
                            int to = node_of(s3, b3);
                            wedges.push_back({from, to, d * loc.rate + tr.weight});
                        }
                    }
                }
            }
        }
        const int nodes = static_cast<int>(node.size());
        bool pos = !has_nonpositive_cycle(nodes, wedges);
        std::vector<WEdge> neg = wedges;
        for (auto& e : neg) e.w = -e.w;
        bool negv = !has_nonpositive_cycle(nodes, neg);
        info.sign = pos ? SccSign::Positive : negv ? SccSign::Negative : SccSign::Mixed;
    }
    return rep;
}

std::string DivergenceReport::summary(const Game& g, const RegionGame& rg) const {
    std::ostringstream os;
    bool all_trivial = true;
    for (const auto& s : sccs.sccs)
        if (s.sign != SccSign::Trivial) all_trivial = false;
    if (divergent) os << (all_trivial ? "Divergent (all SCCs trivial)" : "Divergent");
    else os << "NotDivergent";
    os << '\n';
    for (const auto& s : sccs.sccs) {
        if (s.sign == SccSign::Trivial) continue;
        std::vector<std::string> locs;
        for (int st : s.states) {
            const std::string& name = g.locations[rg.states[st].first].name;
            if (std::find(locs.begin(), locs.end(), name) == locs.end()) locs.push_back(name);
        }
        os << "scc";
        for (const auto& n : locs) os << ' ' << n;
        os << " (" << s.states.size() << " region states): " << to_string(s.sign) << '\n';
    }
    return os.str();
}

DivergenceReport check_divergent(const Game& g) {
    RegionGame rg = build_region_game(g);
    DivergenceReport d;
    d.sccs = scc_signs(g, rg);
    for (size_t c = 0; c < d.sccs.sccs.size(); ++c)
        if (d.sccs.sccs[c].sign == SccSign::Mixed) { d.divergent = false; d.mixed.push_back(static_cast<int>(c)); }
    return d;
}

}  // namespace wtg
