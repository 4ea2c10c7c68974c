#include "wtg/oracle.hpp"

#include "wtg/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

namespace wtg {

namespace {

using Val = std::int64_t;
constexpr Val POS = std::numeric_limits<Val>::max() / 4;
constexpr Val NEG = -POS;
constexpr Val NONE = std::numeric_limits<Val>::min();  // no move available (Max)
constexpr int MAXN = 4;

Val add(Val a, Val b) {
    if (a == NONE || a >= POS || a <= NEG) return a;
    return a + b;
}

// A grid point k*g plus an infinitesimal offset per clock. r ranks the offsets relative to 0;
// a clock at k == K is above every relevant constant and carries no offset.
struct State {
    std::array<int, MAXN> k{};
    std::array<int, MAXN> r{};
};

class Space {
public:
    Space(int n, long C) : n_(n), C_(C), K_(C + 1) {
        nk_ = 1;
        nr_ = 1;
        for (int i = 0; i < n; ++i) { nk_ *= static_cast<std::size_t>(K_ + 1); nr_ *= static_cast<std::size_t>(2 * n + 1); }
    }
    std::size_t per_location() const { return nk_ * nr_; }
    long K() const { return K_; }
    long C() const { return C_; }
    int n() const { return n_; }

    std::size_t index(const State& s) const {
        std::size_t a = 0, b = 0;
        for (int i = n_ - 1; i >= 0; --i) {
            a = a * static_cast<std::size_t>(K_ + 1) + static_cast<std::size_t>(s.k[i]);
            b = b * static_cast<std::size_t>(2 * n_ + 1) + static_cast<std::size_t>(s.r[i] + n_);
        }
        return a * nr_ + b;
    }
    State decode(std::size_t idx) const {
        State s;
        std::size_t a = idx / nr_, b = idx % nr_;
        for (int i = 0; i < n_; ++i) {
            s.k[i] = static_cast<int>(a % static_cast<std::size_t>(K_ + 1));
            a /= static_cast<std::size_t>(K_ + 1);
            s.r[i] = static_cast<int>(b % static_cast<std::size_t>(2 * n_ + 1)) - n_;
            b /= static_cast<std::size_t>(2 * n_ + 1);
        }
        return s;
    }
    bool capped(const State& s, int i) const { return s.k[i] == K_; }

    // Ranks of values d (capped clocks ignored), keeping 0 as the reference.
    void canon(State& s, const std::array<int, MAXN>& d) const {
        std::vector<int> pos, neg;
        for (int i = 0; i < n_; ++i) {
            if (capped(s, i)) continue;
            if (d[i] > 0) pos.push_back(d[i]);
            if (d[i] < 0) neg.push_back(d[i]);
        }
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        std::sort(neg.begin(), neg.end(), std::greater<int>());
        neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
        for (int i = 0; i < n_; ++i) {
            if (capped(s, i)) { s.r[i] = 0; continue; }
            if (d[i] > 0) s.r[i] = 1 + static_cast<int>(std::lower_bound(pos.begin(), pos.end(), d[i]) - pos.begin());
            else if (d[i] < 0) s.r[i] = -1 - static_cast<int>(std::find(neg.begin(), neg.end(), d[i]) - neg.begin());
            else s.r[i] = 0;
        }
    }
    void normalize(State& s) const {
        bool changed = false;
        for (int i = 0; i < n_; ++i)
            if (!capped(s, i) && s.k[i] == C_ && s.r[i] > 0) { s.k[i] = static_cast<int>(K_); s.r[i] = 0; changed = true; }
        if (changed) canon(s, s.r);
    }

    // Positions (doubled coordinates) for the new zero after an infinitesimal shift.
    std::vector<int> zero_positions(const State& s) const {
        std::vector<int> vals;
        for (int i = 0; i < n_; ++i)
            if (!capped(s, i)) vals.push_back(2 * s.r[i]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        if (vals.empty()) return {0};
        std::vector<int> z;
        auto gap = [&](long lo, long hi, bool lo_inf, bool hi_inf) {
            if ((lo_inf || lo < 0) && (hi_inf || hi > 0)) z.push_back(0);
            else if (!lo_inf) z.push_back(static_cast<int>(lo) + 1);
            else z.push_back(static_cast<int>(hi) - 1);
        };
        gap(0, vals.front(), true, false);
        for (size_t i = 0; i < vals.size(); ++i) {
            z.push_back(vals[i]);
            if (i + 1 < vals.size()) gap(vals[i], vals[i + 1], false, false);
        }
        gap(vals.back(), 0, false, true);
        return z;
    }
    State shift(const State& s, int z) const {
        State t = s;
        std::array<int, MAXN> d{};
        for (int i = 0; i < n_; ++i) d[i] = 2 * s.r[i] - z;
        canon(t, d);
        normalize(t);
        return t;
    }
    State step(const State& s, long j) const {
        State t = s;
        for (int i = 0; i < n_; ++i) {
            if (capped(t, i)) continue;
            long k = t.k[i] + j;
            if (k < 0) throw std::logic_error("oracle: negative clock");
            if (k > C_) { t.k[i] = static_cast<int>(K_); t.r[i] = 0; }
            else t.k[i] = static_cast<int>(k);
        }
        canon(t, t.r);
        normalize(t);
        return t;
    }
    State reset(const State& s, const std::vector<int>& Y) const {
        State t = s;
        for (int y : Y) { t.k[y] = 0; t.r[y] = 0; }
        canon(t, t.r);
        return t;
    }

private:
    int n_;
    long C_, K_;
    std::size_t nk_, nr_;
};

bool guard_ok(const Space& sp, const State& s, const Guard& g, long G) {
    if (g.empty_set) return false;
    for (const auto& a : g.atoms) {
        int c;
        if (sp.capped(s, a.clock)) {
            c = 1;
        } else {
            long kc = a.bound * G;
            c = s.k[a.clock] < kc ? -1 : s.k[a.clock] > kc ? 1 : (s.r[a.clock] > 0 ? 1 : s.r[a.clock] < 0 ? -1 : 0);
        }
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

// Every clock is at least j grid steps (delays t >= p in the centered convention).
bool at_least(const Space& sp, const State& s, long j) {
    for (int i = 0; i < sp.n(); ++i) {
        if (sp.capped(s, i)) continue;
        if (s.k[i] < j || (s.k[i] == j && s.r[i] < 0)) return false;
    }
    return true;
}

bool all_capped(const Space& sp, const State& s) {
    for (int i = 0; i < sp.n(); ++i)
        if (!sp.capped(s, i)) return false;
    return true;
}

Rational canonical(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

long as_long(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw GridMismatch(std::string(what) + " is not a multiple of the grid");
    if (!q.get_num().fits_slong_p()) throw GridMismatch(std::string(what) + " too large");
    return q.get_num().get_si();
}

}  // namespace

Convention parse_convention(const std::string& s) {
    if (s == "shifted") return Convention::Shifted;
    if (s == "centered") return Convention::Centered;
    if (s == "excessive") return Convention::Excessive;
    throw InputError("unknown convention: " + s);
}

OracleResult oracle_value(const Game& g, const OracleConfig& cfg) {
    if (sgn(cfg.grid) <= 0 || sgn(cfg.p) <= 0) throw GridMismatch("grid and p must be positive");
    if (cfg.p > Rational(1, 2)) throw GridMismatch("p must be at most 1/2");
    const long G = as_long(1 / cfg.grid, "1");
    const long P = as_long(cfg.p / cfg.grid, "p");
    const int n = g.num_clocks();
    if (n > MAXN) throw InputError("oracle supports at most 4 clocks");
    const long C = g.M * G + 2 * P;
    Space sp(n, C);
    const std::size_t per = sp.per_location();
    if (per * g.locations.size() > cfg.max_states)
        throw InputError("oracle state space too large (" + std::to_string(per * g.locations.size()) + " states)");
    const bool qual = cfg.mode == OracleMode::Qualitative;

    int horizon = cfg.max_iterations;
    bool fixed_horizon = false;
    if (cfg.horizon) { horizon = *cfg.horizon; fixed_horizon = true; }
    else if (auto d = depth(g)) { horizon = *d; fixed_horizon = true; }

    const size_t L = g.locations.size();
    std::vector<std::vector<Val>> V(L, std::vector<Val>(per, POS));
    for (size_t l = 0; l < L; ++l)
        if (g.locations[l].owner == Owner::Target) std::fill(V[l].begin(), V[l].end(), 0);

    std::vector<std::vector<int>> out(L);
    std::vector<Guard> guards;
    for (const auto& t : g.transitions) guards.push_back(normalize_guard(t.guard));
    for (size_t l = 0; l < L; ++l) out[l] = g.outgoing(static_cast<int>(l));

    OracleResult res;
    std::vector<Val> PA(per), S(per);
    std::vector<char> have(per);
    int it = 0;
    bool converged = false;
    while (it < horizon) {
        std::vector<std::vector<Val>> W(L);
        for (size_t l = 0; l < L; ++l) {
            const Location& loc = g.locations[l];
            if (loc.owner == Owner::Target) { W[l] = V[l]; continue; }
            const bool is_min = loc.owner == Owner::Min;
            const long rate = qual ? 0 : loc.rate;
            // Value of firing some transition from each state, delay already spent.
            for (std::size_t idx = 0; idx < per; ++idx) {
                State s = sp.decode(idx);
                Val best = is_min ? POS : NONE;
                for (int ti : out[l]) {
                    const Transition& tr = g.transitions[ti];
                    const Guard& gd = guards[ti];
                    const Val wt = qual ? 0 : tr.weight * G;
                    if (!is_min) {
                        if (!guard_ok(sp, s, gd, G)) continue;
                        Val v = add(V[tr.target][sp.index(sp.reset(s, tr.resets))], wt);
                        if (best == NONE || v > best) best = v;
                        continue;
                    }
                    long jlo = 0, jhi = 2 * P;
                    if (cfg.convention == Convention::Centered) {
                        if (!at_least(sp, s, P)) continue;
                        if (!guard_ok(sp, sp.step(s, -P), gd, G) || !guard_ok(sp, sp.step(s, P), gd, G)) continue;
                        jlo = -P;
                        jhi = P;
                    } else {
                        if (!guard_ok(sp, s, gd, G)) continue;
                        if (cfg.convention == Convention::Shifted && !guard_ok(sp, sp.step(s, 2 * P), gd, G)) continue;
                    }
                    Val worst = NEG;
                    for (long j = jlo; j <= jhi && worst < POS; ++j) {
                        State sj = sp.step(s, j);
                        for (int z : sp.zero_positions(sj)) {
                            if (j == jlo && z > 0) continue;
                            if (j == jhi && z < 0) continue;
                            State se = sp.shift(sj, z);
                            Val v = add(V[tr.target][sp.index(sp.reset(se, tr.resets))], j * rate + wt);
                            worst = std::max(worst, v);
                        }
                    }
                    best = std::min(best, worst);
                }
                PA[idx] = best;
            }
            auto better = [&](Val a, Val b) {  // pick the preferred of a, b for the owner
                if (is_min) return std::min(a, b);
                if (a == NONE) return b;
                if (b == NONE) return a;
                return std::max(a, b);
            };
            // A: best over all infinitesimal shifts at this grid point; A0: only nonnegative shifts.
            auto A = [&](const State& s, bool nonneg_only) {
                Val best = is_min ? POS : NONE;
                for (int z : sp.zero_positions(s)) {
                    if (nonneg_only && z > 0) continue;
                    best = better(best, PA[sp.index(sp.shift(s, z))]);
                }
                return best;
            };
            std::fill(have.begin(), have.end(), 0);
            // S(s) = best(A(s), rate + S(D s)), along the diagonal.
            auto suffix = [&](const State& s0) {
                std::vector<State> chain{s0};
                while (true) {
                    const State& s = chain.back();
                    if (have[sp.index(s)] || all_capped(sp, s)) break;
                    chain.push_back(sp.step(s, 1));
                }
                for (size_t i = chain.size(); i-- > 0;) {
                    std::size_t idx = sp.index(chain[i]);
                    if (have[idx]) continue;
                    Val a = A(chain[i], false);
                    Val v;
                    if (all_capped(sp, chain[i])) {
                        v = a;
                        bool finite = a != NONE && a < POS && a > NEG;
                        if (is_min && rate < 0 && (finite || a == NEG)) v = NEG;
                        if (!is_min && rate > 0 && (finite || a == POS)) v = POS;
                    } else {
                        v = better(a, add(S[sp.index(chain[i + 1])], rate));
                    }
                    S[idx] = v;
                    have[idx] = 1;
                }
                return S[sp.index(s0)];
            };
            W[l].assign(per, POS);
            for (std::size_t idx = 0; idx < per; ++idx) {
                State s = sp.decode(idx);
                Val v;
                if (loc.urgent) {
                    v = PA[idx];
                } else if (is_min && cfg.convention == Convention::Centered) {
                    State sp0 = sp.step(s, P);
                    Val a0 = A(sp0, true);
                    Val rest = all_capped(sp, sp0) ? suffix(sp0) : add(suffix(sp.step(sp0, 1)), rate);
                    v = add(better(a0, rest), P * rate);
                } else {
                    Val a0 = A(s, true);
                    Val rest = all_capped(sp, s) ? suffix(s) : add(suffix(sp.step(s, 1)), rate);
                    v = better(a0, rest);
                }
                if (v == NONE) v = POS;
                W[l][idx] = v;
            }
        }
        ++it;
        bool same = W == V;
        V = std::move(W);
        if (same) { converged = true; break; }
    }
    if (!fixed_horizon && !converged) throw NonConvergent(it);

    res.n = n;
    res.M = g.M;
    res.G = G;
    res.iterations = it;
    res.converged = converged || fixed_horizon;
    for (const auto& l : g.locations) res.locations.push_back(l.name);
    const long side = g.M * G + 1;
    std::size_t pts = 1;
    for (int i = 0; i < n; ++i) pts *= static_cast<std::size_t>(side);
    res.values.assign(L, std::vector<ExtRational>(pts));
    for (std::size_t i = 0; i < pts; ++i) {
        State s;
        std::size_t a = i;
        for (int c = 0; c < n; ++c) { s.k[c] = static_cast<int>(a % static_cast<std::size_t>(side)); a /= static_cast<std::size_t>(side); }
        std::size_t idx = sp.index(s);
        for (size_t l = 0; l < L; ++l) {
            Val v = V[l][idx];
            res.values[l][i] = v >= POS ? ExtRational::pos_inf() : v <= NEG ? ExtRational::neg_inf() : ExtRational(canonical(v, G));
        }
    }
    return res;
}

OracleResult oracle_reach(const Game& g, OracleConfig cfg) {
    cfg.mode = OracleMode::Qualitative;
    return oracle_value(g, cfg);
}

std::size_t OracleResult::points() const { return values.empty() ? 0 : values[0].size(); }

Valuation OracleResult::point(std::size_t i) const {
    Valuation v;
    const std::size_t side = static_cast<std::size_t>(M * G + 1);
    for (int c = 0; c < n; ++c) { v.push_back(canonical(static_cast<long>(i % side), G)); i /= side; }
    return v;
}

ExtRational OracleResult::value(int loc, const Valuation& v) const {
    std::size_t idx = 0, mul = 1;
    const long side = M * G + 1;
    for (int c = 0; c < n; ++c) {
        Rational k = v.at(c) * G;
        if (k.get_den() != 1 || sgn(k) < 0 || k > M * G) throw GridMismatch("valuation is not a grid point in [0, M]");
        idx += static_cast<std::size_t>(k.get_num().get_si()) * mul;
        mul *= static_cast<std::size_t>(side);
    }
    return values.at(loc).at(idx);
}

std::string OracleResult::csv(const std::vector<std::string>& clocks) const {
    std::ostringstream os;
    os << "location";
    for (const auto& c : clocks) os << ',' << c;
    os << ",value\n";
    for (size_t l = 0; l < locations.size(); ++l)
        for (std::size_t i = 0; i < points(); ++i) {
            os << locations[l];
            for (const auto& x : point(i)) os << ',' << x.get_str();
            os << ',' << values[l][i].str() << '\n';
        }
    return os.str();
}

}  // namespace wtg
