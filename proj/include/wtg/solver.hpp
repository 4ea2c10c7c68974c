#pragma once

#include "wtg/game.hpp"
#include "wtg/pvf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wtg {

// Integer part per clock (M+1 stands for "above M") and the rank of its fractional part
// (0 for a zero fraction, then 1, 2, ... by increasing fraction; capped clocks have rank 0).
struct Region {
    std::vector<int> ints;
    std::vector<int> fracs;
    bool operator==(const Region&) const = default;
    auto operator<=>(const Region&) const = default;
};

std::vector<Region> all_regions(int n, long M);
std::optional<Region> time_successor(const Region& r, long M);
Region reset_region(const Region& r, const std::vector<int>& Y);
bool region_sat(const Region& r, const Guard& g, long M);
// Vertices of the region's closure; capped clocks are reported as M+1.
std::vector<std::vector<int>> corners(const Region& r, long M);
Region region_of(const Valuation& v, long M);

struct RegionEdge {
    int from = 0;
    int to = 0;
    int transition = 0;
};

struct RegionGame {
    int n = 0;
    long M = 1;
    std::vector<Region> regions;
    std::vector<std::pair<int, int>> states;  // (location, region index)
    std::vector<RegionEdge> edges;
    int state_index(int loc, int region) const { return loc * static_cast<int>(regions.size()) + region; }
};

RegionGame build_region_game(const Game& g);

enum class SccSign { Trivial, Positive, Negative, Mixed };
const char* to_string(SccSign s);

struct SccInfo {
    std::vector<int> states;
    SccSign sign = SccSign::Trivial;
};

struct SccReport {
    std::vector<SccInfo> sccs;  // in reverse topological order (sinks first)
    std::vector<int> scc_of;    // per region-game state
    int dag_depth = 0;
};

SccReport scc_signs(const Game& g, const RegionGame& rg);

struct DivergenceReport {
    bool divergent = true;
    std::vector<int> mixed;  // indices of mixed SCCs
    SccReport sccs;
    std::string summary(const Game& g, const RegionGame& rg) const;
};

DivergenceReport check_divergent(const Game& g);

// Value function at p -> 0: parameter-free partition and pieces.
struct LimitFunction {
    Partition part;
    std::vector<Piece> pieces;
    ExtRational eval(const Valuation& v) const;
};

struct SolveReport {
    std::string mode;
    ValueMap values;
    Eta eta;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<std::string, std::string>> scc_signs;  // description, sign
};

SolveReport solve_acyclic(const Game& g);
SolveReport solve_divergent(const Game& g, std::optional<int> cap = std::nullopt);
SolveReport solve(const Game& g, const std::string& mode = "auto", std::optional<int> cap = std::nullopt);
int default_iteration_cap(const Game& g, const DivergenceReport& d, std::size_t region_states);

LimitFunction limit_of(const PVF& f);
std::vector<LimitFunction> robust_limit(const ValueMap& v);
// lim_{p -> 0+} of the value at (loc, v), evaluated through the small-p cell containing v.
ExtRational limit_value(const PVF& f, const Valuation& v);
bool decide_threshold(const Game& g, int loc, const Valuation& v, const ExtRational& lambda);

std::string report_json(const Game& g, const SolveReport& r);
std::string limit_json(const LimitFunction& f, const std::vector<std::string>& clocks);

}  // namespace wtg
