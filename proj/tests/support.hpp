#pragma once

#include "wtg/game.hpp"
#include "wtg/partition.hpp"
#include "wtg/pvf.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace wtg::testing {

inline std::string fixture(const std::string& name) { return std::string(WTG_FIXTURES) + "/" + name; }

inline Game load_fixture(const std::string& name) { return load_game_file(fixture(name)); }

// Random acyclic game: locations 0..k-2 are Min/Max, the last one is the target.
inline Game random_game(std::mt19937& rng, long M = 2, int max_locations = 5, int clocks = 1) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::ostringstream os;
    const int k = pick(2, max_locations);
    const std::vector<std::string> names = clocks == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y", "z"};
    os << "clocks";
    for (int c = 0; c < clocks; ++c) os << ' ' << names[c];
    os << "\nbound " << M << "\n";
    for (int l = 0; l + 1 < k; ++l)
        os << "location q" << l << ' ' << (pick(0, 2) == 0 ? "max" : "min") << " weight=" << pick(-2, 2) << "\n";
    os << "location goal target\n";
    const char* ops[] = {"<", "<=", "=", ">=", ">"};
    for (int l = 0; l + 1 < k; ++l) {
        int edges = pick(1, 3);
        for (int e = 0; e < edges; ++e) {
            int target = pick(l + 1, k - 1);
            std::string guard;
            int atoms = pick(0, 2);
            for (int a = 0; a < atoms; ++a) {
                if (!guard.empty()) guard += " && ";
                guard += names[pick(0, clocks - 1)] + " " + ops[pick(0, 4)] + " " + std::to_string(pick(0, static_cast<int>(M)));
            }
            if (guard.empty()) guard = "true";
            os << "edge q" << l << " -> " << (target == k - 1 ? std::string("goal") : "q" + std::to_string(target))
               << " guard \"" << guard << "\"";
            std::string resets;
            for (int c = 0; c < clocks; ++c)
                if (pick(0, 1)) resets += (resets.empty() ? "" : ",") + names[c];
            if (!resets.empty()) os << " reset " << resets;
            os << " weight=" << pick(-2, 2) << "\n";
        }
    }
    os << "init q0";
    for (int c = 0; c < clocks; ++c) os << ' ' << names[c] << "=0";
    os << "\n";
    return parse_game(os.str());
}

// Builds a PVF from a rule evaluated at one point of every cell of the given expressions.
inline PVF pvf_from_rule(int n, long M, const std::vector<ParamExpr>& exprs,
                         const std::function<Piece(const Valuation&, const Rational&)>& rule) {
    PVF f;
    f.part = enumerate_cells(n, M, exprs, Eta{});
    const Rational p0 = frac(1, 1000);
    for (size_t c = 0; c < f.part.cells.size(); ++c)
        f.pieces.push_back(rule(cell_witness(f.part, static_cast<int>(c), p0), p0));
    return f;
}

}  // namespace wtg::testing
