#pragma once

#include "wtg/game.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wtg {

// Shifted: Min's delay is perturbed by [0, 2p]. Centered: delays t >= p perturbed by [-p, p].
// Excessive: like Shifted, but the guard is only checked on Min's unperturbed delay.
enum class Convention { Shifted, Centered, Excessive };
enum class OracleMode { Quantitative, Qualitative };

struct OracleConfig {
    Rational p = Rational(1, 16);
    Rational grid = Rational(1, 32);
    Convention convention = Convention::Shifted;
    std::optional<int> horizon;
    OracleMode mode = OracleMode::Quantitative;
    int max_iterations = 100000;
    std::size_t max_states = 2000000;
};

struct OracleResult {
    int n = 0;
    long M = 1;
    long G = 1;  // grid = 1/G
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> locations;
    // values[loc][k1 + (M*G+1)*k2 + ...] at the grid valuations (k1/G, k2/G, ...)
    std::vector<std::vector<ExtRational>> values;

    ExtRational value(int loc, const Valuation& v) const;
    bool winning(int loc, const Valuation& v) const { return !value(loc, v).is_pos_inf(); }
    std::size_t points() const;
    Valuation point(std::size_t i) const;
    std::string csv(const std::vector<std::string>& clocks) const;
};

OracleResult oracle_value(const Game& g, const OracleConfig& cfg);
OracleResult oracle_reach(const Game& g, OracleConfig cfg);

Convention parse_convention(const std::string& s);

}  // namespace wtg
