#pragma once

#include "wtg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wtg {

enum class Owner { Min, Max, Target };
enum class CmpOp { Lt, Le, Eq, Ge, Gt };

const char* to_string(Owner o);
const char* to_string(CmpOp op);

struct Atom {
    int clock = 0;
    CmpOp op = CmpOp::Le;
    long bound = 0;
    bool operator==(const Atom&) const = default;
};

// Conjunction of non-diagonal atoms; an empty list is "true".
struct Guard {
    std::vector<Atom> atoms;
    bool empty_set = false;  // normalized form of an unsatisfiable guard
    bool operator==(const Guard&) const = default;
    bool is_true() const { return atoms.empty() && !empty_set; }
};

using Valuation = std::vector<Rational>;

struct Location {
    std::string name;
    Owner owner = Owner::Min;
    long rate = 0;
    bool urgent = false;
    bool operator==(const Location&) const = default;
};

struct Transition {
    int source = 0;
    Guard guard;
    std::vector<int> resets;  // sorted clock indices
    int target = 0;
    long weight = 0;
    bool operator==(const Transition&) const = default;
};

struct Game {
    std::vector<std::string> clocks;
    long M = 1;
    std::vector<Location> locations;
    std::vector<Transition> transitions;
    int init_location = 0;
    Valuation init_valuation;

    int num_clocks() const { return static_cast<int>(clocks.size()); }
    int clock_index(const std::string& name) const;     // -1 if absent
    int location_index(const std::string& name) const;  // -1 if absent
    std::vector<int> outgoing(int loc) const;
    bool operator==(const Game&) const = default;
};

struct WeightStats {
    long W_loc = 0;
    long W_tr = 0;
    long W_e = 0;
    bool operator==(const WeightStats&) const = default;
};

Game parse_game(const std::string& text);
Game parse_game_json(const std::string& text);
Game load_game_file(const std::string& path);
std::string print_game(const Game& g);
std::string guard_to_string(const Guard& g, const std::vector<std::string>& clocks);
Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks, long M);

void validate(const Game& g);

bool atom_sat(const Atom& a, const Rational& v);
bool guard_sat(const Guard& g, const Valuation& v);

// One lower and one upper bound per clock, ordered by first occurrence.
Guard normalize_guard(const Guard& g);
std::vector<Guard> guard_complement(const Guard& g);

std::optional<int> depth(const Game& g);
WeightStats weight_stats(const Game& g);

}  // namespace wtg
