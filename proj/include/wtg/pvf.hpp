#pragma once

#include "wtg/game.hpp"
#include "wtg/partition.hpp"

#include <string>
#include <vector>

namespace wtg {

// A partition plus one piece per cell.
struct PVF {
    Partition part;
    std::vector<Piece> pieces;
    Eta trace;  // min over the partitions of every intermediate result

    Eta eta() const { return min(trace, part.eta()); }
    int n() const { return part.n; }
};

PVF constant_pvf(int n, long M, const Piece& value, const Eta& cap = Eta::at_most(1));

// Pieces of f on a refinement of its partition.
PVF lift(const PVF& f, const Partition& fine);

ExtRational eval_pvf(const PVF& f, const Valuation& v, const Rational& p);

// Pointwise min/max of candidate pieces given per cell of P.
PVF envelope(const Partition& P, const std::vector<std::vector<Piece>>& candidates, bool take_min);

PVF op_min(const std::vector<PVF>& fs);
PVF op_max(const std::vector<PVF>& fs);
PVF op_guard(const PVF& f, const Guard& g, Owner source_owner);
PVF op_unreset(const PVF& f, const std::vector<int>& resets);
PVF op_pre(const PVF& f, long rate, Owner owner);
PVF op_perturb(const PVF& f, long rate);
PVF add_weight(const PVF& f, long w);
PVF refine(const PVF& f);
bool is_atomic(const Partition& p);

// Drops expressions whose removal leaves the function unchanged.
PVF prune(const PVF& f);

bool pvf_equal(const PVF& f, const PVF& g);

// Per-location values.
struct ValueMap {
    std::vector<PVF> values;
    Eta eta() const;
};

ValueMap initial_values(const Game& g);
ValueMap apply_F(const ValueMap& v, const Game& g);
PVF apply_F_location(const ValueMap& v, const Game& g, int loc);

std::string pvf_json(const PVF& f, const std::vector<std::string>& clocks);

// Expresses f - g modulo the equalities of a cell; zero means they agree on the cell.
bool agree_on_cell(const Piece& f, const Piece& g, const Partition& P, int cell);

}  // namespace wtg
