#pragma once

#include "wtg/expr.hpp"
#include "wtg/fm.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace wtg {

// Upper bound on the perturbation: p < v (open) or p <= v, or no bound.
struct Eta {
    bool infinite = true;
    Rational v = 0;
    bool open = false;

    static Eta at_most(const Rational& v) { return {false, v, false}; }
    static Eta below(const Rational& v) { return {false, v, true}; }

    bool admits(const Rational& p) const;
    std::string str() const;
    bool operator==(const Eta& o) const;
};

Eta min(const Eta& x, const Eta& y);

// Signs are '<', '=', '>' per expression.
using SignVector = std::string;

class Partition {
public:
    int n = 0;
    long M = 1;
    std::vector<ParamExpr> exprs;     // normalized, non-constant, distinct; ceilings first
    std::vector<SignVector> cells;
    std::vector<Eta> cell_eta;
    std::vector<LexPoint> witness;    // one point per cell, valid for all small p
    Eta cap;                          // bounds imposed by the operations that built this partition

    Eta eta() const;
    int find(const SignVector& s) const;
    int find_expr(const ParamExpr& normalized) const;
    SignVector signs_at(const Valuation& v, const Rational& p) const;
    int locate(const Valuation& v, const Rational& p) const;
    std::vector<Con> constraints(int cell) const;
    bool is_ceiling(int expr) const;

    void rebuild_index();

private:
    std::unordered_map<std::string, int> index_;
};

char sign_char(int s);
int sign_of(char c);

// Normalizes and deduplicates exprs (ceilings are inserted first), then classifies all sign vectors.
Partition enumerate_cells(int n, long M, const std::vector<ParamExpr>& exprs, const Eta& cap = Eta::at_most(1));

struct CellStatus {
    bool nonempty = false;
    Eta eta;
};

CellStatus cell_status(int n, const std::vector<ParamExpr>& exprs, const SignVector& s);

// Union of expressions; parent1/parent2 give the containing cell of each input.
struct Intersection {
    Partition part;
    std::vector<int> parent1;
    std::vector<int> parent2;
};

Intersection intersect_partitions(const Partition& p1, const Partition& p2);

// Restriction of a sign vector of `fine` to the expressions of `coarse` (which must be a subset).
std::vector<int> parent_map(const Partition& fine, const Partition& coarse);

// Adds diagonal intersections of all pairs of non-diagonal borders (axes included).
Partition refine_atomic(const Partition& p);

// The extra expressions refine_atomic would add, and the cap from intersections that only appear for larger p.
std::vector<ParamExpr> atomic_diagonals(const Partition& p, Eta* cap);

Valuation cell_witness(const Partition& p, int cell, const Rational& pv);

std::string partition_json(const Partition& p, const std::vector<std::string>& clocks);

}  // namespace wtg
