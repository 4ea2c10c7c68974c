#include "fig1_reference.hpp"
#include "wtg/errors.hpp"
#include "wtg/oracle.hpp"
#include "wtg/solver.hpp"

#include "strings.hpp"

using namespace wtg;
using namespace wtg::testing;

namespace {

Rational q(const std::string& s) { return parse_rational(s); }

SccSign loop_sign(const std::string& fixture_name) {
    Game g = load_fixture(fixture_name);
    SccReport r = scc_signs(g, build_region_game(g));
    SccSign s = SccSign::Trivial;
    for (const auto& c : r.sccs)
        if (c.sign != SccSign::Trivial) s = c.sign;
    return s;
}

// Symbolic values at every grid state equal the oracle's.
void check_against_oracle(const Game& g, const ValueMap& V, const Rational& p, const Rational& grid) {
    OracleConfig cfg;
    cfg.p = p;
    cfg.grid = grid;
    OracleResult o = oracle_value(g, cfg);
    for (size_t l = 0; l < g.locations.size(); ++l)
        for (size_t k = 0; k < o.points(); ++k) CHECK(eval_pvf(V.values[l], o.point(k), p) == o.values[l][k]);
}

}  // namespace

TEST_CASE("regions of one clock") {
    auto rs = all_regions(1, 1);
    CHECK(rs.size() == 4);
    Region r = rs.front();
    CHECK(r == Region{{0}, {0}});
    auto s1 = time_successor(r, 1);
    REQUIRE(s1);
    CHECK(*s1 == Region{{0}, {1}});
    auto s2 = time_successor(*s1, 1);
    CHECK(*s2 == Region{{1}, {0}});
    auto s3 = time_successor(*s2, 1);
    CHECK(*s3 == Region{{2}, {0}});
    CHECK_FALSE(time_successor(*s3, 1));
    Game g = load_fixture("loop_pos.game");
    RegionGame rg = build_region_game(g);
    CHECK(rg.regions.size() == 4);
    CHECK(rg.states.size() == 8);
}

TEST_CASE("regions of two clocks") {
    Game g = load_fixture("fig1.game");
    RegionGame rg = build_region_game(g);
    CHECK(rg.regions.size() == 44);
    CHECK(rg.states.size() == 264);
    CHECK(region_of({q("1/3"), q("1/2")}, 2) == Region{{0, 0}, {1, 2}});
    CHECK(region_of({q("5/2"), q("1")}, 2) == Region{{3, 1}, {0, 0}});
    auto cs = corners(Region{{0, 1}, {2, 1}}, 2);
    REQUIRE(cs.size() == 3);
    CHECK(cs[0] == std::vector<int>{0, 1});
    CHECK(cs[1] == std::vector<int>{1, 1});
    CHECK(cs[2] == std::vector<int>{1, 2});
    for (const auto& r : rg.regions) {
        auto w = corners(r, 2);
        CHECK(w.size() >= 1);
        CHECK(reset_region(r, {0, 1}) == Region{{0, 0}, {0, 0}});
    }
}

TEST_CASE("signs of strongly connected components") {
    Game g = load_fixture("fig1.game");
    SccReport r = scc_signs(g, build_region_game(g));
    for (const auto& c : r.sccs) CHECK(c.sign == SccSign::Trivial);
    CHECK(loop_sign("loop_pos.game") == SccSign::Positive);
    CHECK(loop_sign("loop_neg.game") == SccSign::Negative);
    CHECK(loop_sign("loop_zero.game") == SccSign::Mixed);
    CHECK(loop_sign("loop_reset.game") == SccSign::Positive);
    CHECK(loop_sign("cycle2.game") == SccSign::Positive);
}

TEST_CASE("divergence check") {
    CHECK(check_divergent(load_fixture("fig1.game")).divergent);
    CHECK(check_divergent(load_fixture("loop_pos.game")).divergent);
    CHECK(check_divergent(load_fixture("loop_neg.game")).divergent);
    DivergenceReport z = check_divergent(load_fixture("loop_zero.game"));
    CHECK_FALSE(z.divergent);
    CHECK(z.mixed.size() == 1);
    Game g = load_fixture("fig1.game");
    CHECK(check_divergent(g).summary(g, build_region_game(g)).rfind("Divergent (all SCCs trivial)", 0) == 0);
}

TEST_CASE("acyclic solving of the two-clock example") {
    Game g = load_fixture("fig1.game");
    SolveReport r = solve_acyclic(g);
    CHECK(r.iterations == 4);
    CHECK(r.converged);
    CHECK(pvf_equal(r.values.values[0], fig1::li()));
    CHECK(pvf_equal(r.values.values[1], fig1::l4()));
    CHECK(pvf_equal(r.values.values[2], fig1::l3()));
    CHECK(pvf_equal(r.values.values[3], fig1::l2()));
    CHECK(pvf_equal(r.values.values[4], fig1::l1()));
    CHECK(pvf_equal(r.values.values[5], fig1::goal()));
    CHECK(r.eta == Eta::below(q("1/6")));
    CHECK(r.values.values[4].eta() == Eta::below(q("1/2")));
}

TEST_CASE("acyclic and divergent modes agree") {
    Game g = load_fixture("fig1.game");
    SolveReport a = solve_acyclic(g);
    SolveReport d = solve_divergent(g);
    CHECK(d.converged);
    CHECK(d.iterations <= 5);
    CHECK(d.iterations == a.iterations);
    CHECK(report_json(g, d).substr(report_json(g, d).find("\"eta\"")) ==
          report_json(g, a).substr(report_json(g, a).find("\"eta\"")));
    for (size_t l = 0; l < g.locations.size(); ++l) CHECK(pvf_equal(a.values.values[l], d.values.values[l]));
    SolveReport au = solve(g, "auto");
    CHECK(au.mode == "acyclic");
    CHECK(solve(load_fixture("loop_pos.game"), "auto").mode == "divergent");
}

TEST_CASE("all-target game") {
    Game g = parse_game("clocks x\nbound 1\nlocation t target\ninit t x=0");
    SolveReport r = solve_acyclic(g);
    CHECK(r.iterations == 0);
    CHECK(eval_pvf(r.values.values[0], {q("1/2")}, q("1/4")) == ExtRational(0));
}

TEST_CASE("divergent loops match the oracle") {
    for (const char* f : {"loop_pos.game", "loop_neg.game", "loop_reset.game"}) {
        Game g = load_fixture(f);
        SolveReport r = solve_divergent(g);
        CHECK(r.converged);
        check_against_oracle(g, r.values, q("1/16"), q("1/32"));
    }
    Game g = load_fixture("loop_pos.game");
    SolveReport r = solve_divergent(g);
    // From x = 0 Min leaves at once and Max adds at most 2p.
    CHECK(eval_pvf(r.values.values[0], {q("0")}, q("1/16")) == ExtRational(q("1/8")));
}

TEST_CASE("two-location cycle matches the oracle") {
    Game g = load_fixture("cycle2.game");
    SolveReport r = solve_divergent(g);
    check_against_oracle(g, r.values, q("1/16"), q("1/16"));
}

TEST_CASE("non-divergent input is rejected") {
    CHECK_THROWS_AS(solve_divergent(load_fixture("loop_zero.game")), PreconditionError);
    CHECK_THROWS_AS(solve_acyclic(load_fixture("loop_pos.game")), NotAcyclic);
}

TEST_CASE("unbounded negative delays give minus infinity") {
    // Min may wait arbitrarily long before the reset, then leave.
    Game g = parse_game(
        "clocks x\nbound 1\nlocation l min weight=-1\nlocation t target\n"
        "edge l -> l guard \"x >= 1\" reset x weight=0\nedge l -> t guard \"x <= 1\" weight=0\ninit l x=0");
    SolveReport r = solve_divergent(g);
    CHECK(r.converged);
    CHECK(r.iterations == 2);
    CHECK(eval_pvf(r.values.values[0], {q("1/2")}, q("1/8")).is_neg_inf());
    check_against_oracle(g, r.values, q("1/8"), q("1/8"));
}

TEST_CASE("iteration cap") {
    Game g = load_fixture("cycle2.game");
    CHECK(solve_divergent(g).iterations == 4);
    CHECK_THROWS_AS(solve_divergent(g, 3), NonConvergent);
    CHECK_NOTHROW(solve_divergent(g, 5));
}

TEST_CASE("limits as the perturbation vanishes") {
    Game g = load_fixture("fig1.game");
    SolveReport r = solve_acyclic(g);
    auto lim = robust_limit(r.values);
    for (const auto& v : {Valuation{0, 0}, Valuation{q("3/2"), q("1/2")}}) CHECK(lim[4].eval(v) == ExtRational(0));
    CHECK(lim[3].eval({q("1/2"), q("1/4")}) == ExtRational(q("7/4")));
    CHECK(lim[3].eval({q("1/2"), q("1")}) == ExtRational(1));
    CHECK(lim[3].eval({q("1/2"), q("2")}).is_pos_inf());
    CHECK(lim[5].eval({q("1"), q("1")}) == ExtRational(0));
    // The border x2 = 2 - 2p moves to 2: the limit there comes from the small-p cell below it.
    CHECK(limit_value(r.values.values[3], {q("0"), q("2")}).is_pos_inf());
    CHECK(limit_value(r.values.values[3], {q("0"), q("3/2")}) == ExtRational(1));
}

TEST_CASE("limit values dominate nothing larger than the perturbed values") {
    Game g = load_fixture("fig1.game");
    SolveReport r = solve_acyclic(g);
    for (size_t l = 0; l < g.locations.size(); ++l)
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                Valuation v{frac(i, 4), frac(j, 4)};
                ExtRational lim = limit_value(r.values.values[l], v);
                for (const auto& p : {q("1/100"), q("1/20"), q("1/7")}) CHECK(lim <= eval_pvf(r.values.values[l], v, p));
            }
}

TEST_CASE("threshold decision") {
    Game g = load_fixture("fig1.game");
    CHECK(decide_threshold(g, 4, {q("1/2"), q("1/2")}, ExtRational(0)));
    CHECK(decide_threshold(g, 3, {q("0"), q("3/2")}, ExtRational(1)));
    CHECK_FALSE(decide_threshold(g, 3, {q("0"), q("1/2")}, ExtRational(1)));
    CHECK(decide_threshold(g, 0, {q("0"), q("0")}, ExtRational::pos_inf()));
}

TEST_CASE("report json") {
    Game g = load_fixture("loop_pos.game");
    std::string j = report_json(g, solve(g));
    CHECK(j.find("\"mode\": \"divergent\"") != std::string::npos);
    CHECK(j.find("\"Positive\"") != std::string::npos);
    CHECK(j.find("\"limit\"") != std::string::npos);
}

TEST_CASE("default iteration cap") {
    Game g = load_fixture("loop_pos.game");
    DivergenceReport d = check_divergent(g);
    int cap = default_iteration_cap(g, d, build_region_game(g).states.size());
    CHECK(cap == 16 * 8 * 1 * (d.sccs.dag_depth + 1));
    Game z = load_fixture("loop_zero.game");
    CHECK(default_iteration_cap(z, check_divergent(z), 8) > 0);
}
