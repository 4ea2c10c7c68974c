#include "support.hpp"
#include "wtg/errors.hpp"

#include "strings.hpp"

using namespace wtg;
using wtg::testing::load_fixture;

namespace {

Guard guard(const std::string& s, long M = 2) { return parse_guard(s, {"x1", "x2"}, M); }

Valuation val(const std::string& a, const std::string& b) { return {parse_rational(a), parse_rational(b)}; }

}  // namespace

TEST_CASE("parse the two-clock acyclic example") {
    Game g = load_fixture("fig1.game");
    CHECK(g.locations.size() == 6);
    CHECK(g.num_clocks() == 2);
    CHECK(g.transitions.size() == 6);
    CHECK(g.M == 2);
    CHECK(g.locations[g.init_location].name == "l_i");
    CHECK(g.locations[g.location_index("l_3")].owner == Owner::Max);
    CHECK(g.locations[g.location_index("l_4")].rate == -1);
}

TEST_CASE("minimal game with one target") {
    Game g = parse_game("clocks x\nbound 1\nlocation t target\ninit t x=0");
    CHECK(g.locations.size() == 1);
    CHECK(g.transitions.empty());
    CHECK(g.locations[0].owner == Owner::Target);
}

TEST_CASE("guard bound above M is rejected") {
    const std::string text =
        "clocks x1\nbound 2\nlocation a min weight=0\nlocation t target\nedge a -> t guard \"x1 < 3\" weight=0\ninit a x1=0";
    CHECK_THROWS_AS(parse_game(text), InputError);
    try {
        parse_game(text);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("exceeds M") != std::string::npos);
    }
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_game("clocks x\nbound one\n"), ParseError);
    CHECK_THROWS_AS(parse_game("clocks x\nbound 1\nlocation a min weight=0\nedge a -> b guard \"true\" weight=0\ninit a x=0"),
                    InputError);
}

TEST_CASE("guard satisfaction") {
    CHECK(guard_sat(guard("1 < x1 < 2"), val("3/2", "0")));
    CHECK(guard_sat(Guard{}, val("7", "1/3")));
    CHECK_FALSE(guard_sat(guard("1 < x1 < 2"), val("1", "0")));
    CHECK(guard_sat(guard("x1 = 1 && x2 >= 0"), val("1", "2")));
}

TEST_CASE("guard complements") {
    auto c = guard_complement(guard("1 < x1 < 2"));
    REQUIRE(c.size() == 2);
    CHECK(c[0] == guard("x1 <= 1"));
    CHECK(c[1] == guard("x1 >= 2"));
    CHECK(guard_complement(Guard{}).empty());
    auto e = guard_complement(guard("x1 = 1"));
    REQUIRE(e.size() == 2);
    CHECK(e[0] == guard("x1 < 1"));
    CHECK(e[1] == guard("x1 > 1"));
}

TEST_CASE("complement pieces partition the box") {
    for (const std::string s : {"1 < x1 < 2", "1 <= x1 < 2 && x2 < 2", "x1 = 1 && x2 > 0", "x2 >= 2"}) {
        Guard g = guard(s);
        auto comp = guard_complement(g);
        for (int a = 0; a <= 6; ++a)
            for (int b = 0; b <= 6; ++b) {
                Valuation v{frac(a, 2), frac(b, 2)};
                int hits = guard_sat(g, v) ? 1 : 0;
                for (const auto& c : comp) hits += guard_sat(c, v) ? 1 : 0;
                CHECK(hits == 1);
            }
    }
}

TEST_CASE("depth of acyclic games") {
    CHECK(depth(load_fixture("fig1.game")) == 4);
    CHECK(depth(parse_game("clocks x\nbound 1\nlocation t target\ninit t x=0")) == 0);
    CHECK_FALSE(depth(load_fixture("loop_pos.game")).has_value());
}

TEST_CASE("weight statistics") {
    WeightStats s = weight_stats(load_fixture("fig1.game"));
    CHECK(s.W_loc == 1);
    CHECK(s.W_tr == 2);
    CHECK(s.W_e == 4);
    CHECK(weight_stats(load_fixture("loop_zero.game")) == WeightStats{0, 0, 0});
    Game g = parse_game(
        "clocks x\nbound 3\nlocation a min weight=2\nlocation t target\nedge a -> t guard \"true\" weight=-5\ninit a x=0");
    CHECK(weight_stats(g).W_e == 11);
}

TEST_CASE("print and parse round trip") {
    for (const char* f : {"fig1.game", "loop_pos.game", "cycle2.game", "micro_choice.game"}) {
        Game g = load_fixture(f);
        CHECK(parse_game(print_game(g)) == g);
    }
}

TEST_CASE("json game input") {
    const std::string js = R"({"clocks": ["x"], "bound": 1,
        "locations": [{"name": "a", "owner": "min", "weight": 1}, {"name": "t", "owner": "target"}],
        "edges": [{"from": "a", "to": "t", "guard": "x <= 1", "weight": 0}],
        "init": {"location": "a", "valuation": {"x": "0"}}})";
    Game g = parse_game_json(js);
    CHECK(g.locations.size() == 2);
    CHECK(g.transitions.size() == 1);
    CHECK(g.locations[0].rate == 1);
}
