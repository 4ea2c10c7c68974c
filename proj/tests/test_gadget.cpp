#include "support.hpp"
#include "wtg/gadget.hpp"
#include "wtg/oracle.hpp"

#include "strings.hpp"

using namespace wtg;
using namespace wtg::testing;

namespace {

int edges_into(const Game& g, int loc) {
    int k = 0;
    for (const auto& t : g.transitions) k += t.target == loc && t.source != loc ? 1 : 0;
    return k;
}

}  // namespace

TEST_CASE("reduction of the two-clock example") {
    Game g = load_fixture("fig1.game");
    GadgetMap m = to_excessive(g);
    CHECK(m.game.locations.size() == 12);
    CHECK(m.checkpoint.size() == 5);
    CHECK(edges_into(m.game, m.frown) == 10);
    int checkpoint_exits = 0;
    for (const auto& [t, cp] : m.checkpoint)
        for (const auto& tr : m.game.transitions)
            if (tr.source == cp && tr.target != m.frown) ++checkpoint_exits;
    CHECK(checkpoint_exits == 5);
    CHECK(gadget_wellformed(m));
    CHECK(parse_game(print_game(m.game)) == m.game);
    CHECK(m.game.locations[m.checkpoint[0].second].name == "l_i^d0");
}

TEST_CASE("reduction without Min transitions") {
    Game g = parse_game(
        "clocks x\nbound 1\nlocation m max weight=1\nlocation t target\nedge m -> t guard \"x <= 1\" weight=2\ninit m x=0");
    GadgetMap m = to_excessive(g);
    CHECK(m.game.locations.size() == 3);
    CHECK(m.game.transitions.size() == 2);
    CHECK(m.checkpoint.empty());
    CHECK(gadget_wellformed(m));
}

TEST_CASE("a true guard has no frown edge") {
    Game g = parse_game(
        "clocks x\nbound 1\nlocation l min weight=1\nlocation t target\nedge l -> t guard \"true\" weight=0\ninit l x=0");
    GadgetMap m = to_excessive(g);
    CHECK(edges_into(m.game, m.frown) == 0);
    CHECK(gadget_wellformed(m));
}

TEST_CASE("corrupted maps are detected") {
    GadgetMap m = to_excessive(load_fixture("fig1.game"));
    GadgetMap a = m;
    a.game.locations[a.checkpoint[1].second].urgent = false;
    CHECK_FALSE(gadget_wellformed(a));
    GadgetMap b = m;
    b.game.locations[b.checkpoint[0].second].owner = Owner::Min;
    CHECK_FALSE(gadget_wellformed(b));
    GadgetMap c = m;
    for (auto& t : c.game.transitions)
        if (t.target == c.checkpoint[0].second) t.weight += 1;
    CHECK_FALSE(gadget_wellformed(c));
    GadgetMap d = m;
    for (size_t i = 0; i < d.game.transitions.size(); ++i)
        if (d.game.transitions[i].target == d.frown && d.game.transitions[i].source != d.frown) {
            d.game.transitions.erase(d.game.transitions.begin() + static_cast<long>(i));
            break;
        }
    CHECK_FALSE(gadget_wellformed(d));
}

TEST_CASE("winning regions are preserved by the reduction") {
    for (const char* f : {"micro_punctual.game", "micro_window.game", "micro_choice.game", "loop_pos.game", "loop_reset.game"}) {
        Game g = load_fixture(f);
        GadgetMap m = to_excessive(g);
        for (const auto& p : {frac(1, 8), frac(1, 16)}) {
            OracleConfig cfg;
            cfg.p = p;
            cfg.grid = p / 2;
            OracleResult a = oracle_reach(g, cfg);
            cfg.convention = Convention::Excessive;
            OracleResult b = oracle_reach(m.game, cfg);
            CHECK(a.winning(g.init_location, g.init_valuation) == b.winning(g.init_location, g.init_valuation));
            for (size_t l = 0; l < g.locations.size(); ++l)
                for (size_t k = 0; k < a.points(); ++k) CHECK(a.winning(static_cast<int>(l), a.point(k)) == b.winning(static_cast<int>(l), a.point(k)));
        }
    }
}

TEST_CASE("side map json") {
    std::string j = gadget_map_json(to_excessive(load_fixture("fig1.game")));
    CHECK(j.find("\"frown\": \"frown\"") != std::string::npos);
    CHECK(j.find("\"checkpoint\": \"l_2^d4\"") != std::string::npos);
}
