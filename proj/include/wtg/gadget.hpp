#pragma once

#include "wtg/game.hpp"

#include <string>
#include <vector>

namespace wtg {

struct GadgetMap {
    Game game;
    Game source;
    std::vector<std::pair<int, int>> checkpoint;  // (source Min transition, checkpoint location)
    int frown = -1;
};

// Each Min transition goes through an urgent Max checkpoint that may divert to a losing trap.
GadgetMap to_excessive(const Game& g);
bool gadget_wellformed(const GadgetMap& m);
std::string gadget_map_json(const GadgetMap& m);

}  // namespace wtg
