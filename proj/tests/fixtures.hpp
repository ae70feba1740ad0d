#pragma once

#include "prg/instances.hpp"
#include "prg/model.hpp"

namespace fixtures {

inline prg::Game two_layer() { return prg::make_game(prg::make_graph({{1, 2}, {2}}), 3); }

inline prg::State two_layer_state() { return prg::State{{{{1, 1}}, {{2, 1}}, {{1, 1}}}}; }

inline prg::Game detour() { return prg::make_game(prg::make_graph({{1, 1, 1, 4}, {1, 1}, {1}}), 9); }

inline prg::State detour_state() {
  return prg::State{{{{1, 1, 1}},
                     {{2, 2, 1}},
                     {{3, 1, 1}},
                     {{1, 2, 1}},
                     {{2, 1, 1}},
                     {{3, 2, 1}},
                     {{1, 1, 1}},
                     {{4, 2, 1}},
                     {{2, 2, 1}}}};
}

// Gamma_1: k = 3, l = 1, n = 6, special transit 3 in layer 2.
inline prg::Game gamma1() { return prg::make_game(prg::make_graph({{1, 1, 1}, {1, 1, 3}}), 6); }

}  // namespace fixtures
