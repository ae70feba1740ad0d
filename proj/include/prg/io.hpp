#pragma once

#include <string>

#include <json.hpp>

#include "prg/model.hpp"

namespace prg {

// Game file: {"layers": [[int,...],...], "capacities": [[int,...],...]?,
//             "n": int, "starting_pattern": [int,...]?}
// Layers may be unsorted; edge indices in state files refer to input order.
Game game_from_json(const nlohmann::json& j);
nlohmann::json game_to_json(const Game& game);

// State file: {"paths": [[int,...],...]} with 1-based input-order indices.
State state_from_json(const nlohmann::json& j, const Game& game);
nlohmann::json state_to_json(const State& state, const Game& game);

std::size_t to_input_index(const LinearMultigraph& graph, std::size_t layer, std::size_t sorted_index);
std::size_t from_input_index(const LinearMultigraph& graph, std::size_t layer, std::size_t input_index);

nlohmann::json read_json_file(const std::string& path);

}  // namespace prg
