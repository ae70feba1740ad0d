#include "prg/io.hpp"

#include <algorithm>
#include <fstream>

namespace prg {

using nlohmann::json;

namespace {

template <typename T>
std::vector<std::vector<T>> int_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<T>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(std::string(what) + " must be an array of arrays");
    std::vector<T> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(std::string(what) + " entries must be integers");
      r.push_back(v.get<T>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Game game_from_json(const json& j) {
  if (!j.is_object()) throw Error("game file must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "layers" && key != "capacities" && key != "n" && key != "starting_pattern") {
      throw Error("unknown game field '" + key + "'");
    }
  }
  if (!j.contains("layers")) throw Error("game file lacks 'layers'");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw Error("game file lacks integer 'n'");
  const auto n = j["n"].get<std::int64_t>();
  if (n < 1) throw Error("n must be positive");

  const auto transits = int_matrix<Time>(j["layers"], "layers");
  std::vector<std::vector<std::int64_t>> caps;
  if (j.contains("capacities")) caps = int_matrix<std::int64_t>(j["capacities"], "capacities");

  std::vector<Time> pattern;
  if (j.contains("starting_pattern")) {
    const auto& p = j["starting_pattern"];
    if (!p.is_array()) throw Error("starting_pattern must be an array");
    for (const auto& v : p) {
      if (!v.is_number_integer()) throw Error("starting_pattern entries must be integers");
      pattern.push_back(v.get<Time>());
    }
    if (pattern.size() != static_cast<std::size_t>(n)) {
      throw Error("starting_pattern must have n entries");
    }
  }
  auto game = make_game(make_graph(transits, caps), static_cast<std::size_t>(n), std::move(pattern));
  require_valid(game);
  return game;
}

json game_to_json(const Game& game) {
  const auto& g = game.graph;
  json layers = json::array();
  json caps = json::array();
  for (std::size_t j = 0; j < g.layers.size(); ++j) {
    std::vector<Time> t(g.layers[j].size());
    std::vector<std::int64_t> c(g.layers[j].size());
    for (std::size_t r = 0; r < g.layers[j].size(); ++r) {
      const auto pos = g.input_order[j][r] - 1;
      t[pos] = g.layers[j][r].transit;
      c[pos] = g.layers[j][r].capacity;
    }
    layers.push_back(t);
    caps.push_back(c);
  }
  json out{{"layers", layers}, {"n", game.n}};
  if (!g.unit_capacities()) out["capacities"] = caps;
  if (std::any_of(game.starting_pattern.begin(), game.starting_pattern.end(),
                  [](Time t) { return t != 0; })) {
    out["starting_pattern"] = game.starting_pattern;
  }
  return out;
}

std::size_t to_input_index(const LinearMultigraph& graph, std::size_t layer, std::size_t sorted_index) {
  return graph.input_order.at(layer - 1).at(sorted_index - 1);
}

std::size_t from_input_index(const LinearMultigraph& graph, std::size_t layer, std::size_t input_index) {
  if (layer < 1 || layer > graph.layers.size()) throw Error("no such layer " + std::to_string(layer));
  const auto& perm = graph.input_order[layer - 1];
  for (std::size_t r = 0; r < perm.size(); ++r) {
    if (perm[r] == input_index) return r + 1;
  }
  throw Error("no such edge " + std::to_string(input_index) + " in layer " + std::to_string(layer));
}

State state_from_json(const json& j, const Game& game) {
  if (!j.is_object() || !j.contains("paths")) throw Error("state file lacks 'paths'");
  const auto raw = int_matrix<std::int64_t>(j["paths"], "paths");
  if (raw.size() != game.n) {
    throw Error("state has " + std::to_string(raw.size()) + " paths for " + std::to_string(game.n) +
                " players");
  }
  State s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != game.graph.layers.size()) {
      throw Error("path of player " + std::to_string(i + 1) + " does not cover every layer");
    }
    PathChoice p;
    for (std::size_t l = 0; l < raw[i].size(); ++l) {
      if (raw[i][l] < 1) throw Error("edge indices are 1-based");
      p.edge_indices.push_back(from_input_index(game.graph, l + 1, static_cast<std::size_t>(raw[i][l])));
    }
    s.paths.push_back(std::move(p));
  }
  return s;
}

json state_to_json(const State& state, const Game& game) {
  json paths = json::array();
  for (const auto& p : state.paths) {
    json row = json::array();
    for (std::size_t l = 0; l < p.edge_indices.size(); ++l) {
      row.push_back(to_input_index(game.graph, l + 1, p.edge_indices[l]));
    }
    paths.push_back(row);
  }
  return json{{"paths", paths}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace prg
