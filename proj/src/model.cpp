#include "prg/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace prg {

const Edge& LinearMultigraph::edge(std::size_t layer, std::size_t index) const {
  if (layer < 1 || layer > layers.size() || index < 1 || index > layers[layer - 1].size()) {
    throw Error("no such edge: layer " + std::to_string(layer) + " index " + std::to_string(index));
  }
  return layers[layer - 1][index - 1];
}

bool LinearMultigraph::unit_capacities() const {
  return std::all_of(layers.begin(), layers.end(), [](const Layer& l) {
    return std::all_of(l.begin(), l.end(), [](const Edge& e) { return e.capacity == 1; });
  });
}

std::size_t LinearMultigraph::path_count() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t count = 1;
  for (const auto& l : layers) {
    if (l.empty()) return 0;
    if (count > kMax / l.size()) return kMax;
    count *= l.size();
  }
  return count;
}

LinearMultigraph make_graph(const std::vector<std::vector<Time>>& transits,
                            const std::vector<std::vector<std::int64_t>>& capacities) {
  if (!capacities.empty() && capacities.size() != transits.size()) {
    throw Error("capacities must have one entry per layer");
  }
  LinearMultigraph g;
  for (std::size_t j = 0; j < transits.size(); ++j) {
    const auto& row = transits[j];
    if (!capacities.empty() && capacities[j].size() != row.size()) {
      throw Error("capacities of layer " + std::to_string(j + 1) + " do not match its edges");
    }
    std::vector<std::size_t> order(row.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    Layer layer;
    std::vector<std::size_t> input;
    for (std::size_t r = 0; r < order.size(); ++r) {
      Edge e;
      e.layer = j + 1;
      e.index_in_layer = r + 1;
      e.transit = row[order[r]];
      e.capacity = capacities.empty() ? 1 : capacities[j][order[r]];
      layer.push_back(e);
      input.push_back(order[r] + 1);
    }
    g.layers.push_back(std::move(layer));
    g.input_order.push_back(std::move(input));
  }
  return g;
}

LinearMultigraph make_graph_unsorted(const std::vector<std::vector<Time>>& transits) {
  LinearMultigraph g;
  for (std::size_t j = 0; j < transits.size(); ++j) {
    Layer layer;
    std::vector<std::size_t> input;
    for (std::size_t r = 0; r < transits[j].size(); ++r) {
      layer.push_back(Edge{j + 1, r + 1, transits[j][r], 1});
      input.push_back(r + 1);
    }
    g.layers.push_back(std::move(layer));
    g.input_order.push_back(std::move(input));
  }
  return g;
}

Game make_game(LinearMultigraph graph, std::size_t n, std::vector<Time> starting_pattern) {
  Game game;
  game.graph = std::move(graph);
  game.n = n;
  game.starting_pattern = starting_pattern.empty() ? std::vector<Time>(n, 0) : std::move(starting_pattern);
  return game;
}

std::vector<Violation> validate_game(const Game& game) {
  std::vector<Violation> out;
  const auto& layers = game.graph.layers;
  if (layers.empty()) out.push_back({"graph", "graph has no layers"});
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const std::string where = "layer " + std::to_string(j + 1);
    const auto& l = layers[j];
    if (l.empty()) {
      out.push_back({where, where + " has no edges"});
      continue;
    }
    for (std::size_t r = 0; r < l.size(); ++r) {
      const auto& e = l[r];
      const std::string at = where + " edge " + std::to_string(r + 1);
      if (e.layer != j + 1 || e.index_in_layer != r + 1) {
        out.push_back({at, "edge carries position (" + std::to_string(e.layer) + "," +
                               std::to_string(e.index_in_layer) + ")"});
      }
      if (e.transit < 1) out.push_back({at, "transit time must be a positive integer"});
      if (e.capacity < 1) out.push_back({at, "capacity must be a positive integer"});
    }
    if (!std::is_sorted(l.begin(), l.end(),
                        [](const Edge& a, const Edge& b) { return a.transit < b.transit; })) {
      out.push_back({where, where + " not sorted"});
    }
  }
  if (game.graph.input_order.size() != layers.size()) {
    out.push_back({"graph", "input order does not cover every layer"});
  } else {
    for (std::size_t j = 0; j < layers.size(); ++j) {
      auto perm = game.graph.input_order[j];
      std::sort(perm.begin(), perm.end());
      for (std::size_t r = 0; r < perm.size(); ++r) {
        if (perm.size() != layers[j].size() || perm[r] != r + 1) {
          out.push_back({"layer " + std::to_string(j + 1), "input order is not a permutation"});
          break;
        }
      }
    }
  }
  if (game.n < 1) out.push_back({"n", "at least one player required"});
  if (game.starting_pattern.size() != game.n) {
    out.push_back({"starting_pattern", "starting pattern has length " +
                                           std::to_string(game.starting_pattern.size()) +
                                           ", expected " + std::to_string(game.n)});
  }
  for (std::size_t i = 0; i < game.starting_pattern.size(); ++i) {
    if (game.starting_pattern[i] < 0) {
      out.push_back({"starting_pattern[" + std::to_string(i + 1) + "]", "start time is negative"});
    }
  }
  if (!std::is_sorted(game.starting_pattern.begin(), game.starting_pattern.end())) {
    out.push_back({"starting_pattern", "starting pattern not non-decreasing"});
  }
  return out;
}

std::vector<Violation> validate_state(const Game& game, const State& state) {
  std::vector<Violation> out;
  if (state.paths.size() != game.n) {
    out.push_back({"state", "state has " + std::to_string(state.paths.size()) + " paths for " +
                                std::to_string(game.n) + " players"});
  }
  const auto& layers = game.graph.layers;
  for (std::size_t i = 0; i < state.paths.size(); ++i) {
    const auto& p = state.paths[i].edge_indices;
    const std::string where = "player " + std::to_string(i + 1);
    if (p.size() != layers.size()) {
      out.push_back({where, "path has " + std::to_string(p.size()) + " edges for " +
                                std::to_string(layers.size()) + " layers"});
      continue;
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] < 1 || p[j] > layers[j].size()) {
        out.push_back({where, "no such edge " + std::to_string(p[j]) + " in layer " +
                                  std::to_string(j + 1)});
      }
    }
  }
  return out;
}

namespace {

[[noreturn]] void throw_violations(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << "invalid input:";
  for (const auto& v : vs) os << "\n  " << v.location << ": " << v.message;
  throw Error(os.str());
}

}  // namespace

void require_valid(const Game& game) {
  if (auto vs = validate_game(game); !vs.empty()) throw_violations(vs);
}

void require_valid(const Game& game, const State& state) {
  require_valid(game);
  if (auto vs = validate_state(game, state); !vs.empty()) throw_violations(vs);
}

Time path_length(const LinearMultigraph& graph, const PathChoice& path) {
  if (path.edge_indices.size() != graph.layers.size()) {
    throw Error("no such edge: path does not cover every layer");
  }
  Time total = 0;
  for (std::size_t j = 0; j < path.edge_indices.size(); ++j) {
    total += graph.edge(j + 1, path.edge_indices[j]).transit;
  }
  return total;
}

PathChoice kth_cheapest_path(const LinearMultigraph& graph, std::size_t j) {
  if (j < 1) throw Error("path rank is 1-based");
  for (const auto& l : graph.layers) {
    if (l.size() < j) throw Error("decomposition exhausted");
  }
  return PathChoice{std::vector<std::size_t>(graph.layers.size(), j)};
}

std::vector<PathChoice> all_paths(const LinearMultigraph& graph, std::size_t budget) {
  const std::size_t count = graph.path_count();
  if (count > budget) throw Error("instance too large for exact check");
  std::vector<PathChoice> out;
  out.reserve(count);
  std::vector<std::size_t> idx(graph.layers.size(), 1);
  for (std::size_t c = 0; c < count; ++c) {
    out.push_back(PathChoice{idx});
    for (std::size_t j = idx.size(); j-- > 0;) {
      if (++idx[j] <= graph.layers[j].size()) break;
      idx[j] = 1;
    }
  }
  return out;
}

std::string to_string(const PathChoice& path) {
  std::string s = "(";
  for (std::size_t j = 0; j < path.edge_indices.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(path.edge_indices[j]);
  }
  return s + ")";
}

}  // namespace prg
