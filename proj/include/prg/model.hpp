#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prg {

using Time = std::int64_t;

// Raised for malformed inputs and violated preconditions. The CLI maps it to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::size_t layer = 1;           // 1-based
  std::size_t index_in_layer = 1;  // 1-based rank within the layer
  Time transit = 1;
  std::int64_t capacity = 1;

  bool operator==(const Edge&) const = default;
};

using Layer = std::vector<Edge>;

// Layered multigraph s = v_0 -> v_1 -> ... -> v_m = d. Layer j holds the
// parallel edges from v_{j-1} to v_j, sorted by non-decreasing transit time.
struct LinearMultigraph {
  std::vector<Layer> layers;
  // input_order[j][r] is the 1-based position the r-th sorted edge of layer
  // j+1 had in the input file. Identity for graphs built in sorted order.
  std::vector<std::vector<std::size_t>> input_order;

  std::size_t layer_count() const { return layers.size(); }
  std::size_t node_count() const { return layers.size() + 1; }
  const Edge& edge(std::size_t layer, std::size_t index) const;
  bool unit_capacities() const;
  std::size_t path_count() const;  // saturates at SIZE_MAX

  bool operator==(const LinearMultigraph&) const = default;
};

// Builds a graph from per-layer transit times (and optional capacities),
// stable-sorting each layer and recording the input permutation.
LinearMultigraph make_graph(const std::vector<std::vector<Time>>& transits,
                            const std::vector<std::vector<std::int64_t>>& capacities = {});

// Builds a graph exactly as given, without sorting. Used to express invalid
// inputs in tests and by generators that already emit sorted layers.
LinearMultigraph make_graph_unsorted(const std::vector<std::vector<Time>>& transits);

struct Game {
  LinearMultigraph graph;
  std::size_t n = 1;
  std::vector<Time> starting_pattern;  // per player, non-decreasing

  bool operator==(const Game&) const = default;
};

Game make_game(LinearMultigraph graph, std::size_t n, std::vector<Time> starting_pattern = {});

// One 1-based edge index per layer.
struct PathChoice {
  std::vector<std::size_t> edge_indices;

  auto operator<=>(const PathChoice&) const = default;
};

struct State {
  std::vector<PathChoice> paths;  // indexed by player

  auto operator<=>(const State&) const = default;
};

struct Violation {
  std::string location;
  std::string message;
};

std::vector<Violation> validate_game(const Game& game);
std::vector<Violation> validate_state(const Game& game, const State& state);

// Throws Error listing every violation.
void require_valid(const Game& game);
void require_valid(const Game& game, const State& state);

Time path_length(const LinearMultigraph& graph, const PathChoice& path);

// Edge j in every layer: the j-th path removed by iterated shortest-path
// deletion on a unit-capacity linear multigraph.
PathChoice kth_cheapest_path(const LinearMultigraph& graph, std::size_t j);

// Every PathChoice in lexicographic order. Throws when more than `budget`.
std::vector<PathChoice> all_paths(const LinearMultigraph& graph, std::size_t budget);

std::string to_string(const PathChoice& path);

}  // namespace prg
