#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prg/loading.hpp"
#include "prg/model.hpp"

namespace prg {

// copies[j][r] lists the 1-based indices, in the split layer j+1, of the
// unit-capacity copies of original edge r+1.
struct EdgeMapping {
  std::vector<std::vector<std::vector<std::size_t>>> copies;
};

struct SplitGame {
  Game game;
  EdgeMapping mapping;
};

// Replaces every edge of capacity c by c unit-capacity copies of equal transit.
SplitGame split_capacities(const Game& game);

// Player i's edge e becomes copy ((q_e(i) - 1) mod c_e) + 1, q_e(i) being its
// FIFO position on e in `loading`.
State map_state_to_split(const Game& game, const State& state, const LoadingResult& loading,
                         const EdgeMapping& mapping);

struct Breakpoint {
  Time time = 0;
  std::int64_t rate = 0;  // constant from `time` up to the next breakpoint

  bool operator==(const Breakpoint&) const = default;
};

// Piecewise-constant rate per edge on [0, horizon).
struct FlowOverTime {
  Time horizon = 0;
  std::vector<std::vector<std::vector<Breakpoint>>> rates;  // [layer][edge]
};

// A departure from the queue of e at time t contributes rate 1 on [t, t+1).
// Horizon is makespan + 1.
FlowOverTime state_to_flow(const Game& game, const LoadingResult& loading);

// Cumulative flow F_e(x) = integral of f_e over [0, x].
std::int64_t cumulative(const std::vector<Breakpoint>& rate, Time x);

// Flow value: flow on the last layer that reaches d by the horizon.
std::int64_t flow_value(const LinearMultigraph& graph, const FlowOverTime& flow);

// Checks non-negative rates within capacity, zero rate on [T - tau(e), T),
// strictly increasing breakpoints and weak flow conservation at every
// internal node. With expected_value set, also checks |f|.
std::optional<std::string> check_flow_feasible(const LinearMultigraph& graph, const FlowOverTime& flow,
                                               std::optional<std::int64_t> expected_value = std::nullopt);

nlohmann::json flow_to_json(const Game& game, const FlowOverTime& flow);

}  // namespace prg
