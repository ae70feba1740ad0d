#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prg/model.hpp"

namespace prg {

struct OptimalPlan {
  std::vector<PathChoice> paths;  // edge-disjoint P^1..P^k' with tau(P^j) <= horizon
  Time horizon = 0;
  std::vector<std::int64_t> counts;  // packets per path
  std::vector<int> deltas;           // 0/1 per path; deltas[0] is always 1
  State state;
  std::int64_t packets_before = 0;   // max_packets(horizon - 1)
  std::int64_t packets_at = 0;       // max_packets(horizon)
};

// Packets a temporally repeated flow over the cheapest edge-disjoint paths
// delivers to d by time `horizon`: sum over paths with tau(P) <= C of
// C - tau(P) + 1. Requires unit capacities.
std::int64_t max_packets(const LinearMultigraph& graph, Time horizon);

// Smallest C with max_packets(C) >= n: the optimal makespan.
Time min_horizon(const Game& game);

OptimalPlan optimal_state(const Game& game);

// nullopt when the plan is certified optimal, otherwise the first failed check.
std::optional<std::string> optimality_certificate(const OptimalPlan& plan, const Game& game);

}  // namespace prg
