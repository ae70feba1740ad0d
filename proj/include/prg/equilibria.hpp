#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prg/model.hpp"

namespace prg {

struct GreedyQueue {};
struct LowestIndex {};
struct ShortestQueue {};
struct Seeded {
  std::uint64_t seed = 0;
};

// How a deciding player picks among edges of equal minimal latency.
//   GreedyQueue   longest queue, then lowest index
//   LowestIndex   lowest index
//   ShortestQueue shortest queue, then lowest index
//   Seeded        uniformly at random from a seeded PRNG
using TieBreakPolicy = std::variant<GreedyQueue, LowestIndex, ShortestQueue, Seeded>;

// Accepts greedy-queue, lowest-index, shortest-queue and seeded:<u64>.
TieBreakPolicy parse_policy(const std::string& name);
std::string to_string(const TieBreakPolicy& policy);

struct UfrWitness {
  std::size_t player = 0;  // 1-based
  std::size_t node = 0;    // j for node v_j
  PathChoice deviation;
  Time improved_arrival = 0;
  Time original_arrival = 0;
};

inline constexpr std::size_t kDefaultPathBudget = 1'000'000;
inline constexpr std::size_t kDefaultStateBudget = 100'000;

// Players insert in index order; each walks layer by layer into an edge of
// minimal current latency given all lower-index players, ties resolved by
// the policy. Throws std::logic_error if a later player would overtake an
// earlier one or if reloading disagrees with the incremental timeline.
State sequential_equilibrium(const Game& game, const TieBreakPolicy& policy);

// Exact deviation check. Returns nullopt for a UFR equilibrium, otherwise the
// first witness in (player, deviation path, node) order.
std::optional<UfrWitness> is_ufr_equilibrium(const Game& game, const State& state,
                                             std::size_t path_budget = kDefaultPathBudget);

// Every UFR equilibrium, sorted lexicographically by player paths. Requires
// |paths|^n <= state_budget.
std::vector<State> enumerate_equilibria(const Game& game, std::size_t state_budget = kDefaultStateBudget);

// The greedy-queue equilibrium, which attains the largest makespan among all
// equilibria.
State worst_equilibrium(const Game& game);

}  // namespace prg
