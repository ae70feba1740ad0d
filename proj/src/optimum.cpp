#include "prg/optimum.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "prg/loading.hpp"

namespace prg {

namespace {

std::size_t path_rank_limit(const LinearMultigraph& graph) {
  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (const auto& l : graph.layers) k = std::min(k, l.size());
  return graph.layers.empty() ? 0 : k;
}

void require_unit_capacities(const LinearMultigraph& graph) {
  if (!graph.unit_capacities()) throw Error("optimum requires unit capacities; split capacities first");
}

void require_zero_start(const Game& game) {
  if (std::any_of(game.starting_pattern.begin(), game.starting_pattern.end(), [](Time t) { return t != 0; })) {
    throw Error("optimum is defined for players all starting at time 0");
  }
}

std::vector<Time> path_lengths(const LinearMultigraph& graph) {
  std::vector<Time> out;
  for (std::size_t j = 1; j <= path_rank_limit(graph); ++j) out.push_back(path_length(graph, kth_cheapest_path(graph, j)));
  return out;
}

std::int64_t packets(const std::vector<Time>& lengths, Time horizon) {
  std::int64_t total = 0;
  for (const auto len : lengths) {
    if (len > horizon) break;
    total += horizon - len + 1;
  }
  return total;
}

}  // namespace

std::int64_t max_packets(const LinearMultigraph& graph, Time horizon) {
  require_unit_capacities(graph);
  return packets(path_lengths(graph), horizon);
}

Time min_horizon(const Game& game) {
  require_valid(game);
  require_unit_capacities(game.graph);
  require_zero_start(game);
  const auto lengths = path_lengths(game.graph);
  const auto n = static_cast<std::int64_t>(game.n);
  // The cheapest path alone delivers n packets by tau(P^1) + n - 1.
  Time lo = lengths.front();
  for (int step = 0; step < 1024; ++step, ++lo) {
    if (packets(lengths, lo) >= n) return lo;
  }
  Time hi = lo;
  Time width = 1024;
  while (packets(lengths, hi) < n) {
    lo = hi + 1;
    width *= 2;
    hi = std::min<Time>(hi + width, lengths.front() + n - 1);
  }
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (packets(lengths, mid) >= n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

OptimalPlan optimal_state(const Game& game) {
  const Time horizon = min_horizon(game);
  const auto lengths = path_lengths(game.graph);

  OptimalPlan plan;
  plan.horizon = horizon;
  std::size_t usable = 0;
  while (usable < lengths.size() && lengths[usable] <= horizon) ++usable;
  for (std::size_t j = 0; j < usable; ++j) plan.paths.push_back(kth_cheapest_path(game.graph, j + 1));

  const auto k = static_cast<std::int64_t>(usable);
  const auto tau_sum = std::accumulate(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(usable), Time{0});
  const auto delta_sum = static_cast<std::int64_t>(game.n) - k * horizon - 1 + tau_sum;
  if (delta_sum < 0 || delta_sum > k - 1) {
    throw std::logic_error("optimal structure: delta sum " + std::to_string(delta_sum) + " out of range");
  }
  plan.deltas.assign(usable, 0);
  plan.deltas[0] = 1;
  for (std::int64_t j = 1; j <= delta_sum; ++j) plan.deltas[static_cast<std::size_t>(j)] = 1;
  for (std::size_t j = 0; j < usable; ++j) plan.counts.push_back(horizon + plan.deltas[j] - lengths[j]);

  // Release slot r of path j is the r-th packet sent into P^j; players fill
  // slots ordered by (r, j).
  std::vector<std::pair<std::int64_t, std::size_t>> slots;
  for (std::size_t j = 0; j < usable; ++j) {
    for (std::int64_t r = 0; r < plan.counts[j]; ++r) slots.emplace_back(r, j);
  }
  std::sort(slots.begin(), slots.end());
  if (slots.size() != game.n) throw std::logic_error("optimal structure: packet counts do not sum to n");
  for (const auto& [r, j] : slots) plan.state.paths.push_back(plan.paths[j]);

  plan.packets_before = packets(lengths, horizon - 1);
  plan.packets_at = packets(lengths, horizon);
  return plan;
}

std::optional<std::string> optimality_certificate(const OptimalPlan& plan, const Game& game) {
  require_valid(game);
  const auto n = static_cast<std::int64_t>(game.n);
  const auto before = max_packets(game.graph, plan.horizon - 1);
  const auto at = max_packets(game.graph, plan.horizon);
  if (before >= n) {
    return "horizon not minimal: max_packets(" + std::to_string(plan.horizon - 1) + ") = " + std::to_string(before) +
           " >= n = " + std::to_string(n);
  }
  if (at < n) {
    return "horizon infeasible: max_packets(" + std::to_string(plan.horizon) + ") = " + std::to_string(at) +
           " < n = " + std::to_string(n);
  }
  if (before != plan.packets_before || at != plan.packets_at) return "stored packet counts do not match";
  if (std::accumulate(plan.counts.begin(), plan.counts.end(), std::int64_t{0}) != n) return "counts do not sum to n";
  for (std::size_t j = 0; j < plan.paths.size(); ++j) {
    if (path_length(game.graph, plan.paths[j]) > plan.horizon) return "path " + std::to_string(j + 1) + " exceeds horizon";
  }
  if (plan.state.paths.size() != game.n) return "state does not cover every player";
  const auto loaded = load(game, plan.state);
  if (loaded.makespan != plan.horizon) {
    return "loaded makespan " + std::to_string(loaded.makespan) + " differs from horizon " + std::to_string(plan.horizon);
  }
  for (std::size_t i = 0; i < game.n; ++i) {
    for (std::size_t j = 1; j < loaded.layers; ++j) {
      if (loaded.waiting[i][j] != 0) {
        return "player " + std::to_string(i + 1) + " waits in layer " + std::to_string(j + 1);
      }
    }
  }
  return std::nullopt;
}

}  // namespace prg
