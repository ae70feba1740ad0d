#include "prg/extensions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "prg/io.hpp"

namespace prg {

SplitGame split_capacities(const Game& game) {
  require_valid(game);
  SplitGame out;
  std::vector<std::vector<Time>> transits;
  out.mapping.copies.resize(game.graph.layers.size());
  for (std::size_t j = 0; j < game.graph.layers.size(); ++j) {
    std::vector<Time> row;
    for (const auto& e : game.graph.layers[j]) {
      std::vector<std::size_t> copies;
      for (std::int64_t c = 0; c < e.capacity; ++c) {
        row.push_back(e.transit);
        copies.push_back(row.size());
      }
      out.mapping.copies[j].push_back(std::move(copies));
    }
    transits.push_back(std::move(row));
  }
  out.game = make_game(make_graph(transits), game.n, game.starting_pattern);
  return out;
}

State map_state_to_split(const Game& game, const State& state, const LoadingResult& loading,
                         const EdgeMapping& mapping) {
  require_valid(game, state);
  if (loading.n != game.n || loading.layers != game.graph.layer_count()) {
    throw Error("loading result does not belong to this game");
  }
  State out;
  for (std::size_t i = 0; i < game.n; ++i) {
    PathChoice p;
    for (std::size_t j = 0; j < game.graph.layer_count(); ++j) {
      const auto idx = state.paths[i].edge_indices[j];
      const auto& e = game.graph.edge(j + 1, idx);
      const auto q = loading.queue_position[i][j];
      if (q < 1) throw Error("loading result lacks queue positions");
      const auto& copies = mapping.copies.at(j).at(idx - 1);
      p.edge_indices.push_back(copies.at((q - 1) % static_cast<std::size_t>(e.capacity)));
    }
    out.paths.push_back(std::move(p));
  }
  return out;
}

FlowOverTime state_to_flow(const Game& game, const LoadingResult& loading) {
  FlowOverTime flow;
  flow.horizon = loading.makespan + 1;
  flow.rates.resize(game.graph.layer_count());
  for (std::size_t j = 0; j < game.graph.layer_count(); ++j) {
    for (std::size_t r = 0; r < game.graph.layers[j].size(); ++r) {
      const auto& deps = loading.edge_history.at(j).at(r).departures;
      std::vector<Breakpoint> bps;
      Time open_end = 0;
      for (std::size_t a = 0; a < deps.size();) {
        std::size_t b = a;
        while (b < deps.size() && deps[b] == deps[a]) ++b;
        const Time t = deps[a];
        const auto count = static_cast<std::int64_t>(b - a);
        if (!bps.empty() && bps.back().rate == count && open_end == t) {
          open_end = t + 1;
        } else {
          if (!bps.empty() && open_end < t) bps.push_back({open_end, 0});
          bps.push_back({t, count});
          open_end = t + 1;
        }
        a = b;
      }
      if (!bps.empty()) bps.push_back({open_end, 0});
      flow.rates[j].push_back(std::move(bps));
    }
  }
  return flow;
}

std::int64_t cumulative(const std::vector<Breakpoint>& rate, Time x) {
  std::int64_t total = 0;
  for (std::size_t s = 0; s < rate.size(); ++s) {
    const Time begin = std::max<Time>(rate[s].time, 0);
    if (begin >= x) break;
    const Time end = s + 1 < rate.size() ? std::min(rate[s + 1].time, x) : x;
    if (end > begin) total += rate[s].rate * (end - begin);
  }
  return total;
}

std::int64_t flow_value(const LinearMultigraph& graph, const FlowOverTime& flow) {
  std::int64_t v = 0;
  const auto last = graph.layer_count() - 1;
  for (std::size_t r = 0; r < graph.layers[last].size(); ++r) {
    v += cumulative(flow.rates[last][r], flow.horizon - graph.layers[last][r].transit);
  }
  return v;
}

std::optional<std::string> check_flow_feasible(const LinearMultigraph& graph, const FlowOverTime& flow,
                                               std::optional<std::int64_t> expected_value) {
  if (flow.rates.size() != graph.layer_count()) return "flow does not cover every layer";
  for (std::size_t j = 0; j < graph.layer_count(); ++j) {
    if (flow.rates[j].size() != graph.layers[j].size()) {
      return "flow does not cover every edge of layer " + std::to_string(j + 1);
    }
    for (std::size_t r = 0; r < graph.layers[j].size(); ++r) {
      const auto& e = graph.layers[j][r];
      const auto& bps = flow.rates[j][r];
      const std::string where = "edge " + std::to_string(j + 1) + ":" + std::to_string(r + 1);
      for (std::size_t s = 0; s < bps.size(); ++s) {
        const Time end = s + 1 < bps.size() ? bps[s + 1].time : flow.horizon;
        if (s > 0 && bps[s].time <= bps[s - 1].time) {
          return "breakpoints not strictly increasing on " + where + " at t=" + std::to_string(bps[s].time);
        }
        if (bps[s].time < 0) return "negative time on " + where;
        if (bps[s].rate < 0) return "negative rate on " + where + " at t=" + std::to_string(bps[s].time);
        if (bps[s].rate > e.capacity) {
          return "capacity: rate " + std::to_string(bps[s].rate) + " exceeds " + std::to_string(e.capacity) +
                 " on " + where + " at t=" + std::to_string(bps[s].time);
        }
        if (bps[s].rate > 0 && end > flow.horizon - e.transit) {
          return "flow on " + where + " cannot reach its head before the horizon (t=" + std::to_string(bps[s].time) + ")";
        }
      }
    }
  }

  // Both sides of the conservation inequality are piecewise linear in theta
  // with kinks at (shifted) breakpoints, so checking kinks and ends suffices.
  for (std::size_t node = 1; node < graph.layer_count(); ++node) {
    const auto& in = graph.layers[node - 1];
    const auto& out = graph.layers[node];
    std::set<Time> probes{0, flow.horizon};
    for (std::size_t r = 0; r < in.size(); ++r) {
      for (const auto& b : flow.rates[node - 1][r]) probes.insert(b.time + in[r].transit);
    }
    for (std::size_t r = 0; r < out.size(); ++r) {
      for (const auto& b : flow.rates[node][r]) probes.insert(b.time);
    }
    for (const Time theta : probes) {
      if (theta < 0 || theta > flow.horizon) continue;
      std::int64_t inflow = 0;
      std::int64_t outflow = 0;
      for (std::size_t r = 0; r < in.size(); ++r) inflow += cumulative(flow.rates[node - 1][r], theta - in[r].transit);
      for (std::size_t r = 0; r < out.size(); ++r) outflow += cumulative(flow.rates[node][r], theta);
      if (outflow > inflow) {
        return "weak flow conservation violated at v_" + std::to_string(node) + " at t=" + std::to_string(theta) +
               ": out " + std::to_string(outflow) + " > in " + std::to_string(inflow);
      }
    }
  }

  if (expected_value) {
    const auto v = flow_value(graph, flow);
    if (v != *expected_value) {
      return "flow value " + std::to_string(v) + " differs from " + std::to_string(*expected_value);
    }
  }
  return std::nullopt;
}

nlohmann::json flow_to_json(const Game& game, const FlowOverTime& flow) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t j = 0; j < flow.rates.size(); ++j) {
    for (std::size_t r = 0; r < flow.rates[j].size(); ++r) {
      nlohmann::json bps = nlohmann::json::array();
      for (const auto& b : flow.rates[j][r]) bps.push_back({b.time, b.rate});
      edges.push_back({{"layer", j + 1},
                       {"index", to_input_index(game.graph, j + 1, r + 1)},
                       {"breakpoints", bps}});
    }
  }
  return {{"horizon", flow.horizon}, {"value", flow_value(game.graph, flow)}, {"edges", edges}};
}

}  // namespace prg
