#include "prg/loading.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace prg {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Enqueue: return "enqueue";
    case EventKind::Depart: return "depart";
    case EventKind::Arrive: return "arrive";
  }
  return "?";
}

namespace {

struct Pending {
  Time time;
  std::size_t player;
  std::size_t layer;  // 0-based layer being entered; == m means reaching d

  bool operator>(const Pending& o) const {
    return std::tie(time, player, layer) > std::tie(o.time, o.player, o.layer);
  }
};

Time horizon_bound(const Game& game) {
  Time longest = 0;
  for (const auto& l : game.graph.layers) {
    Time mx = 0;
    for (const auto& e : l) mx = std::max(mx, e.transit);
    longest += mx;
  }
  const Time last_start = game.starting_pattern.empty() ? 0 : game.starting_pattern.back();
  return static_cast<Time>(game.n) * longest + last_start;
}

}  // namespace

LoadingResult load(const Game& game, const State& state, const LoadOptions& options) {
  require_valid(game, state);
  const std::size_t n = game.n;
  const std::size_t m = game.graph.layer_count();
  const auto& layers = game.graph.layers;

  LoadingResult r;
  r.n = n;
  r.layers = m;
  r.waiting.assign(n, std::vector<Time>(m, 0));
  r.latency.assign(n, std::vector<Time>(m, 0));
  r.queue_position.assign(n, std::vector<std::size_t>(m, 0));
  r.arrivals.assign(m + 1, std::vector<Time>(n, 0));
  r.completions.assign(n, 0);
  r.edge_history.resize(m);
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t j = 0; j < m; ++j) {
    r.edge_history[j].resize(layers[j].size());
    offset[j + 1] = offset[j] + layers[j].size();
  }
  std::vector<std::deque<std::size_t>> queues(offset[m]);
  std::set<std::size_t> busy;  // flat edge ids with a non-empty queue, kept sorted

  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;
  for (std::size_t i = 0; i < n; ++i) {
    r.arrivals[0][i] = game.starting_pattern[i];
    pending.push({game.starting_pattern[i], i, 0});
  }

  const Time guard = horizon_bound(game);
  std::vector<std::int64_t> qsum;
  std::size_t done = 0;
  Time t = pending.top().time;

  while (done < n) {
    if (t > guard) throw Error("loading exceeded its horizon bound at t=" + std::to_string(t));

    // 1. additions
    while (!pending.empty() && pending.top().time == t) {
      const auto [time, player, layer] = pending.top();
      pending.pop();
      if (layer > 0) {
        const auto prev = state.paths[player].edge_indices[layer - 1];
        r.arrivals[layer][player] = t;
        if (options.record_events) r.events.push_back({t, layer, prev, EventKind::Arrive, player + 1});
      }
      if (layer == m) {
        r.completions[player] = t;
        ++done;
        continue;
      }
      const auto idx = state.paths[player].edge_indices[layer];
      const auto flat = offset[layer] + idx - 1;
      auto& hist = r.edge_history[layer][idx - 1];
      hist.players.push_back(player);
      hist.entries.push_back(t);
      r.queue_position[player][layer] = hist.players.size();
      queues[flat].push_back(player);
      busy.insert(flat);
      if (options.record_events) r.events.push_back({t, layer + 1, idx, EventKind::Enqueue, player + 1});
    }

    // 2. removals
    std::int64_t queued = 0;
    for (auto it = busy.begin(); it != busy.end();) {
      const auto flat = *it;
      const auto layer = static_cast<std::size_t>(
          std::upper_bound(offset.begin(), offset.end(), flat) - offset.begin() - 1);
      const auto idx = flat - offset[layer] + 1;
      const Edge& e = layers[layer][idx - 1];
      auto& q = queues[flat];
      auto& hist = r.edge_history[layer][idx - 1];
      for (std::int64_t c = 0; c < e.capacity && !q.empty(); ++c) {
        const auto player = q.front();
        q.pop_front();
        hist.departures.push_back(t);
        const Time entry = hist.entries[r.queue_position[player][layer] - 1];
        r.waiting[player][layer] = t - entry;
        r.latency[player][layer] = t - entry + e.transit;
        pending.push({t + e.transit, player, layer + 1});
        if (options.record_events) r.events.push_back({t, layer + 1, idx, EventKind::Depart, player + 1});
      }
      if (options.record_queue_trace) hist.queue_trace[t] = {q.begin(), q.end()};
      queued += static_cast<std::int64_t>(q.size());
      it = q.empty() ? busy.erase(it) : std::next(it);
    }
    if (qsum.size() <= static_cast<std::size_t>(t)) qsum.resize(static_cast<std::size_t>(t) + 1, 0);
    qsum[static_cast<std::size_t>(t)] = queued;

    if (done == n) break;
    if (options.every_time_step || !busy.empty()) {
      ++t;
    } else {
      t = pending.top().time;
    }
  }

  r.makespan = *std::max_element(r.completions.begin(), r.completions.end());
  qsum.resize(static_cast<std::size_t>(r.makespan) + 1, 0);
  r.queue_sum_trace = std::move(qsum);
  return r;
}

std::int64_t queue_length(const LoadingResult& result, const Edge& edge, Time t) {
  const auto& h = result.history(edge);
  const auto entered = std::upper_bound(h.entries.begin(), h.entries.end(), t) - h.entries.begin();
  const auto left = std::lower_bound(h.departures.begin(), h.departures.end(), t) - h.departures.begin();
  return static_cast<std::int64_t>(entered - left);
}

Time workload(const LoadingResult& result, const Edge& edge, Time t) {
  return edge.transit + queue_length(result, edge, t) / edge.capacity;
}

std::int64_t queue_sum(const LoadingResult& result, Time t) {
  if (t < 0 || static_cast<std::size_t>(t) >= result.queue_sum_trace.size()) return 0;
  return result.queue_sum_trace[static_cast<std::size_t>(t)];
}

void propagate_layer(const Layer& layer, std::span<const Time> tail_arrivals,
                     std::span<const std::size_t> edge_choice, std::span<Time> head_arrivals) {
  const std::size_t n = tail_arrivals.size();
  thread_local std::vector<std::size_t> order;
  thread_local std::vector<Time> departed;
  order.resize(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edge_choice[a], tail_arrivals[a], a) < std::tie(edge_choice[b], tail_arrivals[b], b);
  });
  departed.resize(n);
  std::size_t group_start = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto p = order[q];
    if (q > 0 && edge_choice[order[q - 1]] != edge_choice[p]) group_start = q;
    const Edge& e = layer[edge_choice[p] - 1];
    const auto pos = q - group_start;
    Time d = tail_arrivals[p];
    if (pos > 0) d = std::max(d, departed[q - 1]);
    if (pos >= static_cast<std::size_t>(e.capacity)) {
      d = std::max(d, departed[q - static_cast<std::size_t>(e.capacity)] + 1);
    }
    departed[q] = d;
    head_arrivals[p] = d + e.transit;
  }
}

std::vector<std::vector<Time>> arrival_pattern(const Game& game, const State& state) {
  require_valid(game, state);
  const auto m = game.graph.layer_count();
  std::vector<std::vector<Time>> a(m + 1, std::vector<Time>(game.n));
  a[0] = game.starting_pattern;
  std::vector<std::size_t> choice(game.n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < game.n; ++i) choice[i] = state.paths[i].edge_indices[j];
    propagate_layer(game.graph.layers[j], a[j], choice, a[j + 1]);
  }
  return a;
}

}  // namespace prg
