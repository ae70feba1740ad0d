#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "prg/model.hpp"

namespace prg {

enum class EventKind { Enqueue, Depart, Arrive };

struct TraceEvent {
  Time time = 0;
  std::size_t layer = 0;
  std::size_t index = 0;
  EventKind kind = EventKind::Enqueue;
  std::size_t player = 0;  // 1-based

  bool operator==(const TraceEvent&) const = default;
};

const char* to_string(EventKind kind);

// Per-edge FIFO history. Players are listed in service order; entry and
// departure times are therefore both non-decreasing.
struct EdgeHistory {
  std::vector<std::size_t> players;  // 0-based player ids
  std::vector<Time> entries;
  std::vector<Time> departures;
  // time -> queue contents (0-based players) after the removal step;
  // filled only when tracing is requested.
  std::map<Time, std::vector<std::size_t>> queue_trace;

  bool operator==(const EdgeHistory&) const = default;
};

struct LoadingResult {
  std::size_t n = 0;
  std::size_t layers = 0;
  // [player][layer], 0-based indices
  std::vector<std::vector<Time>> waiting;
  std::vector<std::vector<Time>> latency;
  std::vector<std::vector<std::size_t>> queue_position;  // 1-based FIFO rank on the used edge
  // arrivals[j][player] is the arrival time at v_j; arrivals[0] is the starting pattern.
  std::vector<std::vector<Time>> arrivals;
  std::vector<Time> completions;
  Time makespan = 0;
  // queue_sum_trace[t] = Q(S,t) for 0 <= t <= makespan.
  std::vector<std::int64_t> queue_sum_trace;
  // edge_history[j][r] for layer j+1, edge r+1.
  std::vector<std::vector<EdgeHistory>> edge_history;
  std::vector<TraceEvent> events;

  const EdgeHistory& history(const Edge& e) const { return edge_history.at(e.layer - 1).at(e.index_in_layer - 1); }
  bool operator==(const LoadingResult&) const = default;
};

struct LoadOptions {
  bool every_time_step = false;  // iterate all integer times instead of event times
  bool record_events = false;
  bool record_queue_trace = false;
};

// Discrete-time FIFO network loading: at each time t, players reaching an
// edge tail at t join its queue ordered by (arrival time, player index); then
// each edge releases the first min(capacity, queue length) players, who reach
// the edge head at t + transit.
LoadingResult load(const Game& game, const State& state, const LoadOptions& options = {});

// l_e(S,t): transit plus the queueing delay of a fictional lowest-priority
// player joining e at time t. Times past the last event see the final
// (empty) queue.
Time workload(const LoadingResult& result, const Edge& edge, Time t);

// Number of players in queue on e right after the additions at time t.
std::int64_t queue_length(const LoadingResult& result, const Edge& edge, Time t);

// Q(S,t): total queued players after the removal step at t.
std::int64_t queue_sum(const LoadingResult& result, Time t);

// Layer-by-layer arrival propagation. Given arrival times at v_{j-1} and each
// player's edge in layer j, returns the arrival times at v_j. Shares the
// semantics of load() without recording a timeline.
void propagate_layer(const Layer& layer, std::span<const Time> tail_arrivals,
                     std::span<const std::size_t> edge_choice, std::span<Time> head_arrivals);

// arrivals[j][player] for j = 0..m via propagate_layer.
std::vector<std::vector<Time>> arrival_pattern(const Game& game, const State& state);

}  // namespace prg
