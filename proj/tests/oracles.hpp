#pragma once

// Independent reference implementations used as test oracles. They share only
// the plain data types with the library and favour directness over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <vector>

#include "prg/instances.hpp"
#include "prg/model.hpp"

namespace oracle {

using prg::Game;
using prg::PathChoice;
using prg::State;
using prg::Time;

struct NaiveRun {
  std::vector<std::vector<Time>> arrivals;  // [node][player]
  std::vector<Time> completions;
  Time makespan = 0;
  std::vector<std::int64_t> queue_sum;  // after removals, t = 0..makespan
  // [layer][edge] -> players in departure order, and their departure times
  std::vector<std::vector<std::vector<std::size_t>>> served;
  std::vector<std::vector<std::vector<Time>>> departures;
  // [layer][edge][t] queue length right after additions at t
  std::vector<std::vector<std::vector<std::int64_t>>> after_add;
};

// Steps through every integer time with one deque per edge.
inline NaiveRun naive_load(const Game& game, const State& state) {
  const auto& layers = game.graph.layers;
  const std::size_t m = layers.size();
  const std::size_t n = game.n;
  NaiveRun run;
  run.arrivals.assign(m + 1, std::vector<Time>(n, -1));
  run.served.resize(m);
  run.departures.resize(m);
  run.after_add.resize(m);
  std::vector<std::vector<std::deque<std::size_t>>> queues(m);
  for (std::size_t j = 0; j < m; ++j) {
    queues[j].resize(layers[j].size());
    run.served[j].resize(layers[j].size());
    run.departures[j].resize(layers[j].size());
    run.after_add[j].resize(layers[j].size());
  }
  for (std::size_t i = 0; i < n; ++i) run.arrivals[0][i] = game.starting_pattern[i];

  std::size_t finished = 0;
  for (Time t = 0; finished < n; ++t) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (run.arrivals[j][i] == t) queues[j][state.paths[i].edge_indices[j] - 1].push_back(i);
      }
    }
    std::int64_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < layers[j].size(); ++r) {
        auto& q = queues[j][r];
        run.after_add[j][r].push_back(static_cast<std::int64_t>(q.size()));
        for (std::int64_t c = 0; c < layers[j][r].capacity && !q.empty(); ++c) {
          const auto i = q.front();
          q.pop_front();
          run.served[j][r].push_back(i);
          run.departures[j][r].push_back(t);
          run.arrivals[j + 1][i] = t + layers[j][r].transit;
        }
        total += static_cast<std::int64_t>(q.size());
      }
    }
    run.queue_sum.push_back(total);
    // players reaching d at t were counted when their last edge released them
    for (std::size_t i = 0; i < n; ++i) {
      if (run.arrivals[m][i] == t) ++finished;
    }
  }
  run.completions = run.arrivals[m];
  run.makespan = *std::max_element(run.completions.begin(), run.completions.end());
  run.queue_sum.resize(static_cast<std::size_t>(run.makespan) + 1, 0);
  return run;
}

// Waiting time of a fictional player joining edge (layer, r) at time t behind
// everyone already there, by replaying the edge's queue step by step.
inline Time naive_workload(const Game& game, const State& state, std::size_t layer, std::size_t r, Time t) {
  const auto run = naive_load(game, state);
  const auto& e = game.graph.layers[layer - 1][r - 1];
  std::vector<std::pair<Time, std::size_t>> joins;
  for (std::size_t i = 0; i < game.n; ++i) {
    if (state.paths[i].edge_indices[layer - 1] == r) joins.emplace_back(run.arrivals[layer - 1][i], i);
  }
  std::sort(joins.begin(), joins.end());
  std::deque<std::size_t> q;
  std::size_t next = 0;
  constexpr std::size_t kGhost = static_cast<std::size_t>(-1);
  for (Time s = 0;; ++s) {
    while (next < joins.size() && joins[next].first == s) q.push_back(joins[next++].second);
    if (s == t) q.push_back(kGhost);
    for (std::int64_t c = 0; c < e.capacity && !q.empty(); ++c) {
      const auto who = q.front();
      q.pop_front();
      if (who == kGhost) return e.transit + (s - t);
    }
  }
}

inline void for_each_path(const prg::LinearMultigraph& g, const std::function<void(const PathChoice&)>& f) {
  PathChoice p;
  p.edge_indices.assign(g.layers.size(), 1);
  while (true) {
    f(p);
    std::size_t j = g.layers.size();
    while (j > 0 && p.edge_indices[j - 1] == g.layers[j - 1].size()) {
      p.edge_indices[j - 1] = 1;
      --j;
    }
    if (j == 0) return;
    ++p.edge_indices[j - 1];
  }
}

inline std::vector<PathChoice> paths_of(const prg::LinearMultigraph& g) {
  std::vector<PathChoice> out;
  for_each_path(g, [&](const PathChoice& p) { out.push_back(p); });
  return out;
}

inline void for_each_state(const Game& game, const std::function<void(const State&)>& f) {
  const auto paths = paths_of(game.graph);
  std::vector<std::size_t> pick(game.n, 0);
  State s;
  s.paths.assign(game.n, paths[0]);
  while (true) {
    f(s);
    std::size_t i = game.n;
    while (i > 0 && pick[i - 1] + 1 == paths.size()) {
      pick[i - 1] = 0;
      s.paths[i - 1] = paths[0];
      --i;
    }
    if (i == 0) return;
    ++pick[i - 1];
    s.paths[i - 1] = paths[pick[i - 1]];
  }
}

inline double state_count(const Game& game) {
  return std::pow(static_cast<double>(paths_of(game.graph).size()), static_cast<double>(game.n));
}

// Some player reaches some node strictly earlier after a unilateral switch.
inline bool naive_is_ufr(const Game& game, const State& state) {
  const auto base = naive_load(game, state);
  const auto paths = paths_of(game.graph);
  for (std::size_t i = 0; i < game.n; ++i) {
    for (const auto& p : paths) {
      if (p == state.paths[i]) continue;
      auto alt = state;
      alt.paths[i] = p;
      const auto dev = naive_load(game, alt);
      for (std::size_t j = 1; j < dev.arrivals.size(); ++j) {
        if (dev.arrivals[j][i] < base.arrivals[j][i]) return false;
      }
    }
  }
  return true;
}

inline std::vector<State> naive_equilibria(const Game& game) {
  std::vector<State> out;
  for_each_state(game, [&](const State& s) {
    if (naive_is_ufr(game, s)) out.push_back(s);
  });
  return out;
}

inline Time naive_optimum(const Game& game) {
  Time best = -1;
  for_each_state(game, [&](const State& s) {
    const auto mk = naive_load(game, s).makespan;
    if (best < 0 || mk < best) best = mk;
  });
  return best;
}

// Packets deliverable by C along the cheapest edge-disjoint paths, computed
// from sorted layer transits directly.
inline std::int64_t naive_max_packets(const prg::LinearMultigraph& g, Time c) {
  std::size_t k = g.layers.front().size();
  for (const auto& l : g.layers) k = std::min(k, l.size());
  std::int64_t total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    Time len = 0;
    for (const auto& l : g.layers) {
      std::vector<Time> ts;
      for (const auto& e : l) ts.push_back(e.transit);
      std::sort(ts.begin(), ts.end());
      len += ts[j];
    }
    if (len <= c) total += c - len + 1;
  }
  return total;
}

inline prg::Rational naive_harmonic(std::int64_t a, std::int64_t b) {
  prg::Rational s = 0;
  for (std::int64_t j = a; j <= b; ++j) s += prg::Rational(prg::BigInt(1), prg::BigInt(j));
  return s;
}

// Optimum upper bound before simplification: (1/k) * (n + (k^2+k)/2
// - (l^2+l)/2 + sum_{j=2}^{k-l} (j-1) tau_j).
inline prg::Rational unsimplified_opt_bound(const prg::LowerBoundParams& p) {
  const prg::BigInt k = p.k;
  const prg::BigInt l = p.l;
  prg::BigInt s = p.n + (k * k + k) / 2 - (l * l + l) / 2;
  for (std::int64_t j = 2; j <= p.k - p.l; ++j) s += prg::BigInt(j - 1) * p.tau_special.at(j);
  return prg::Rational(s, k);
}

// ---- fuzzing ----

struct FuzzShape {
  int max_layers = 3;
  int max_edges = 4;
  int max_players = 6;
  int max_transit = 5;
  int max_capacity = 1;
  int max_start = 0;
};

inline int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Game random_game(std::mt19937_64& rng, const FuzzShape& shape) {
  const int m = draw(rng, 1, shape.max_layers);
  std::vector<std::vector<Time>> transits(m);
  std::vector<std::vector<std::int64_t>> caps(m);
  for (int j = 0; j < m; ++j) {
    const int k = draw(rng, 1, shape.max_edges);
    for (int r = 0; r < k; ++r) {
      transits[j].push_back(draw(rng, 1, shape.max_transit));
      caps[j].push_back(draw(rng, 1, shape.max_capacity));
    }
  }
  const auto n = static_cast<std::size_t>(draw(rng, 1, shape.max_players));
  std::vector<Time> start(n, 0);
  for (auto& s : start) s = draw(rng, 0, shape.max_start);
  std::sort(start.begin(), start.end());
  return prg::make_game(prg::make_graph(transits, caps), n, start);
}

inline State random_state(std::mt19937_64& rng, const Game& game) {
  State s;
  for (std::size_t i = 0; i < game.n; ++i) {
    PathChoice p;
    for (const auto& l : game.graph.layers) p.edge_indices.push_back(static_cast<std::size_t>(draw(rng, 1, static_cast<int>(l.size()))));
    s.paths.push_back(std::move(p));
  }
  return s;
}

}  // namespace oracle
