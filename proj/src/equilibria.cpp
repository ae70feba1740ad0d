#include "prg/equilibria.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "prg/loading.hpp"

namespace prg {

TieBreakPolicy parse_policy(const std::string& name) {
  if (name == "greedy-queue") return GreedyQueue{};
  if (name == "lowest-index") return LowestIndex{};
  if (name == "shortest-queue") return ShortestQueue{};
  const std::string prefix = "seeded:";
  if (name.rfind(prefix, 0) == 0) {
    const auto digits = name.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error("bad seed in policy '" + name + "'");
    }
    try {
      return Seeded{std::stoull(digits)};
    } catch (const std::out_of_range&) {
      throw Error("seed out of range in policy '" + name + "'");
    }
  }
  throw Error("unknown policy '" + name + "'");
}

std::string to_string(const TieBreakPolicy& policy) {
  struct Visitor {
    std::string operator()(GreedyQueue) const { return "greedy-queue"; }
    std::string operator()(LowestIndex) const { return "lowest-index"; }
    std::string operator()(ShortestQueue) const { return "shortest-queue"; }
    std::string operator()(Seeded s) const { return "seeded:" + std::to_string(s.seed); }
  };
  return std::visit(Visitor{}, policy);
}

namespace {

// FIFO state of one edge while players are inserted in index order. Every
// insertion happens at a time no earlier than the previous one, so players
// departed before the current time can be skipped for good.
struct EdgeTimeline {
  std::vector<Time> departures;
  std::size_t head = 0;

  std::int64_t queue_at(Time t) {
    while (head < departures.size() && departures[head] < t) ++head;
    return static_cast<std::int64_t>(departures.size() - head);
  }

  Time departure_if_joining(Time t, std::int64_t capacity) const {
    Time d = t;
    const auto size = departures.size();
    if (size > 0) d = std::max(d, departures.back());
    if (size >= static_cast<std::size_t>(capacity)) {
      d = std::max(d, departures[size - static_cast<std::size_t>(capacity)] + 1);
    }
    return d;
  }
};

struct Candidate {
  std::size_t index;  // 1-based
  Time latency;
  Time departure;
  std::int64_t queue;
};

std::size_t pick(const std::vector<Candidate>& tied, const TieBreakPolicy& policy, std::mt19937_64& rng) {
  // `tied` is ordered by edge index.
  if (std::holds_alternative<LowestIndex>(policy)) return 0;
  if (std::holds_alternative<Seeded>(policy)) {
    std::uniform_int_distribution<std::size_t> dist(0, tied.size() - 1);
    return dist(rng);
  }
  const bool longest = std::holds_alternative<GreedyQueue>(policy);
  std::size_t best = 0;
  for (std::size_t c = 1; c < tied.size(); ++c) {
    if (longest ? tied[c].queue > tied[best].queue : tied[c].queue < tied[best].queue) best = c;
  }
  return best;
}

}  // namespace

State sequential_equilibrium(const Game& game, const TieBreakPolicy& policy) {
  require_valid(game);
  const auto& layers = game.graph.layers;
  const std::size_t m = layers.size();
  std::mt19937_64 rng(std::holds_alternative<Seeded>(policy) ? std::get<Seeded>(policy).seed : 0);

  std::vector<std::vector<EdgeTimeline>> timeline(m);
  for (std::size_t j = 0; j < m; ++j) timeline[j].resize(layers[j].size());

  State state;
  state.paths.reserve(game.n);
  std::vector<std::vector<Time>> expected(m + 1, std::vector<Time>(game.n));
  std::vector<Time> last_arrival(m + 1, std::numeric_limits<Time>::min());
  std::vector<Candidate> cands;
  std::vector<Candidate> tied;

  for (std::size_t i = 0; i < game.n; ++i) {
    Time t = game.starting_pattern[i];
    expected[0][i] = t;
    PathChoice path;
    path.edge_indices.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      cands.clear();
      Time best = std::numeric_limits<Time>::max();
      for (std::size_t r = 0; r < layers[j].size(); ++r) {
        const Edge& e = layers[j][r];
        auto& tl = timeline[j][r];
        const auto q = tl.queue_at(t);
        const auto d = tl.departure_if_joining(t, e.capacity);
        cands.push_back({r + 1, d - t + e.transit, d, q});
        best = std::min(best, d - t + e.transit);
      }
      tied.clear();
      for (const auto& c : cands) {
        if (c.latency == best) tied.push_back(c);
      }
      const auto& chosen = tied[pick(tied, policy, rng)];
      timeline[j][chosen.index - 1].departures.push_back(chosen.departure);
      path.edge_indices.push_back(chosen.index);
      t = chosen.departure + layers[j][chosen.index - 1].transit;
      if (t < last_arrival[j + 1]) {
        throw std::logic_error("sequential construction: player " + std::to_string(i + 1) +
                               " overtakes an earlier player at v_" + std::to_string(j + 1));
      }
      last_arrival[j + 1] = t;
      expected[j + 1][i] = t;
    }
    state.paths.push_back(std::move(path));
  }

  if (arrival_pattern(game, state) != expected) {
    throw std::logic_error("sequential construction disagrees with network loading");
  }
  return state;
}

namespace {

std::vector<std::vector<std::size_t>> choices_by_layer(const State& state, std::size_t m) {
  std::vector<std::vector<std::size_t>> c(m, std::vector<std::size_t>(state.paths.size()));
  for (std::size_t i = 0; i < state.paths.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) c[j][i] = state.paths[i].edge_indices[j];
  }
  return c;
}

// Arrival of `player` at v_{last+1} after replacing its edges in layers
// 0..last by `deviation`, given the other players' fixed choices and arrivals.
class DeviationProbe {
 public:
  DeviationProbe(const Game& game, const std::vector<std::vector<std::size_t>>& choice,
                 const std::vector<std::vector<Time>>& arrivals)
      : game_(game), choice_(choice), arrivals_(arrivals), tmp_(arrivals), alt_(game.n) {}

  // Fills improved[j] for j = first..last+1 (node indices), returns the first
  // differing layer.
  std::size_t run(std::size_t player, const std::vector<std::size_t>& deviation, std::size_t last) {
    std::size_t first = 0;
    while (first <= last && deviation[first] == choice_[first][player]) ++first;
    if (first > last) return first;
    for (std::size_t j = first; j <= last; ++j) {
      const auto& src = j == first ? arrivals_[j] : tmp_[j];
      alt_ = choice_[j];
      alt_[player] = deviation[j];
      propagate_layer(game_.graph.layers[j], src, alt_, tmp_[j + 1]);
    }
    return first;
  }

  Time arrival(std::size_t node, std::size_t player) const { return tmp_[node][player]; }

 private:
  const Game& game_;
  const std::vector<std::vector<std::size_t>>& choice_;
  const std::vector<std::vector<Time>>& arrivals_;
  std::vector<std::vector<Time>> tmp_;
  std::vector<std::size_t> alt_;
};

}  // namespace

std::optional<UfrWitness> is_ufr_equilibrium(const Game& game, const State& state, std::size_t path_budget) {
  require_valid(game, state);
  const auto paths = all_paths(game.graph, path_budget);
  const std::size_t m = game.graph.layer_count();
  const auto choice = choices_by_layer(state, m);
  const auto base = arrival_pattern(game, state);
  DeviationProbe probe(game, choice, base);

  for (std::size_t i = 0; i < game.n; ++i) {
    for (const auto& p : paths) {
      if (p == state.paths[i]) continue;
      const auto first = probe.run(i, p.edge_indices, m - 1);
      for (std::size_t node = first + 1; node <= m; ++node) {
        if (probe.arrival(node, i) < base[node][i]) {
          return UfrWitness{i + 1, node, p, probe.arrival(node, i), base[node][i]};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Depth-first search over layers. Arrival at v_j depends only on the edge
// choices of layers 1..j, so the UFR condition at v_j can be decided once
// those layers are fixed; states failing it are pruned with all their
// completions. The result equals filtering every state with
// is_ufr_equilibrium.
class Enumerator {
 public:
  explicit Enumerator(const Game& game)
      : game_(game),
        m_(game.graph.layer_count()),
        choice_(m_, std::vector<std::size_t>(game.n, 1)),
        arrivals_(m_ + 1, std::vector<Time>(game.n, 0)) {
    arrivals_[0] = game.starting_pattern;
    std::vector<std::vector<std::size_t>> prefixes{{}};
    for (std::size_t j = 0; j < m_; ++j) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& p : prefixes) {
        for (std::size_t r = 1; r <= game.graph.layers[j].size(); ++r) {
          auto q = p;
          q.push_back(r);
          next.push_back(std::move(q));
        }
      }
      prefixes = std::move(next);
      prefixes_.push_back(prefixes);
    }
  }

  std::vector<State> run() {
    descend(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  void descend(std::size_t j) {
    if (j == m_) {
      State s;
      for (std::size_t i = 0; i < game_.n; ++i) {
        PathChoice p;
        for (std::size_t l = 0; l < m_; ++l) p.edge_indices.push_back(choice_[l][i]);
        s.paths.push_back(std::move(p));
      }
      found_.push_back(std::move(s));
      return;
    }
    const std::size_t width = game_.graph.layers[j].size();
    auto& row = choice_[j];
    std::fill(row.begin(), row.end(), 1);
    while (true) {
      propagate_layer(game_.graph.layers[j], arrivals_[j], row, arrivals_[j + 1]);
      if (stable_at(j)) descend(j + 1);
      std::size_t i = game_.n;
      while (i-- > 0) {
        if (++row[i] <= width) break;
        row[i] = 1;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }

  bool stable_at(std::size_t j) {
    DeviationProbe probe(game_, choice_, arrivals_);
    for (std::size_t i = 0; i < game_.n; ++i) {
      for (const auto& prefix : prefixes_[j]) {
        const auto first = probe.run(i, prefix, j);
        if (first > j) continue;
        if (probe.arrival(j + 1, i) < arrivals_[j + 1][i]) return false;
      }
    }
    return true;
  }

  const Game& game_;
  std::size_t m_;
  std::vector<std::vector<std::size_t>> choice_;
  std::vector<std::vector<Time>> arrivals_;
  std::vector<std::vector<std::vector<std::size_t>>> prefixes_;
  std::vector<State> found_;
};

}  // namespace

std::vector<State> enumerate_equilibria(const Game& game, std::size_t state_budget) {
  require_valid(game);
  const auto paths = game.graph.path_count();
  std::size_t states = 1;
  for (std::size_t i = 0; i < game.n; ++i) {
    if (paths != 0 && states > state_budget / paths) throw Error("state space exceeds budget");
    states *= paths;
  }
  if (states > state_budget) throw Error("state space exceeds budget");
  return Enumerator(game).run();
}

State worst_equilibrium(const Game& game) { return sequential_equilibrium(game, GreedyQueue{}); }

}  // namespace prg
