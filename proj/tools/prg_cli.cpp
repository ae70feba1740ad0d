#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "prg/equilibria.hpp"
#include "prg/extensions.hpp"
#include "prg/instances.hpp"
#include "prg/io.hpp"
#include "prg/loading.hpp"
#include "prg/model.hpp"
#include "prg/optimum.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
  std::string game_file;
  std::string state_file;
  std::string format;  // empty: per-command default
  std::string policy = "greedy-queue";
  std::optional<std::uint64_t> seed;
  std::string mode = "simulate";
  std::optional<std::int64_t> i;
  std::string i_range;
  std::size_t path_budget = prg::kDefaultPathBudget;
  std::size_t state_budget = prg::kDefaultStateBudget;
  std::int64_t simulation_cap = prg::kDefaultSimulationCap;
  std::string trace_file;
  bool check = false;
  std::string emit_game;
};

std::string decimal(const prg::Rational& r, int digits = 12) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << prg::to_double(r);
  return out.str();
}

prg::Game read_game(const RunConfig& cfg) { return prg::game_from_json(prg::read_json_file(cfg.game_file)); }

prg::State read_state(const RunConfig& cfg, const prg::Game& game) {
  auto state = prg::state_from_json(prg::read_json_file(cfg.state_file), game);
  prg::require_valid(game, state);
  return state;
}

prg::TieBreakPolicy policy_of(const RunConfig& cfg) {
  if (cfg.policy == "seeded") return prg::Seeded{cfg.seed.value_or(0)};
  if (cfg.seed && cfg.policy.rfind("seeded", 0) != 0) throw prg::Error("--seed applies only to the seeded policy");
  return prg::parse_policy(cfg.policy);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json witness_json(const prg::UfrWitness& w, const prg::Game& game) {
  json path = json::array();
  for (std::size_t l = 0; l < w.deviation.edge_indices.size(); ++l) {
    path.push_back(prg::to_input_index(game.graph, l + 1, w.deviation.edge_indices[l]));
  }
  return {{"player", w.player},
          {"node", w.node},
          {"deviation", path},
          {"improved_arrival", w.improved_arrival},
          {"original_arrival", w.original_arrival}};
}

void write_trace(std::ostream& out, const prg::Game& game, const prg::LoadingResult& r) {
  out << "time,edge,event,player\n";
  for (const auto& ev : r.events) {
    out << ev.time << ',' << ev.layer << ':' << prg::to_input_index(game.graph, ev.layer, ev.index) << ','
        << prg::to_string(ev.kind) << ',' << ev.player << '\n';
  }
}

int cmd_load(const RunConfig& cfg, bool want_trace) {
  const auto game = read_game(cfg);
  const auto state = read_state(cfg, game);
  prg::LoadOptions opts;
  opts.record_events = want_trace;
  const auto r = prg::load(game, state, opts);

  if (cfg.format == "csv") {
    std::cout << "player";
    for (std::size_t j = 0; j <= r.layers; ++j) std::cout << ",a_v" << j;
    std::cout << ",completion\n";
    for (std::size_t p = 0; p < r.n; ++p) {
      std::cout << p + 1;
      for (std::size_t j = 0; j <= r.layers; ++j) std::cout << ',' << r.arrivals[j][p];
      std::cout << ',' << r.completions[p] << '\n';
    }
  } else {
    print({{"arrivals", r.arrivals},
           {"completions", r.completions},
           {"makespan", r.makespan},
           {"waiting", r.waiting},
           {"latency", r.latency}});
  }
  if (want_trace) {
    if (cfg.trace_file.empty()) {
      write_trace(std::cout, game, r);
    } else {
      std::ofstream out(cfg.trace_file);
      if (!out) throw prg::Error("cannot write " + cfg.trace_file);
      write_trace(out, game, r);
    }
  }
  return kExitOk;
}

int cmd_eq(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto policy = policy_of(cfg);
  const auto state = prg::sequential_equilibrium(game, policy);
  const auto r = prg::load(game, state);
  auto out = prg::state_to_json(state, game);
  out["policy"] = prg::to_string(policy);
  out["completions"] = r.completions;
  out["makespan"] = r.makespan;
  print(out);
  return kExitOk;
}

int cmd_opt(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto plan = prg::optimal_state(game);
  const auto cert = prg::optimality_certificate(plan, game);
  json paths = json::array();
  for (const auto& p : plan.paths) {
    json row = json::array();
    for (std::size_t l = 0; l < p.edge_indices.size(); ++l) {
      row.push_back(prg::to_input_index(game.graph, l + 1, p.edge_indices[l]));
    }
    paths.push_back(row);
  }
  print({{"horizon", plan.horizon},
         {"paths", paths},
         {"counts", plan.counts},
         {"deltas", plan.deltas},
         {"state", prg::state_to_json(plan.state, game)["paths"]},
         {"certificate", cert ? json(*cert) : json("verified")}});
  return cert ? kExitViolation : kExitOk;
}

int cmd_poa(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto eq = prg::worst_equilibrium(game);
  const auto worst = prg::load(game, eq).makespan;
  const auto opt = game.graph.unit_capacities() ? prg::min_horizon(game)
                                                : prg::min_horizon(prg::split_capacities(game).game);
  const prg::Rational ratio = prg::Rational(prg::BigInt(worst)) / prg::BigInt(opt);
  print({{"worst_eq_makespan", worst},
         {"opt_horizon", opt},
         {"ratio", prg::to_string(ratio)},
         {"ratio_decimal", prg::to_double(ratio)}});
  return kExitOk;
}

std::pair<std::int64_t, std::int64_t> parse_range(const RunConfig& cfg) {
  if (cfg.i) return {*cfg.i, *cfg.i};
  if (cfg.i_range.empty()) throw prg::Error("lowerbound needs --i or --i-range");
  const auto dots = cfg.i_range.find("..");
  if (dots == std::string::npos) throw prg::Error("--i-range expects a..b");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const auto a_str = cfg.i_range.substr(0, dots);
    const auto b_str = cfg.i_range.substr(dots + 2);
    const auto a = std::stoll(a_str, &used_a);
    const auto b = std::stoll(b_str, &used_b);
    if (used_a != a_str.size() || used_b != b_str.size() || a < 1 || a > b) throw prg::Error("");
    return {a, b};
  } catch (const std::exception&) {
    throw prg::Error("--i-range expects 1 <= a <= b, got '" + cfg.i_range + "'");
  }
}

int cmd_lowerbound(const RunConfig& cfg) {
  const auto [a, b] = parse_range(cfg);
  prg::RatioMode mode;
  if (cfg.mode == "simulate") {
    mode = prg::RatioMode::Simulate;
  } else if (cfg.mode == "analytic") {
    mode = prg::RatioMode::Analytic;
  } else {
    throw prg::Error("unknown mode '" + cfg.mode + "'");
  }

  if (!cfg.emit_game.empty()) {
    if (a != b) throw prg::Error("--emit-game needs a single --i");
    std::ofstream out(cfg.emit_game);
    if (!out) throw prg::Error("cannot write " + cfg.emit_game);
    out << prg::game_to_json(prg::gen_lower_bound_game(a, cfg.simulation_cap)).dump() << "\n";
  }

  const bool csv = cfg.format != "json";
  json rows = json::array();
  if (csv) {
    std::cout << "i,k,l,n,eq_makespan,eq_source,opt_horizon,ratio_exact,ratio_decimal,limit_bound\n";
  }
  for (std::int64_t i = a; i <= b; ++i) {
    const auto r = prg::pos_report(i, mode, cfg.simulation_cap);
    const auto lb = prg::limit_bound(i);
    const std::string source = r.simulated ? "sim" : "formula";
    if (csv) {
      std::cout << i << ',' << r.params.k << ',' << r.params.l << ',' << r.params.n.str() << ','
                << r.eq_makespan.str() << ',' << source << ',' << r.opt_horizon.str() << ','
                << prg::to_string(r.ratio) << ',' << decimal(r.ratio) << ',' << decimal(lb) << '\n';
    } else {
      rows.push_back({{"i", i},
                      {"k", r.params.k},
                      {"l", r.params.l},
                      {"n", r.params.n.str()},
                      {"eq_makespan", r.eq_makespan.str()},
                      {"eq_source", source},
                      {"opt_horizon", r.opt_horizon.str()},
                      {"ratio_exact", prg::to_string(r.ratio)},
                      {"ratio_decimal", prg::to_double(r.ratio)},
                      {"limit_bound", prg::to_double(lb)}});
    }
  }
  if (!csv) print(rows);
  return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto all = prg::enumerate_equilibria(game, cfg.state_budget);
  json list = json::array();
  for (const auto& s : all) {
    auto entry = prg::state_to_json(s, game);
    entry["makespan"] = prg::load(game, s).makespan;
    list.push_back(entry);
  }
  print({{"count", all.size()}, {"equilibria", list}});
  return kExitOk;
}

int cmd_check_ufr(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto state = read_state(cfg, game);
  const auto w = prg::is_ufr_equilibrium(game, state, cfg.path_budget);
  if (!w) {
    print({{"equilibrium", true}});
    return kExitOk;
  }
  print({{"equilibrium", false}, {"witness", witness_json(*w, game)}});
  return kExitViolation;
}

int cmd_flow(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto state = read_state(cfg, game);
  const auto r = prg::load(game, state);
  const auto flow = prg::state_to_flow(game, r);
  auto out = prg::flow_to_json(game, flow);
  int code = kExitOk;
  if (cfg.check) {
    const auto verdict = prg::check_flow_feasible(game.graph, flow, static_cast<std::int64_t>(game.n));
    out["feasible"] = !verdict;
    if (verdict) {
      out["violation"] = *verdict;
      code = kExitViolation;
    }
  }
  print(out);
  return code;
}

int cmd_split(const RunConfig& cfg) {
  const auto game = read_game(cfg);
  const auto split = prg::split_capacities(game);
  json out{{"game", prg::game_to_json(split.game)}};
  json mapping = json::array();
  for (std::size_t j = 0; j < game.graph.layer_count(); ++j) {
    json row = json::array();
    for (std::size_t r = 0; r < game.graph.layers[j].size(); ++r) {
      json e = {{"layer", j + 1}, {"index", prg::to_input_index(game.graph, j + 1, r + 1)}};
      e["copies"] = split.mapping.copies[j][r];
      row.push_back(e);
    }
    mapping.push_back(row);
  }
  out["mapping"] = mapping;
  if (!cfg.state_file.empty()) {
    const auto state = read_state(cfg, game);
    const auto r = prg::load(game, state);
    const auto mapped = prg::map_state_to_split(game, state, r, split.mapping);
    out["state"] = prg::state_to_json(mapped, split.game);
  }
  print(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet routing games on linear multigraphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_game = [&](CLI::App* sub) { sub->add_option("game", cfg.game_file, "Game JSON file")->required(); };
  auto add_state = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("state", cfg.state_file, "State JSON file");
    if (required) o->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* load = app.add_subcommand("load", "Run network loading on a state");
  add_game(load);
  add_state(load, true);
  add_format(load);
  auto* trace = load->add_option("--trace", cfg.trace_file, "Event CSV (to FILE, or stdout)")->expected(0, 1);

  auto* eq = app.add_subcommand("eq", "Construct a sequential UFR equilibrium");
  add_game(eq);
  eq->add_option("--policy", cfg.policy, "greedy-queue | lowest-index | shortest-queue | seeded[:<u64>]");
  eq->add_option("--seed", cfg.seed, "Seed for the seeded policy");

  auto* opt = app.add_subcommand("opt", "Optimal state with certificate");
  add_game(opt);

  auto* poa = app.add_subcommand("poa", "Worst equilibrium makespan against the optimum");
  add_game(poa);

  auto* lb = app.add_subcommand("lowerbound", "Lower-bound family ratios");
  lb->add_option("--i", cfg.i, "Family index")->check(CLI::PositiveNumber);
  lb->add_option("--i-range", cfg.i_range, "Index range a..b");
  lb->add_option("--mode", cfg.mode, "simulate | analytic")->check(CLI::IsMember({"simulate", "analytic"}));
  lb->add_option("--simulation-cap", cfg.simulation_cap, "Largest n simulated")->check(CLI::PositiveNumber);
  lb->add_option("--emit-game", cfg.emit_game, "Write the generated game JSON to FILE");
  add_format(lb);

  auto* en = app.add_subcommand("enumerate", "All UFR equilibria of a small game");
  add_game(en);
  en->add_option("--state-budget", cfg.state_budget, "Largest |paths|^n explored")->check(CLI::PositiveNumber);

  auto* ufr = app.add_subcommand("check-ufr", "Check a state for UFR deviations");
  add_game(ufr);
  add_state(ufr, true);
  ufr->add_option("--path-budget", cfg.path_budget, "Largest number of paths")->check(CLI::PositiveNumber);

  auto* flow = app.add_subcommand("flow", "Embed a state as a flow over time");
  add_game(flow);
  add_state(flow, true);
  flow->add_flag("--check", cfg.check, "Verify feasibility and |f| = n");

  auto* split = app.add_subcommand("split", "Split capacities into unit-capacity copies");
  add_game(split);
  add_state(split, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (app.got_subcommand(load)) return cmd_load(cfg, trace->count() > 0);
    if (app.got_subcommand(eq)) return cmd_eq(cfg);
    if (app.got_subcommand(opt)) return cmd_opt(cfg);
    if (app.got_subcommand(poa)) return cmd_poa(cfg);
    if (app.got_subcommand(lb)) return cmd_lowerbound(cfg);
    if (app.got_subcommand(en)) return cmd_enumerate(cfg);
    if (app.got_subcommand(ufr)) return cmd_check_ufr(cfg);
    if (app.got_subcommand(flow)) return cmd_flow(cfg);
    if (app.got_subcommand(split)) return cmd_split(cfg);
  } catch (const prg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
