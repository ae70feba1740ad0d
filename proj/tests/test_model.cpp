#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "prg/instances.hpp"
#include "prg/io.hpp"
#include "prg/model.hpp"

using namespace prg;

namespace {

bool has_message(const std::vector<Violation>& vs, const std::string& text) {
  for (const auto& v : vs) {
    if (v.message.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate_game") {
  CHECK(validate_game(fixtures::two_layer()).empty());

  const auto unsorted = make_game(make_graph_unsorted({{2, 1}}), 1);
  const auto vs = validate_game(unsorted);
  REQUIRE_FALSE(vs.empty());
  CHECK(has_message(vs, "layer 1 not sorted"));
  CHECK_THROWS_AS(require_valid(unsorted), Error);

  const auto backwards = make_game(make_graph({{1}}), 2, {1, 0});
  CHECK(has_message(validate_game(backwards), "starting pattern not non-decreasing"));

  CHECK_FALSE(validate_game(make_game(make_graph({{0}}), 1)).empty());
  CHECK_FALSE(validate_game(make_game(make_graph({{1}}, {{0}}), 1)).empty());
  CHECK_FALSE(validate_game(make_game(make_graph({{1}}), 1, {-1})).empty());
}

TEST_CASE("validate_state") {
  const auto g = fixtures::two_layer();
  CHECK(validate_state(g, fixtures::two_layer_state()).empty());
  CHECK_FALSE(validate_state(g, State{{{{1, 1}}, {{2, 1}}}}).empty());
  CHECK_FALSE(validate_state(g, State{{{{1, 1}}, {{3, 1}}, {{1, 1}}}}).empty());
  CHECK_FALSE(validate_state(g, State{{{{1}}, {{2, 1}}, {{1, 1}}}}).empty());
}

TEST_CASE("make_graph sorts stably and records input order") {
  const auto g = make_graph({{3, 1, 3, 2}});
  REQUIRE(g.layers[0].size() == 4);
  CHECK(g.layers[0][0].transit == 1);
  CHECK(g.layers[0][1].transit == 2);
  CHECK(g.layers[0][2].transit == 3);
  CHECK(g.layers[0][3].transit == 3);
  CHECK(g.input_order[0] == std::vector<std::size_t>{2, 4, 1, 3});
  for (std::size_t r = 0; r < 4; ++r) CHECK(g.layers[0][r].index_in_layer == r + 1);
}

TEST_CASE("path_length") {
  const auto g = fixtures::two_layer().graph;
  CHECK(path_length(g, PathChoice{{1, 1}}) == 3);
  CHECK(path_length(g, PathChoice{{2, 1}}) == 4);
  CHECK(path_length(fixtures::gamma1().graph, PathChoice{{1, 3}}) == 4);
  CHECK_THROWS_AS(path_length(g, PathChoice{{1, 2}}), Error);
}

TEST_CASE("kth_cheapest_path") {
  const auto g = fixtures::two_layer().graph;
  CHECK(kth_cheapest_path(g, 1) == PathChoice{{1, 1}});
  CHECK_THROWS_WITH_AS(kth_cheapest_path(g, 2), doctest::Contains("decomposition exhausted"), Error);

  const auto g2 = gen_lower_bound_game(2).graph;
  const auto p6 = kth_cheapest_path(g2, 6);
  CHECK(p6 == PathChoice{{6, 6, 6, 6}});
  CHECK(path_length(g2, p6) == 1 + 26 + 38 + 62);
}

TEST_CASE("kth_cheapest_path properties on fuzzed graphs") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    const auto g = oracle::random_game(rng, {}).graph;
    std::size_t k = g.layers[0].size();
    for (const auto& l : g.layers) k = std::min(k, l.size());
    for (std::size_t j = 1; j < k; ++j) {
      CHECK(path_length(g, kth_cheapest_path(g, j)) <= path_length(g, kth_cheapest_path(g, j + 1)));
    }
    Time best = -1;
    oracle::for_each_path(g, [&](const PathChoice& p) {
      const auto len = path_length(g, p);
      if (best < 0 || len < best) best = len;
    });
    CHECK(path_length(g, kth_cheapest_path(g, 1)) == best);
  }
}

TEST_CASE("all_paths") {
  const auto g = fixtures::detour().graph;
  const auto ps = all_paths(g, 100);
  REQUIRE(ps.size() == 8);
  CHECK(ps.front() == PathChoice{{1, 1, 1}});
  CHECK(ps[1] == PathChoice{{1, 2, 1}});
  CHECK(ps.back() == PathChoice{{4, 2, 1}});
  CHECK(std::is_sorted(ps.begin(), ps.end()));
  CHECK_THROWS_WITH_AS(all_paths(g, 7), doctest::Contains("instance too large"), Error);
  CHECK(g.path_count() == 8);
}

TEST_CASE("json round trip is exact") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    oracle::FuzzShape shape;
    shape.max_capacity = 3;
    shape.max_start = 4;
    const auto g = oracle::random_game(rng, shape);
    const auto j = game_to_json(g);
    const auto back = game_from_json(j);
    CHECK(back == g);
    CHECK(game_to_json(back).dump() == j.dump());

    const auto s = oracle::random_state(rng, g);
    CHECK(state_from_json(state_to_json(s, g), g) == s);
  }
}

TEST_CASE("state indices refer to input order") {
  const auto g = game_from_json(nlohmann::json::parse(R"({"layers": [[2, 1]], "n": 1})"));
  const auto s = state_from_json(nlohmann::json::parse(R"({"paths": [[2]]})"), g);
  CHECK(s.paths[0].edge_indices[0] == 1);
  CHECK(g.graph.layers[0][0].transit == 1);
}

TEST_CASE("game_from_json rejects malformed input") {
  using nlohmann::json;
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[1]]})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[1]], "n": 1, "extra": 0})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[1.5]], "n": 1})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[1]], "n": 2, "starting_pattern": [0]})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[1]], "n": 0})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [[]], "n": 1})")), Error);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"layers": [], "n": 1})")), Error);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"paths": [[3]]})"),
                                  game_from_json(json::parse(R"({"layers": [[1, 2]], "n": 1})"))),
                  Error);
}
