#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracle/brute_force.hpp"
#include "satnet/equilibria.hpp"

using namespace satnet;
using satnet::testing::g1_cost;
using satnet::testing::make_g1;
using satnet::testing::make_g2;

namespace {

bool subset(const ProfileSet& inner, const ProfileSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

ConstrainedGame single_player(std::vector<double> utilities, double gamma,
                              double cap) {
  const std::size_t n = utilities.size();
  return ConstrainedGame::from_tables({n}, {std::move(utilities)}, {gamma}, {cap});
}

}  // namespace

TEST_CASE("G1 equilibrium sets") {
  const auto g1 = make_g1();
  CHECK(enumerate_ne(g1) == ProfileSet{{1, 1}});
  CHECK(enumerate_gne(g1) == ProfileSet{{1, 1}});
  CHECK(enumerate_se(g1) == ProfileSet{{0, 0}, {1, 1}});
  CHECK(enumerate_ese(g1, g1_cost()) == ProfileSet{{0, 0}, {1, 1}});
  CHECK(find_clipping_actions(g1) ==
        std::vector<std::vector<std::size_t>>{{1}, {1}});
  CHECK_FALSE(has_blocking_clipping(g1));
}

TEST_CASE("G2 equilibrium sets") {
  const auto g2 = make_g2();
  CHECK(enumerate_se(g2) == ProfileSet{{2, 0}});
  CHECK(find_clipping_actions(g2) ==
        std::vector<std::vector<std::size_t>>{{1}, {}});
  CHECK(has_blocking_clipping(g2));
}

TEST_CASE("single-player games") {
  const auto g = single_player({0.5, 2.0, 2.0, 1.0}, 1.0, 2.0);
  CHECK(enumerate_ne(g) == ProfileSet{{1}, {2}});
  CHECK_FALSE(has_blocking_clipping(g));
}

TEST_CASE("GNE reduces to NE when thresholds are vacuous") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [game, cost] = satnet::testing::random_game(rng);
    const auto relaxed =
        game.with_thresholds(std::vector<double>(game.num_players(), 0.0));
    CHECK(enumerate_gne(relaxed) == enumerate_ne(relaxed));
    CHECK(enumerate_se(relaxed).size() == relaxed.profile_count());
    for (const auto& actions : find_clipping_actions(relaxed))
      CHECK(!actions.empty());
  }
}

TEST_CASE("infeasible game has empty GNE, SE and ESE") {
  // Player 1 never reaches 0.9.
  const auto g = ConstrainedGame::from_tables({2, 2}, {{1, 1, 1, 1}, {0, 0.5, 0.5, 0}},
                                              {0, 0.9}, {1, 1});
  CHECK(enumerate_se(g).empty());
  CHECK(enumerate_gne(g).empty());
  CHECK(enumerate_ese(g, CostModel::uniform_zero(g)).empty());
}

TEST_CASE("uniform cost makes ESE equal SE") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [game, cost] = satnet::testing::random_game(rng);
    std::vector<std::vector<double>> flat;
    for (std::size_t n : game.action_counts()) flat.emplace_back(n, 0.25);
    CHECK(enumerate_ese(game, CostModel(flat)) == enumerate_se(game));
  }
}

TEST_CASE("potential_of sums per-player costs") {
  const auto cost = g1_cost();
  CHECK(potential_of(cost, {0, 0}) == 0.0);
  CHECK(potential_of(cost, {1, 1}) == 2.0);
  CHECK(potential_of(CostModel::uniform_zero(make_g1()), {1, 0}) == 0.0);
}

TEST_CASE("verify_potential_identity") {
  const auto g1 = make_g1();
  const auto cost = g1_cost();
  CHECK(verify_potential_identity(
      g1, cost, [&](const ActionProfile& s) { return potential_of(cost, s); }));
  CHECK(verify_potential_identity(g1, cost, [&](const ActionProfile& s) {
    return potential_of(cost, s) + 7.0;
  }));
  // Ignoring player 1's cost breaks the identity wherever f_1 has two actions,
  // e.g. s_0 = 0 where f_1 = {0, 1}.
  CHECK_FALSE(verify_potential_identity(
      g1, cost, [&](const ActionProfile& s) { return cost.cost(0, s[0]); }));
}

TEST_CASE("cost model validation") {
  CHECK_THROWS_AS(CostModel(std::vector<std::vector<double>>{{0.5, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(CostModel(std::vector<std::vector<double>>{{-0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ese(make_g1(), CostModel(std::vector<std::vector<double>>{{0, 1}})),
                  std::invalid_argument);
}

TEST_CASE("random games: enumerators agree with the oracle and nest") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> scale(0.05, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const auto [game, cost] = satnet::testing::random_game(rng);
    const auto ne = enumerate_ne(game);
    const auto gne = enumerate_gne(game);
    const auto se = enumerate_se(game);
    const auto ese = enumerate_ese(game, cost);

    CHECK(ne == oracle::ne(game));
    CHECK(gne == oracle::gne(game));
    CHECK(se == oracle::se(game));
    CHECK(ese == oracle::ese(game, cost));
    CHECK(find_clipping_actions(game) == oracle::clipping(game));

    CHECK(subset(gne, se));
    CHECK(subset(ese, se));

    // ESE = GNE of the game where players maximize -c_k under the same f_k.
    CHECK(ese == enumerate_gne(game, [&](std::size_t k, const ActionProfile& s) {
            return -cost.cost(k, s[k]);
          }));

    CHECK(verify_potential_identity(game, cost, [&](const ActionProfile& s) {
      return potential_of(cost, s);
    }));

    // Unilateral minimality of the potential over SE neighbours.
    for (const auto& s : ese) {
      for (std::size_t k = 0; k < game.num_players(); ++k) {
        for (std::size_t a = 0; a < game.action_count(k); ++a) {
          const auto t = s.with(k, a);
          if (se.count(t)) CHECK(potential_of(cost, s) <= potential_of(cost, t));
        }
      }
    }

    // Scaling every cost by one factor in (0, 1] keeps the argmins.
    const double factor = scale(rng);
    auto scaled = cost.table();
    for (auto& row : scaled)
      for (double& c : row) c *= factor;
    CHECK(enumerate_ese(game, CostModel(scaled)) == ese);
  }
}

TEST_CASE("run_brd on G1 reaches the dominant profile") {
  const auto g1 = make_g1();
  const auto result = run_brd(g1, {0, 0}, 50);
  CHECK(result.profile == ActionProfile{1, 1});
  CHECK(result.converged);
  CHECK(result.iterations <= 2);
}

TEST_CASE("run_brd started at a GNE stays put") {
  const auto g1 = make_g1();
  const auto result = run_brd(g1, {1, 1}, 50);
  CHECK(result.profile == ActionProfile{1, 1});
  CHECK(result.converged);
  CHECK(result.iterations == 1);
}

TEST_CASE("run_brd on G2 stalls outside the SE set") {
  const auto g2 = make_g2();
  const auto result = run_brd(g2, {1, 0}, 1000);
  CHECK(enumerate_se(g2).count(result.profile) == 0);
  CHECK(result.profile[0] == 1);
}

TEST_CASE("run_brd reports non-convergence on a best-response cycle") {
  // Matching pennies in [0, 1] with vacuous thresholds.
  const auto pennies = ConstrainedGame::from_tables(
      {2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}}, {0, 0}, {1, 1});
  const auto result = run_brd(pennies, {0, 0}, 20);
  CHECK_FALSE(result.converged);
  CHECK(result.iterations == 20);
  CHECK_THROWS_AS(run_brd(pennies, {0, 0}, 0), std::invalid_argument);
}

TEST_CASE("run_brd fixed points with nonempty feasible sets are GNE") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [game, cost] = satnet::testing::random_game(rng);
    const auto gne = enumerate_gne(game);
    const auto result = run_brd(game, game.profile_at(0), 200);
    if (result.converged && all_satisfied(game, result.profile))
      CHECK(gne.count(result.profile) == 1);
    // Deterministic given the start.
    const auto again = run_brd(game, game.profile_at(0), 200);
    CHECK(again.profile == result.profile);
    CHECK(again.iterations == result.iterations);
  }
}

TEST_CASE("analyze bundles every enumerator") {
  const auto report = analyze(make_g2(), CostModel::uniform_zero(make_g2()));
  CHECK(report.se_set == ProfileSet{{2, 0}});
  CHECK(report.ese_set == report.se_set);
  CHECK(report.blocking_clipping);
  CHECK(subset(report.gne_set, report.se_set));
}
