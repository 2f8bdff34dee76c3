#ifndef SATNET_TESTS_FIXTURES_HPP
#define SATNET_TESTS_FIXTURES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "satnet/equilibria.hpp"
#include "satnet/game.hpp"

namespace satnet::testing {

// G1: 2x2, Gamma = (1, 1), M = (2, 2). Rows indexed by player 0's action.
//   u_0 = [[1, 0], [2, 1]]   u_1 = [[1, 2], [0, 1]]
inline ConstrainedGame make_g1() {
  return ConstrainedGame::from_tables({2, 2}, {{1, 0, 2, 1}, {1, 2, 0, 1}},
                                      {1, 1}, {2, 2});
}

// c_k(a) = a for both players.
inline CostModel g1_cost() { return CostModel({{0, 1}, {0, 1}}); }

// G2: 3x2, Gamma = (1, 1), M = (1, 1). Player 0's action 1 is clipping and
// leaves player 1 unsatisfiable.
//   u_0 = [[0, 0], [1, 1], [1, 0]]   u_1 = [[0, 0], [0, 0], [1, 0]]
inline ConstrainedGame make_g2() {
  return ConstrainedGame::from_tables({3, 2},
                                      {{0, 0, 1, 1, 1, 0}, {0, 0, 0, 0, 1, 0}},
                                      {1, 1}, {1, 1});
}

struct RandomGame {
  ConstrainedGame game;
  CostModel cost;
};

struct RandomGameOptions {
  std::size_t min_players = 1;
  std::size_t max_players = 3;
  std::size_t max_actions = 6;
};

// Utilities uniform in [0, M_k], thresholds uniform in [0, M_k]. Half of the
// games put utilities on a coarse grid so that ties and exact threshold hits
// occur. Costs are multiples of 1/64 so that potential differences are exact.
inline RandomGame random_game(std::mt19937_64& rng,
                              const RandomGameOptions& options = {}) {
  std::uniform_int_distribution<std::size_t> players(options.min_players,
                                                     options.max_players);
  std::uniform_int_distribution<std::size_t> actions(1, options.max_actions);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> cost_grid(0, 64);

  const std::size_t num = players(rng);
  const bool coarse = unit(rng) < 0.5;
  std::vector<std::size_t> counts(num);
  std::vector<double> caps(num), thresholds(num);
  std::size_t total = 1;
  for (std::size_t k = 0; k < num; ++k) {
    counts[k] = actions(rng);
    total *= counts[k];
    caps[k] = 0.5 + 4.5 * unit(rng);
  }
  std::uniform_int_distribution<int> quarter(0, 4);
  auto draw = [&](double cap) {
    return coarse ? cap * (quarter(rng) / 4.0) : cap * unit(rng);
  };
  std::vector<std::vector<double>> tables(num, std::vector<double>(total));
  for (std::size_t k = 0; k < num; ++k) {
    for (double& u : tables[k]) u = draw(caps[k]);
    thresholds[k] = draw(caps[k]);
  }
  std::vector<std::vector<double>> costs(num);
  for (std::size_t k = 0; k < num; ++k) {
    for (std::size_t a = 0; a < counts[k]; ++a)
      costs[k].push_back(cost_grid(rng) / 64.0);
  }
  return {ConstrainedGame::from_tables(counts, std::move(tables),
                                       std::move(thresholds), std::move(caps)),
          CostModel(std::move(costs))};
}

}  // namespace satnet::testing

#endif  // SATNET_TESTS_FIXTURES_HPP
