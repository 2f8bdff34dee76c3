#include "satnet/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace satnet {

CostModel::CostModel(std::vector<std::vector<double>> costs)
    : costs_(std::move(costs)) {
  for (std::size_t k = 0; k < costs_.size(); ++k) {
    for (double c : costs_[k]) {
      if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument("cost of player " + std::to_string(k) +
                                    " lies outside [0, 1]");
    }
  }
}

CostModel CostModel::uniform_zero(const ConstrainedGame& game) {
  std::vector<std::vector<double>> costs;
  for (std::size_t n : game.action_counts()) costs.emplace_back(n, 0.0);
  return CostModel(std::move(costs));
}

double CostModel::cost(std::size_t k, std::size_t action) const {
  if (k >= costs_.size() || action >= costs_[k].size())
    throw std::invalid_argument("cost lookup out of range");
  return costs_[k][action];
}

void CostModel::check_matches(const ConstrainedGame& game) const {
  if (costs_.size() != game.num_players())
    throw std::invalid_argument("cost model has " +
                                std::to_string(costs_.size()) +
                                " players, game has " +
                                std::to_string(game.num_players()));
  for (std::size_t k = 0; k < costs_.size(); ++k) {
    if (costs_[k].size() != game.action_count(k))
      throw std::invalid_argument("cost model does not cover S_" +
                                  std::to_string(k));
  }
}

namespace {

template <class Pred>
ProfileSet collect(const ConstrainedGame& game, Pred&& keep) {
  ProfileSet out;
  for (std::size_t i = 0; i < game.profile_count(); ++i) {
    ActionProfile s = game.profile_at(i);
    if (keep(s)) out.insert(std::move(s));
  }
  return out;
}

// Largest value of `value(a)` over the listed actions.
template <class Value>
double best_over(const std::vector<std::size_t>& actions, Value&& value) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a : actions) best = std::max(best, value(a));
  return best;
}

std::vector<std::size_t> all_actions(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t a = 0; a < n; ++a) out[a] = a;
  return out;
}

}  // namespace

ProfileSet enumerate_ne(const ConstrainedGame& game) {
  return collect(game, [&](const ActionProfile& s) {
    for (std::size_t k = 0; k < game.num_players(); ++k) {
      const double here = game.utility(k, s);
      for (std::size_t a = 0; a < game.action_count(k); ++a) {
        if (game.utility(k, s.with(k, a)) > here) return false;
      }
    }
    return true;
  });
}

ProfileSet enumerate_gne(const ConstrainedGame& game,
                         const ObjectiveFn& objective) {
  return collect(game, [&](const ActionProfile& s) {
    for (std::size_t k = 0; k < game.num_players(); ++k) {
      const auto feasible = feasible_set_at(game, k, s);
      if (!std::binary_search(feasible.begin(), feasible.end(), s[k]))
        return false;
      const double here = objective(k, s);
      for (std::size_t a : feasible) {
        if (objective(k, s.with(k, a)) > here) return false;
      }
    }
    return true;
  });
}

ProfileSet enumerate_gne(const ConstrainedGame& game) {
  return enumerate_gne(game, [&game](std::size_t k, const ActionProfile& s) {
    return game.utility(k, s);
  });
}

ProfileSet enumerate_se(const ConstrainedGame& game) {
  return collect(game,
                 [&](const ActionProfile& s) { return all_satisfied(game, s); });
}

ProfileSet enumerate_ese(const ConstrainedGame& game, const CostModel& cost) {
  cost.check_matches(game);
  ProfileSet out;
  for (const ActionProfile& s : enumerate_se(game)) {
    bool efficient = true;
    for (std::size_t k = 0; k < game.num_players() && efficient; ++k) {
      const auto feasible = feasible_set_at(game, k, s);
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t a : feasible) lowest = std::min(lowest, cost.cost(k, a));
      efficient = cost.cost(k, s[k]) == lowest;
    }
    if (efficient) out.insert(s);
  }
  return out;
}

double potential_of(const CostModel& cost, const ActionProfile& s) {
  if (s.size() != cost.num_players())
    throw std::invalid_argument("profile length does not match cost model");
  double phi = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) phi += cost.cost(k, s[k]);
  return phi;
}

bool verify_potential_identity(const ConstrainedGame& game,
                               const CostModel& cost, const PotentialFn& phi) {
  cost.check_matches(game);
  for (std::size_t k = 0; k < game.num_players(); ++k) {
    // Visit each s_{-k} once: profiles with s_k = 0 enumerate them.
    for (std::size_t i = 0; i < game.profile_count(); ++i) {
      const ActionProfile s = game.profile_at(i);
      if (s[k] != 0) continue;
      const auto feasible = feasible_set_at(game, k, s);
      for (std::size_t a : feasible) {
        for (std::size_t b : feasible) {
          const double lhs = cost.cost(k, a) - cost.cost(k, b);
          const double rhs = phi(s.with(k, a)) - phi(s.with(k, b));
          if (lhs != rhs) return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> find_clipping_actions(
    const ConstrainedGame& game) {
  const std::size_t num = game.num_players();
  std::vector<std::vector<bool>> survives(num);
  for (std::size_t k = 0; k < num; ++k)
    survives[k].assign(game.action_count(k), true);
  for (std::size_t i = 0; i < game.profile_count(); ++i) {
    const ActionProfile s = game.profile_at(i);
    for (std::size_t k = 0; k < num; ++k) {
      if (survives[k][s[k]] && !is_satisfied(game, k, s))
        survives[k][s[k]] = false;
    }
  }
  std::vector<std::vector<std::size_t>> out(num);
  for (std::size_t k = 0; k < num; ++k) {
    for (std::size_t a = 0; a < survives[k].size(); ++a) {
      if (survives[k][a]) out[k].push_back(a);
    }
  }
  return out;
}

bool has_blocking_clipping(const ConstrainedGame& game) {
  const std::size_t num = game.num_players();
  const auto clipping = find_clipping_actions(game);
  for (std::size_t k = 0; k < num; ++k) {
    for (std::size_t action : clipping[k]) {
      for (std::size_t j = 0; j < num; ++j) {
        if (j == k) continue;
        // f_j is empty for every s_{-{j,k}} iff player j is unsatisfied at
        // every profile where k plays `action`.
        bool blocked = true;
        for (std::size_t i = 0; i < game.profile_count() && blocked; ++i) {
          const ActionProfile s = game.profile_at(i);
          if (s[k] == action && is_satisfied(game, j, s)) blocked = false;
        }
        if (blocked) return true;
      }
    }
  }
  return false;
}

BrdResult run_brd(const ConstrainedGame& game, const ActionProfile& start,
                  std::size_t max_iters) {
  if (max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
  game.validate_profile(start);
  BrdResult result{start, false, 0};
  ActionProfile& s = result.profile;
  for (std::size_t round = 1; round <= max_iters; ++round) {
    bool changed = false;
    for (std::size_t k = 0; k < game.num_players(); ++k) {
      auto candidates = feasible_set_at(game, k, s);
      if (candidates.empty()) candidates = all_actions(game.action_count(k));
      const double best = best_over(candidates, [&](std::size_t a) {
        return game.utility(k, s.with(k, a));
      });
      const bool stays =
          std::binary_search(candidates.begin(), candidates.end(), s[k]) &&
          game.utility(k, s) == best;
      if (stays) continue;
      for (std::size_t a : candidates) {
        if (game.utility(k, s.with(k, a)) == best) {
          s[k] = a;
          changed = true;
          break;
        }
      }
    }
    result.iterations = round;
    if (!changed) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

EquilibriumReport analyze(const ConstrainedGame& game, const CostModel& cost) {
  EquilibriumReport report;
  report.ne_set = enumerate_ne(game);
  report.gne_set = enumerate_gne(game);
  report.se_set = enumerate_se(game);
  report.ese_set = enumerate_ese(game, cost);
  report.clipping = find_clipping_actions(game);
  report.blocking_clipping = has_blocking_clipping(game);
  return report;
}

}  // namespace satnet
