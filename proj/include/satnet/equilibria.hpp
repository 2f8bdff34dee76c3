#ifndef SATNET_EQUILIBRIA_HPP
#define SATNET_EQUILIBRIA_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "satnet/game.hpp"

namespace satnet {

// Per-player effort c_k : S_k -> [0, 1].
class CostModel {
 public:
  CostModel() = default;
  // costs[k][a] = c_k(a). Throws std::invalid_argument outside [0, 1].
  explicit CostModel(std::vector<std::vector<double>> costs);

  // All-zero effort, which makes every SE efficient.
  static CostModel uniform_zero(const ConstrainedGame& game);

  std::size_t num_players() const { return costs_.size(); }
  double cost(std::size_t k, std::size_t action) const;
  const std::vector<std::vector<double>>& table() const { return costs_; }

  // Throws unless the model has exactly |S_k| entries for every player.
  void check_matches(const ConstrainedGame& game) const;

 private:
  std::vector<std::vector<double>> costs_;
};

// Objective a player maximizes, evaluated at a full profile.
using ObjectiveFn = std::function<double(std::size_t, const ActionProfile&)>;
using PotentialFn = std::function<double(const ActionProfile&)>;

ProfileSet enumerate_ne(const ConstrainedGame& game);
ProfileSet enumerate_gne(const ConstrainedGame& game);

// GNE of the game in which player k maximizes `objective` subject to the
// constraints f_k of `game`. With objective = -c_k this is the efficient SE
// set of `game`.
ProfileSet enumerate_gne(const ConstrainedGame& game,
                         const ObjectiveFn& objective);

ProfileSet enumerate_se(const ConstrainedGame& game);

// SE profiles where every player's action minimizes its cost over f_k(s_{-k}).
// Cost ties are all kept.
ProfileSet enumerate_ese(const ConstrainedGame& game, const CostModel& cost);

// phi(s) = sum_k c_k(s_k).
double potential_of(const CostModel& cost, const ActionProfile& s);

// True iff c_k(a, s_{-k}) - c_k(b, s_{-k}) == phi(a, s_{-k}) - phi(b, s_{-k})
// for every player, every s_{-k} and every pair a, b in f_k(s_{-k}).
// Comparison is exact.
bool verify_potential_identity(const ConstrainedGame& game,
                               const CostModel& cost, const PotentialFn& phi);

// Actions in f_k(s_{-k}) for every s_{-k}, per player.
std::vector<std::vector<std::size_t>> find_clipping_actions(
    const ConstrainedGame& game);

// Some player k has a clipping action that leaves another player j with an
// empty feasible set whatever the remaining players do.
bool has_blocking_clipping(const ConstrainedGame& game);

struct BrdResult {
  ActionProfile profile;
  bool converged = false;
  std::size_t iterations = 0;  // rounds executed
};

// Round-robin best-response dynamics. Each player best-responds within
// f_k(s_{-k}) (unrestricted when it is empty), keeps its action when that
// action is already a best response, and otherwise moves to the lowest-index
// best response. Converged means a whole round changed nothing.
BrdResult run_brd(const ConstrainedGame& game, const ActionProfile& start,
                  std::size_t max_iters);

struct EquilibriumReport {
  ProfileSet ne_set;
  ProfileSet gne_set;
  ProfileSet se_set;
  ProfileSet ese_set;
  std::vector<std::vector<std::size_t>> clipping;
  bool blocking_clipping = false;
};

EquilibriumReport analyze(const ConstrainedGame& game, const CostModel& cost);

}  // namespace satnet

#endif  // SATNET_EQUILIBRIA_HPP
