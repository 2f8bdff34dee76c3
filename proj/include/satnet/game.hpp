#ifndef SATNET_GAME_HPP
#define SATNET_GAME_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace satnet {

// One action index per player. Entry k lies in [0, |S_k|) once validated
// against a game.
class ActionProfile {
 public:
  ActionProfile() = default;
  explicit ActionProfile(std::vector<std::size_t> actions)
      : actions_(std::move(actions)) {}
  ActionProfile(std::initializer_list<std::size_t> actions)
      : actions_(actions) {}

  std::size_t size() const { return actions_.size(); }
  std::size_t operator[](std::size_t k) const { return actions_[k]; }
  std::size_t& operator[](std::size_t k) { return actions_[k]; }
  std::span<const std::size_t> actions() const { return actions_; }
  auto begin() const { return actions_.begin(); }
  auto end() const { return actions_.end(); }

  // Copy of this profile with player k's action replaced.
  ActionProfile with(std::size_t k, std::size_t action) const;

  // Opponents' actions s_{-k}, in player order.
  std::vector<std::size_t> without(std::size_t k) const;

  std::string to_string() const;

  auto operator<=>(const ActionProfile&) const = default;

 private:
  std::vector<std::size_t> actions_;
};

using ProfileSet = std::set<ActionProfile>;

// u_k(s); must be total over the product of the action sets.
using UtilityFn = std::function<double(std::size_t, const ActionProfile&)>;

// Finite normal-form game with threshold constraints u_k(s) >= Gamma_k.
//
// Immutable after construction. Construction scans every profile and rejects
// games violating 0 <= u_k(s) <= M_k or 0 <= Gamma_k <= M_k, which is what
// keeps the learning gain of the search algorithm inside [0, 1].
class ConstrainedGame {
 public:
  ConstrainedGame(std::vector<std::size_t> action_counts, UtilityFn utility,
                  std::vector<double> thresholds, std::vector<double> caps,
                  std::vector<std::vector<double>> action_values = {});

  // tables[k] is u_k flattened in profile-index order (player 0 most
  // significant, see profile_at).
  static ConstrainedGame from_tables(std::vector<std::size_t> action_counts,
                                     std::vector<std::vector<double>> tables,
                                     std::vector<double> thresholds,
                                     std::vector<double> caps);

  std::size_t num_players() const { return action_counts_.size(); }
  std::size_t action_count(std::size_t k) const;
  const std::vector<std::size_t>& action_counts() const {
    return action_counts_;
  }
  double threshold(std::size_t k) const;
  double cap(std::size_t k) const;
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<double>& caps() const { return caps_; }

  // Physical value attached to an action (transmit power for channel games,
  // the index itself otherwise).
  double action_value(std::size_t k, std::size_t action) const;

  double utility(std::size_t k, const ActionProfile& s) const;

  std::size_t profile_count() const { return profile_count_; }
  ActionProfile profile_at(std::size_t index) const;
  std::size_t index_of(const ActionProfile& s) const;

  // Throws std::invalid_argument unless s has K in-range entries.
  void validate_profile(const ActionProfile& s) const;

  ConstrainedGame with_thresholds(std::vector<double> thresholds) const;

 private:
  void check_player(std::size_t k) const;

  std::vector<std::size_t> action_counts_;
  std::shared_ptr<const UtilityFn> utility_;
  std::vector<double> thresholds_;
  std::vector<double> caps_;
  std::vector<std::vector<double>> action_values_;
  std::size_t profile_count_ = 0;
};

double utility_of(const ConstrainedGame& game, std::size_t k,
                  const ActionProfile& s);

// f_k(s_{-k}) = { a in S_k : u_k(a, s_{-k}) >= Gamma_k }, ascending.
// `opponents` holds the K-1 actions of the other players in player order.
std::vector<std::size_t> feasible_set(const ConstrainedGame& game,
                                      std::size_t k,
                                      std::span<const std::size_t> opponents);

// Same set, reading s_{-k} from a full profile (s_k is ignored).
std::vector<std::size_t> feasible_set_at(const ConstrainedGame& game,
                                         std::size_t k,
                                         const ActionProfile& s);

bool is_satisfied(const ConstrainedGame& game, std::size_t k,
                  const ActionProfile& s);

bool all_satisfied(const ConstrainedGame& game, const ActionProfile& s);

}  // namespace satnet

#endif  // SATNET_GAME_HPP
