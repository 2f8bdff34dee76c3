#include "satnet/game.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace satnet {

ActionProfile ActionProfile::with(std::size_t k, std::size_t action) const {
  ActionProfile out = *this;
  out.actions_.at(k) = action;
  return out;
}

std::vector<std::size_t> ActionProfile::without(std::size_t k) const {
  std::vector<std::size_t> out;
  out.reserve(actions_.size() - 1);
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    if (j != k) out.push_back(actions_[j]);
  }
  return out;
}

std::string ActionProfile::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < actions_.size(); ++k) {
    if (k) os << ',';
    os << actions_[k];
  }
  os << ')';
  return os.str();
}

ConstrainedGame::ConstrainedGame(
    std::vector<std::size_t> action_counts, UtilityFn utility,
    std::vector<double> thresholds, std::vector<double> caps,
    std::vector<std::vector<double>> action_values)
    : action_counts_(std::move(action_counts)),
      utility_(std::make_shared<const UtilityFn>(std::move(utility))),
      thresholds_(std::move(thresholds)),
      caps_(std::move(caps)),
      action_values_(std::move(action_values)) {
  const std::size_t num = action_counts_.size();
  if (num == 0) throw std::invalid_argument("game needs at least one player");
  if (!*utility_) throw std::invalid_argument("game needs a utility function");
  if (thresholds_.size() != num)
    throw std::invalid_argument("expected one threshold per player");
  if (caps_.size() != num)
    throw std::invalid_argument("expected one utility cap per player");

  profile_count_ = 1;
  for (std::size_t k = 0; k < num; ++k) {
    if (action_counts_[k] == 0)
      throw std::invalid_argument("player " + std::to_string(k) +
                                  " has an empty action set");
    profile_count_ *= action_counts_[k];
    if (!std::isfinite(thresholds_[k]) || !std::isfinite(caps_[k]) ||
        thresholds_[k] < 0.0 || thresholds_[k] > caps_[k])
      throw std::invalid_argument("threshold exceeds utility cap at players[" +
                                  std::to_string(k) + "]");
  }

  if (action_values_.empty()) {
    action_values_.resize(num);
    for (std::size_t k = 0; k < num; ++k) {
      for (std::size_t a = 0; a < action_counts_[k]; ++a)
        action_values_[k].push_back(static_cast<double>(a));
    }
  }
  if (action_values_.size() != num)
    throw std::invalid_argument("expected one action-value list per player");
  for (std::size_t k = 0; k < num; ++k) {
    if (action_values_[k].size() != action_counts_[k])
      throw std::invalid_argument("action values do not match |S_" +
                                  std::to_string(k) + "|");
  }

  for (std::size_t i = 0; i < profile_count_; ++i) {
    const ActionProfile s = profile_at(i);
    for (std::size_t k = 0; k < num; ++k) {
      const double u = (*utility_)(k, s);
      if (!std::isfinite(u) || u < 0.0 || u > caps_[k])
        throw std::invalid_argument(
            "utility of player " + std::to_string(k) + " at profile " +
            s.to_string() + " lies outside [0, cap]");
    }
  }
}

ConstrainedGame ConstrainedGame::from_tables(
    std::vector<std::size_t> action_counts,
    std::vector<std::vector<double>> tables, std::vector<double> thresholds,
    std::vector<double> caps) {
  std::size_t total = 1;
  for (std::size_t n : action_counts) total *= n;
  if (tables.size() != action_counts.size())
    throw std::invalid_argument("expected one utility table per player");
  for (const auto& table : tables) {
    if (table.size() != total)
      throw std::invalid_argument("utility table does not cover every profile");
  }
  auto shared =
      std::make_shared<const std::vector<std::vector<double>>>(std::move(tables));
  std::vector<std::size_t> counts = action_counts;
  UtilityFn fn = [shared, counts](std::size_t k, const ActionProfile& s) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < counts.size(); ++j)
      index = index * counts[j] + s[j];
    return (*shared)[k][index];
  };
  return ConstrainedGame(std::move(action_counts), std::move(fn),
                         std::move(thresholds), std::move(caps));
}

void ConstrainedGame::check_player(std::size_t k) const {
  if (k >= num_players())
    throw std::invalid_argument("player index " + std::to_string(k) +
                                " out of range");
}

std::size_t ConstrainedGame::action_count(std::size_t k) const {
  check_player(k);
  return action_counts_[k];
}

double ConstrainedGame::threshold(std::size_t k) const {
  check_player(k);
  return thresholds_[k];
}

double ConstrainedGame::cap(std::size_t k) const {
  check_player(k);
  return caps_[k];
}

double ConstrainedGame::action_value(std::size_t k, std::size_t action) const {
  check_player(k);
  if (action >= action_counts_[k])
    throw std::invalid_argument("action index " + std::to_string(action) +
                                " out of range for player " +
                                std::to_string(k));
  return action_values_[k][action];
}

double ConstrainedGame::utility(std::size_t k, const ActionProfile& s) const {
  check_player(k);
  validate_profile(s);
  return (*utility_)(k, s);
}

ActionProfile ConstrainedGame::profile_at(std::size_t index) const {
  if (index >= profile_count_)
    throw std::invalid_argument("profile index out of range");
  std::vector<std::size_t> actions(num_players());
  for (std::size_t k = num_players(); k-- > 0;) {
    actions[k] = index % action_counts_[k];
    index /= action_counts_[k];
  }
  return ActionProfile(std::move(actions));
}

std::size_t ConstrainedGame::index_of(const ActionProfile& s) const {
  validate_profile(s);
  std::size_t index = 0;
  for (std::size_t k = 0; k < num_players(); ++k)
    index = index * action_counts_[k] + s[k];
  return index;
}

void ConstrainedGame::validate_profile(const ActionProfile& s) const {
  if (s.size() != num_players())
    throw std::invalid_argument("profile " + s.to_string() + " has " +
                                std::to_string(s.size()) + " entries, expected " +
                                std::to_string(num_players()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] >= action_counts_[k])
      throw std::invalid_argument("action index " + std::to_string(s[k]) +
                                  " out of range for player " +
                                  std::to_string(k));
  }
}

ConstrainedGame ConstrainedGame::with_thresholds(
    std::vector<double> thresholds) const {
  ConstrainedGame copy = *this;
  if (thresholds.size() != num_players())
    throw std::invalid_argument("expected one threshold per player");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!std::isfinite(thresholds[k]) || thresholds[k] < 0.0 ||
        thresholds[k] > caps_[k])
      throw std::invalid_argument("threshold exceeds utility cap at players[" +
                                  std::to_string(k) + "]");
  }
  copy.thresholds_ = std::move(thresholds);
  return copy;
}

double utility_of(const ConstrainedGame& game, std::size_t k,
                  const ActionProfile& s) {
  return game.utility(k, s);
}

std::vector<std::size_t> feasible_set(const ConstrainedGame& game,
                                      std::size_t k,
                                      std::span<const std::size_t> opponents) {
  const std::size_t num = game.num_players();
  if (k >= num)
    throw std::invalid_argument("player index " + std::to_string(k) +
                                " out of range");
  if (opponents.size() + 1 != num)
    throw std::invalid_argument("expected " + std::to_string(num - 1) +
                                " opponent actions");
  std::vector<std::size_t> actions(num);
  for (std::size_t j = 0, o = 0; j < num; ++j) {
    if (j != k) actions[j] = opponents[o++];
  }
  ActionProfile s(std::move(actions));
  game.validate_profile(s);
  return feasible_set_at(game, k, s);
}

std::vector<std::size_t> feasible_set_at(const ConstrainedGame& game,
                                         std::size_t k,
                                         const ActionProfile& s) {
  std::vector<std::size_t> out;
  ActionProfile probe = s;
  const double gamma = game.threshold(k);
  for (std::size_t a = 0; a < game.action_count(k); ++a) {
    probe[k] = a;
    if (game.utility(k, probe) >= gamma) out.push_back(a);
  }
  return out;
}

bool is_satisfied(const ConstrainedGame& game, std::size_t k,
                  const ActionProfile& s) {
  return game.utility(k, s) >= game.threshold(k);
}

bool all_satisfied(const ConstrainedGame& game, const ActionProfile& s) {
  for (std::size_t k = 0; k < game.num_players(); ++k) {
    if (!is_satisfied(game, k, s)) return false;
  }
  return true;
}

}  // namespace satnet
