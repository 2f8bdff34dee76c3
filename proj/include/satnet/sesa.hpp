#ifndef SATNET_SESA_HPP
#define SATNET_SESA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "satnet/game.hpp"
#include "satnet/random.hpp"

namespace satnet {

using Distribution = std::vector<double>;

struct SesaState {
  std::size_t t = 0;
  std::vector<Distribution> distributions;  // pi_k over S_k
  ActionProfile current_actions;
  std::vector<double> last_utilities;       // most recent observation per player
  std::vector<bool> satisfied;

  bool all_satisfied() const;
  bool operator==(const SesaState&) const = default;
};

struct TraceStep {
  std::size_t t = 0;
  ActionProfile profile;
  std::vector<double> utilities;
  std::vector<bool> satisfied;
};

struct SesaTrace {
  std::vector<TraceStep> steps;  // empty when recording is off
  std::optional<std::size_t> converged_at;
  SesaState final_state;
};

struct SesaOptions {
  // Per-player pi_k(0); uniform when absent.
  std::optional<std::vector<Distribution>> initial_distributions;
  // Constant learning rate replacing 1/(t+1).
  std::optional<double> learning_rate;
  // Steps recorded after convergence.
  std::size_t tail = 0;
  bool record_steps = true;
};

// Draws s_k(0) ~ pi_k(0) for every player in order and observes u_k at the
// drawn profile. Throws std::invalid_argument on a malformed distribution.
SesaState sesa_init(const ConstrainedGame& game,
                    const std::optional<std::vector<Distribution>>& initial,
                    Rng& rng);

// b = (M_k + u_hat - Gamma_k) / (2 M_k), in [0, 1] when 0 <= u_hat <= M_k.
double normalized_gain(const ConstrainedGame& game, std::size_t k,
                       double u_hat);

// pi_n + lambda * b * (1{n == played} - pi_n) for every entry n.
Distribution update_distribution(std::span<const double> pi,
                                 std::size_t played, double b, double lambda);

// Index drawn from `pi` with one uniform variate.
std::size_t sample_action(std::span<const double> pi, Rng& rng);

// One synchronous round. Satisfied players keep their action and pi_k.
// Every unsatisfied player reinforces the action it just played with gain b
// computed from its last observed utility, then resamples from the updated
// distribution. Utilities and flags are observed at the new profile.
SesaState sesa_step(const ConstrainedGame& game, const SesaState& state,
                    Rng& rng, std::optional<double> learning_rate = {});

// Runs until every player is satisfied (absorbing) or max_steps rounds have
// been played.
SesaTrace run_sesa(const ConstrainedGame& game, std::size_t max_steps, Rng& rng,
                   const SesaOptions& options = {});

}  // namespace satnet

#endif  // SATNET_SESA_HPP
