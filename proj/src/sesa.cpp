#include "satnet/sesa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace satnet {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(const Distribution& pi, std::size_t expected,
                        std::size_t k) {
  const std::string who = "initial distribution of player " + std::to_string(k);
  if (pi.size() != expected)
    throw std::invalid_argument(who + " has the wrong length");
  double sum = 0.0;
  for (double p : pi) {
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument(who + " has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument(who + " does not sum to 1");
}

void observe(const ConstrainedGame& game, SesaState& state) {
  const std::size_t num = game.num_players();
  state.last_utilities.resize(num);
  state.satisfied.resize(num);
  for (std::size_t k = 0; k < num; ++k) {
    state.last_utilities[k] = game.utility(k, state.current_actions);
    state.satisfied[k] = state.last_utilities[k] >= game.threshold(k);
  }
}

TraceStep snapshot(const SesaState& state) {
  return {state.t, state.current_actions, state.last_utilities,
          state.satisfied};
}

}  // namespace

bool SesaState::all_satisfied() const {
  return std::all_of(satisfied.begin(), satisfied.end(),
                     [](bool flag) { return flag; });
}

SesaState sesa_init(const ConstrainedGame& game,
                    const std::optional<std::vector<Distribution>>& initial,
                    Rng& rng) {
  const std::size_t num = game.num_players();
  SesaState state;
  if (initial) {
    if (initial->size() != num)
      throw std::invalid_argument("expected one initial distribution per player");
    for (std::size_t k = 0; k < num; ++k)
      check_distribution((*initial)[k], game.action_count(k), k);
    state.distributions = *initial;
  } else {
    for (std::size_t k = 0; k < num; ++k) {
      const std::size_t n = game.action_count(k);
      state.distributions.emplace_back(n, 1.0 / static_cast<double>(n));
    }
  }
  std::vector<std::size_t> actions(num);
  for (std::size_t k = 0; k < num; ++k)
    actions[k] = sample_action(state.distributions[k], rng);
  state.current_actions = ActionProfile(std::move(actions));
  observe(game, state);
  return state;
}

double normalized_gain(const ConstrainedGame& game, std::size_t k,
                       double u_hat) {
  const double cap = game.cap(k);
  const double gamma = game.threshold(k);
  if (!(cap > 0.0))
    throw std::invalid_argument("normalized gain needs a positive utility cap");
  if (!(u_hat >= 0.0 && u_hat <= cap))
    throw std::invalid_argument("observed utility outside [0, cap]");
  if (!(gamma >= 0.0 && gamma <= cap))
    throw std::invalid_argument("threshold outside [0, cap]");
  return (cap + u_hat - gamma) / (2.0 * cap);
}

Distribution update_distribution(std::span<const double> pi,
                                 std::size_t played, double b, double lambda) {
  if (played >= pi.size())
    throw std::invalid_argument("played action out of range");
  if (!(b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("gain must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("learning rate must lie in [0, 1]");
  const double step = lambda * b;
  Distribution out(pi.begin(), pi.end());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double indicator = n == played ? 1.0 : 0.0;
    out[n] += step * (indicator - out[n]);
  }
  return out;
}

std::size_t sample_action(std::span<const double> pi, Rng& rng) {
  if (pi.empty()) throw std::invalid_argument("cannot sample from an empty distribution");
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t n = 0; n < pi.size(); ++n) {
    acc += pi[n];
    if (u < acc) return n;
  }
  // u landed in the rounding gap above the accumulated mass.
  for (std::size_t n = pi.size(); n-- > 0;) {
    if (pi[n] > 0.0) return n;
  }
  return pi.size() - 1;
}

SesaState sesa_step(const ConstrainedGame& game, const SesaState& state,
                    Rng& rng, std::optional<double> learning_rate) {
  SesaState next = state;
  next.t = state.t + 1;
  const double lambda =
      learning_rate.value_or(1.0 / static_cast<double>(next.t + 1));
  for (std::size_t k = 0; k < game.num_players(); ++k) {
    if (state.satisfied[k]) continue;
    const double b = normalized_gain(game, k, state.last_utilities[k]);
    next.distributions[k] = update_distribution(
        state.distributions[k], state.current_actions[k], b, lambda);
    next.current_actions[k] = sample_action(next.distributions[k], rng);
  }
  observe(game, next);
  return next;
}

SesaTrace run_sesa(const ConstrainedGame& game, std::size_t max_steps, Rng& rng,
                   const SesaOptions& options) {
  if (max_steps == 0) throw std::invalid_argument("max_steps must be >= 1");
  SesaTrace trace;
  SesaState state = sesa_init(game, options.initial_distributions, rng);
  if (options.record_steps) trace.steps.push_back(snapshot(state));
  if (state.all_satisfied()) trace.converged_at = state.t;

  while (state.t < max_steps) {
    if (trace.converged_at && state.t >= *trace.converged_at + options.tail)
      break;
    state = sesa_step(game, state, rng, options.learning_rate);
    if (options.record_steps) trace.steps.push_back(snapshot(state));
    if (!trace.converged_at && state.all_satisfied())
      trace.converged_at = state.t;
  }
  trace.final_state = std::move(state);
  return trace;
}

}  // namespace satnet
