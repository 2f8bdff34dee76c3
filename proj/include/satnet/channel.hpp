#ifndef SATNET_CHANNEL_HPP
#define SATNET_CHANNEL_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "satnet/equilibria.hpp"
#include "satnet/game.hpp"
#include "satnet/random.hpp"

namespace satnet {

// K transmitter/receiver pairs with mutual interference.
//
// gain_sq(j, k) is |h_{j,k}|^2, the power gain from transmitter k to
// receiver j. Only magnitudes are kept because the rate depends on nothing
// else.
struct InterferenceChannel {
  std::size_t num_links = 0;
  std::vector<double> gain_sq;  // row-major K x K
  std::vector<double> noise;    // sigma^2_k, watts
  std::vector<double> p_max;    // watts
  std::size_t levels = 2;       // power grid size N

  double gain(std::size_t receiver, std::size_t transmitter) const {
    return gain_sq[receiver * num_links + transmitter];
  }

  // Throws std::invalid_argument on shape or range violations.
  void validate() const;
};

// p_max * N^(-n/(N-1)) for n = 0..N-1: descending from p_max to p_max/N,
// evenly spaced in log scale.
std::vector<double> power_grid(double p_max, std::size_t n_levels);

// Shannon rate log2(1 + SINR_k) of every link, bits per channel use.
std::vector<double> rate_utility(const InterferenceChannel& ch,
                                 std::span<const double> powers);

// Interference-free rate at full power.
double single_user_cap(const InterferenceChannel& ch, std::size_t k);

// Gains are |h|^2 for h a unit-variance circularly symmetric complex
// Gaussian; p_max = 1 W and the noise power realizes `snr_db`.
InterferenceChannel sample_channel(Rng& rng, std::size_t num_links,
                                   double snr_db, std::size_t n_levels);

// Power-control game over the channel's power grids. Action n of player k is
// power_grid(p_max_k, N)[n]; the effort of an action is its power divided by
// p_max_k.
std::pair<ConstrainedGame, CostModel> to_game(const InterferenceChannel& ch,
                                              std::vector<double> gamma);

}  // namespace satnet

#endif  // SATNET_CHANNEL_HPP
