#include "satnet/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace satnet {

void InterferenceChannel::validate() const {
  if (num_links == 0) throw std::invalid_argument("channel needs K >= 1");
  if (gain_sq.size() != num_links * num_links)
    throw std::invalid_argument("gain_sq must hold K*K entries");
  if (noise.size() != num_links || p_max.size() != num_links)
    throw std::invalid_argument("noise and p_max need one entry per link");
  if (levels < 2) throw std::invalid_argument("levels must be >= 2");
  for (double g : gain_sq) {
    if (!std::isfinite(g) || g < 0.0)
      throw std::invalid_argument("gain_sq entries must be finite and >= 0");
  }
  for (std::size_t k = 0; k < num_links; ++k) {
    if (!std::isfinite(noise[k]) || noise[k] <= 0.0)
      throw std::invalid_argument("noise[" + std::to_string(k) +
                                  "] must be > 0");
    if (!std::isfinite(p_max[k]) || p_max[k] <= 0.0)
      throw std::invalid_argument("p_max[" + std::to_string(k) +
                                  "] must be > 0");
  }
}

std::vector<double> power_grid(double p_max, std::size_t n_levels) {
  if (n_levels < 2) throw std::invalid_argument("power grid needs N >= 2");
  if (!(p_max > 0.0)) throw std::invalid_argument("p_max must be > 0");
  const double base = static_cast<double>(n_levels);
  const double last = static_cast<double>(n_levels - 1);
  std::vector<double> powers(n_levels);
  for (std::size_t n = 0; n < n_levels; ++n)
    powers[n] = p_max * std::pow(base, -static_cast<double>(n) / last);
  return powers;
}

std::vector<double> rate_utility(const InterferenceChannel& ch,
                                 std::span<const double> powers) {
  const std::size_t num = ch.num_links;
  if (powers.size() != num)
    throw std::invalid_argument("expected one power per link");
  for (double p : powers) {
    if (!(p >= 0.0)) throw std::invalid_argument("transmit power must be >= 0");
  }
  std::vector<double> rates(num);
  for (std::size_t k = 0; k < num; ++k) {
    double interference = ch.noise[k];
    for (std::size_t j = 0; j < num; ++j) {
      if (j != k) interference += powers[j] * ch.gain(k, j);
    }
    rates[k] = std::log2(1.0 + powers[k] * ch.gain(k, k) / interference);
  }
  return rates;
}

double single_user_cap(const InterferenceChannel& ch, std::size_t k) {
  if (k >= ch.num_links) throw std::invalid_argument("link index out of range");
  std::vector<double> powers(ch.num_links, 0.0);
  powers[k] = ch.p_max[k];
  return rate_utility(ch, powers)[k];
}

InterferenceChannel sample_channel(Rng& rng, std::size_t num_links,
                                   double snr_db, std::size_t n_levels) {
  if (num_links == 0) throw std::invalid_argument("channel needs K >= 1");
  InterferenceChannel ch;
  ch.num_links = num_links;
  ch.levels = n_levels;
  ch.gain_sq.resize(num_links * num_links);
  std::normal_distribution<double> component(0.0, std::sqrt(0.5));
  for (double& g : ch.gain_sq) {
    const double re = component(rng);
    const double im = component(rng);
    g = re * re + im * im;
  }
  ch.p_max.assign(num_links, 1.0);
  ch.noise.assign(num_links, std::pow(10.0, -snr_db / 10.0));
  ch.validate();
  return ch;
}

std::pair<ConstrainedGame, CostModel> to_game(const InterferenceChannel& ch,
                                              std::vector<double> gamma) {
  ch.validate();
  const std::size_t num = ch.num_links;
  if (gamma.size() != num)
    throw std::invalid_argument("expected one rate threshold per link");

  std::vector<std::vector<double>> grids(num);
  std::vector<std::vector<double>> costs(num);
  std::vector<double> caps(num);
  for (std::size_t k = 0; k < num; ++k) {
    grids[k] = power_grid(ch.p_max[k], ch.levels);
    for (double p : grids[k]) costs[k].push_back(p / ch.p_max[k]);
    caps[k] = single_user_cap(ch, k);
  }

  UtilityFn utility = [ch, grids](std::size_t k, const ActionProfile& s) {
    std::vector<double> powers(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) powers[j] = grids[j][s[j]];
    return rate_utility(ch, powers)[k];
  };

  ConstrainedGame game(std::vector<std::size_t>(num, ch.levels),
                       std::move(utility), std::move(gamma), std::move(caps),
                       grids);
  return {std::move(game), CostModel(std::move(costs))};
}

}  // namespace satnet
