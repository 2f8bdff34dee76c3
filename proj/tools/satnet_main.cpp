// satnet: equilibrium enumeration and satisfaction-learning experiments on
// QoS-constrained games.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "satnet/experiments.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<std::size_t> runs;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> traces;
  std::optional<std::size_t> tail;
  std::optional<double> learning_rate;
  std::optional<unsigned> threads;
  bool strict = false;
  // Channel sampler, used when no --config is given.
  std::optional<std::size_t> links;
  std::optional<double> snr_db;
  std::optional<std::size_t> levels;
  std::vector<double> gamma;
  std::vector<std::size_t> start;
  std::optional<std::size_t> max_iters;
};

satnet::ExperimentConfig build_config(const Flags& flags, bool needs_game) {
  satnet::ExperimentConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in)
      throw satnet::DocumentError("cannot open " + flags.config_path, "--config");
    std::stringstream text;
    text << in.rdbuf();
    nlohmann::json document;
    try {
      document = nlohmann::json::parse(text.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw satnet::DocumentError(std::string("malformed JSON: ") + e.what(),
                                  "--config");
    }
    config = satnet::parse_config(
        document, std::filesystem::path(flags.config_path).parent_path());
  }

  const bool sampler_flags = flags.links || flags.snr_db || flags.levels ||
                             !flags.gamma.empty();
  if (sampler_flags) {
    if (config.game_document)
      throw satnet::DocumentError("sampler flags conflict with the config game",
                                  "--config");
    satnet::SamplerParams params = config.sampler.value_or(satnet::SamplerParams{});
    if (flags.links) params.links = *flags.links;
    if (flags.snr_db) params.snr_db = *flags.snr_db;
    if (flags.levels) params.levels = *flags.levels;
    if (!flags.gamma.empty()) params.gamma = flags.gamma;
    config.sampler = params;
  }
  if (needs_game && !config.game_document && !config.sampler)
    throw satnet::DocumentError("no game given (use --config or sampler flags)",
                                "--config");

  if (flags.seed) config.seed = *flags.seed;
  config.out_dir = flags.out_dir;
  config.strict = flags.strict;
  if (flags.runs) config.runs = *flags.runs;
  if (flags.max_steps) config.max_steps = *flags.max_steps;
  if (flags.traces) config.trace_limit = *flags.traces;
  if (flags.tail) config.tail = *flags.tail;
  if (flags.learning_rate) config.learning_rate = *flags.learning_rate;
  if (flags.threads) config.threads = *flags.threads;
  if (!flags.start.empty()) config.brd_start = flags.start;
  if (flags.max_iters) config.brd_max_iters = *flags.max_iters;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria and satisfaction learning for QoS-constrained games"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&flags](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "Game or experiment JSON");
    cmd->add_option("--seed", flags.seed, "Base seed");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_flag("--strict", flags.strict, "Treat an infeasible game as an error");
  };
  auto add_sampler = [&flags](CLI::App* cmd) {
    cmd->add_option("--k", flags.links, "Number of links");
    cmd->add_option("--snr-db", flags.snr_db, "Average SNR p_max/sigma^2 in dB");
    cmd->add_option("--levels", flags.levels, "Power levels per link");
    cmd->add_option("--gamma", flags.gamma, "Rate thresholds")->delimiter(',');
  };

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate NE, GNE, SE and ESE");
  add_common(enumerate);
  add_sampler(enumerate);

  auto* sesa = app.add_subcommand("sesa", "Monte Carlo runs of satisfaction search");
  add_common(sesa);
  add_sampler(sesa);
  sesa->add_option("--runs", flags.runs, "Independent runs")->check(CLI::PositiveNumber);
  sesa->add_option("--max-steps", flags.max_steps, "Step budget per run")
      ->check(CLI::PositiveNumber);
  sesa->add_option("--traces", flags.traces, "Runs that get a trace CSV");
  sesa->add_option("--tail", flags.tail, "Steps recorded after convergence");
  sesa->add_option("--learning-rate", flags.learning_rate,
                   "Constant learning rate instead of 1/(t+1)");
  sesa->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");

  auto* brd = app.add_subcommand("brd", "Best-response dynamics from a start profile");
  add_common(brd);
  add_sampler(brd);
  brd->add_option("--start", flags.start, "Start profile")->delimiter(',');
  brd->add_option("--max-iters", flags.max_iters, "Round budget")
      ->check(CLI::PositiveNumber);

  auto* channel_gen = app.add_subcommand("channel-gen", "Sample a channel document");
  add_common(channel_gen);
  add_sampler(channel_gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : satnet::kExitValidation;
  }

  try {
    if (enumerate->parsed())
      return satnet::cmd_enumerate(build_config(flags, true), std::cerr);
    if (sesa->parsed()) return satnet::cmd_sesa(build_config(flags, true), std::cerr);
    if (brd->parsed()) return satnet::cmd_brd(build_config(flags, true), std::cerr);
    return satnet::cmd_channel_gen(build_config(flags, false), std::cerr);
  } catch (const satnet::DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return satnet::kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return satnet::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return satnet::kExitFailure;
  }
}
