#ifndef SATNET_EXPERIMENTS_HPP
#define SATNET_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "satnet/documents.hpp"
#include "satnet/sesa.hpp"

namespace satnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;

struct SamplerParams {
  std::size_t links = 2;
  double snr_db = 10.0;
  std::size_t levels = 32;
  std::vector<double> gamma;
  std::optional<std::uint64_t> seed;  // falls back to ExperimentConfig::seed
};

struct ExperimentConfig {
  // Exactly one game source.
  std::optional<nlohmann::json> game_document;
  std::optional<SamplerParams> sampler;

  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  bool strict = false;

  std::size_t runs = 1;
  std::size_t max_steps = 10000;
  std::size_t tail = 0;
  std::size_t trace_limit = 100;  // runs that get a trace CSV
  std::optional<double> learning_rate;
  unsigned threads = 0;           // 0 = hardware concurrency

  std::optional<std::vector<std::size_t>> brd_start;
  std::size_t brd_max_iters = 1000;

  // Throws DocumentError naming the offending field.
  void validate() const;
};

// Experiment document:
//   { "game": {...} | "game_path": "..." | "channel_path": "...",
//     "thresholds": [...]            (with channel_path)
//     "sampler": { "k", "snr_db", "levels", "gamma", "seed" },
//     "sesa": { "runs", "max_steps", "seed", "learning_rate", "tail",
//               "trace_limit" },
//     "brd": { "start", "max_iters" } }
// A document with a top-level "players" field is taken as a bare game.
// Relative paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& document,
                              const std::filesystem::path& base_dir);

LoadedGame resolve_game(const ExperimentConfig& config);

struct RunOutcome {
  std::optional<std::size_t> converged_at;
  ActionProfile terminal;
};

// Independent SESA runs; run i uses derive_stream(seed, i). Results are
// ordered by run index whatever the thread count. `traces` receives the full
// step record of the first `keep_traces` runs.
std::vector<RunOutcome> run_monte_carlo(const ConstrainedGame& game,
                                        std::size_t runs, std::size_t max_steps,
                                        std::uint64_t seed,
                                        const SesaOptions& options,
                                        unsigned threads,
                                        std::size_t keep_traces = 0,
                                        std::vector<SesaTrace>* traces = nullptr);

nlohmann::json summarize_runs(const ConstrainedGame& game,
                              const std::vector<RunOutcome>& outcomes,
                              const ProfileSet& se_set);

// Each command writes into config.out_dir, logs to `log`, and returns the
// process exit code.
int cmd_enumerate(const ExperimentConfig& config, std::ostream& log);
int cmd_sesa(const ExperimentConfig& config, std::ostream& log);
int cmd_brd(const ExperimentConfig& config, std::ostream& log);
int cmd_channel_gen(const ExperimentConfig& config, std::ostream& log);

}  // namespace satnet

#endif  // SATNET_EXPERIMENTS_HPP
