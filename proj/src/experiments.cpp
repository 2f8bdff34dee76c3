#include "satnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace satnet {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json(const fs::path& path, const std::string& field) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON in ") + path.string() +
                            ": " + e.what(),
                        field);
  } catch (const std::runtime_error& e) {
    throw DocumentError(e.what(), field);
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t positive_count(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
    throw DocumentError("expected a positive integer", path);
  return value.get<std::size_t>();
}

SamplerParams sampler_from_json(const json& doc) {
  if (!doc.is_object()) throw DocumentError("expected an object", "sampler");
  SamplerParams params;
  if (doc.contains("k")) params.links = positive_count(doc["k"], "sampler.k");
  if (doc.contains("snr_db")) {
    if (!doc["snr_db"].is_number())
      throw DocumentError("expected a number", "sampler.snr_db");
    params.snr_db = doc["snr_db"].get<double>();
  }
  if (doc.contains("levels"))
    params.levels = positive_count(doc["levels"], "sampler.levels");
  if (doc.contains("gamma")) {
    const json& gamma = doc["gamma"];
    if (!gamma.is_array()) throw DocumentError("expected an array", "sampler.gamma");
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      if (!gamma[i].is_number())
        throw DocumentError("expected a number",
                            "sampler.gamma[" + std::to_string(i) + "]");
      params.gamma.push_back(gamma[i].get<double>());
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      throw DocumentError("expected an unsigned integer", "sampler.seed");
    params.seed = doc["seed"].get<std::uint64_t>();
  }
  return params;
}

std::size_t nearest_rank(const std::vector<std::size_t>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

std::string run_file_name(std::size_t run) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "trace_%05zu.csv", run);
  return buffer;
}

bool warn_if_infeasible(const ConstrainedGame& game, const ProfileSet& se_set,
                        std::ostream& log) {
  if (!se_set.empty()) return false;
  log << "warning: no profile satisfies every threshold (empty SE set) over "
      << game.profile_count() << " profiles\n";
  return true;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (game_document.has_value() == sampler.has_value())
    throw DocumentError("expected exactly one game source", "game");
  if (runs < 1) throw DocumentError("runs must be >= 1", "sesa.runs");
  if (max_steps < 1)
    throw DocumentError("max_steps must be >= 1", "sesa.max_steps");
  if (brd_max_iters < 1)
    throw DocumentError("max_iters must be >= 1", "brd.max_iters");
  if (learning_rate && !(*learning_rate >= 0.0 && *learning_rate <= 1.0))
    throw DocumentError("learning rate must lie in [0, 1]",
                        "sesa.learning_rate");
  if (sampler) {
    if (sampler->links < 1) throw DocumentError("expected K >= 1", "sampler.k");
    if (sampler->levels < 2)
      throw DocumentError("expected N >= 2", "sampler.levels");
  }
}

ExperimentConfig parse_config(const json& document, const fs::path& base_dir) {
  if (!document.is_object()) throw DocumentError("expected an object", "$");
  ExperimentConfig config;
  if (document.contains("players")) {
    config.game_document = document;
    return config;
  }

  std::size_t sources = 0;
  if (document.contains("game")) {
    config.game_document = document["game"];
    ++sources;
  }
  if (document.contains("game_path")) {
    if (!document["game_path"].is_string())
      throw DocumentError("expected a path", "game_path");
    config.game_document =
        read_json(base_dir / document["game_path"].get<std::string>(), "game_path");
    ++sources;
  }
  if (document.contains("channel_path")) {
    if (!document["channel_path"].is_string())
      throw DocumentError("expected a path", "channel_path");
    json channel = read_json(
        base_dir / document["channel_path"].get<std::string>(), "channel_path");
    if (!document.contains("thresholds"))
      throw DocumentError("missing field", "thresholds");
    json game = {{"players", channel.value("k", json())},
                 {"thresholds", document["thresholds"]},
                 {"utilities", {{"channel", channel}}}};
    if (document.contains("costs")) game["costs"] = document["costs"];
    config.game_document = std::move(game);
    ++sources;
  }
  if (document.contains("sampler")) {
    config.sampler = sampler_from_json(document["sampler"]);
    ++sources;
  }
  if (sources > 1) throw DocumentError("expected exactly one game source", "game");

  if (document.contains("sesa")) {
    const json& sesa = document["sesa"];
    if (!sesa.is_object()) throw DocumentError("expected an object", "sesa");
    if (sesa.contains("runs")) config.runs = positive_count(sesa["runs"], "sesa.runs");
    if (sesa.contains("max_steps"))
      config.max_steps = positive_count(sesa["max_steps"], "sesa.max_steps");
    if (sesa.contains("seed")) {
      if (!sesa["seed"].is_number_unsigned())
        throw DocumentError("expected an unsigned integer", "sesa.seed");
      config.seed = sesa["seed"].get<std::uint64_t>();
    }
    if (sesa.contains("tail")) {
      if (!sesa["tail"].is_number_unsigned())
        throw DocumentError("expected an unsigned integer", "sesa.tail");
      config.tail = sesa["tail"].get<std::size_t>();
    }
    if (sesa.contains("trace_limit")) {
      if (!sesa["trace_limit"].is_number_unsigned())
        throw DocumentError("expected an unsigned integer", "sesa.trace_limit");
      config.trace_limit = sesa["trace_limit"].get<std::size_t>();
    }
    if (sesa.contains("learning_rate") && !sesa["learning_rate"].is_null()) {
      if (!sesa["learning_rate"].is_number())
        throw DocumentError("expected a number", "sesa.learning_rate");
      config.learning_rate = sesa["learning_rate"].get<double>();
    }
  }
  if (document.contains("brd")) {
    const json& brd = document["brd"];
    if (!brd.is_object()) throw DocumentError("expected an object", "brd");
    if (brd.contains("max_iters"))
      config.brd_max_iters = positive_count(brd["max_iters"], "brd.max_iters");
    if (brd.contains("start")) {
      if (!brd["start"].is_array())
        throw DocumentError("expected an array", "brd.start");
      std::vector<std::size_t> start;
      for (std::size_t i = 0; i < brd["start"].size(); ++i) {
        const json& a = brd["start"][i];
        if (!a.is_number_unsigned())
          throw DocumentError("expected an action index",
                              "brd.start[" + std::to_string(i) + "]");
        start.push_back(a.get<std::size_t>());
      }
      config.brd_start = std::move(start);
    }
  }
  return config;
}

LoadedGame resolve_game(const ExperimentConfig& config) {
  config.validate();
  if (config.game_document) return load_game(*config.game_document);

  const SamplerParams& params = *config.sampler;
  if (params.gamma.size() != params.links)
    throw DocumentError("expected one threshold per link", "sampler.gamma");
  Rng rng(params.seed.value_or(config.seed));
  InterferenceChannel ch =
      sample_channel(rng, params.links, params.snr_db, params.levels);
  // Route through the document loader so sampled and file-backed games get
  // identical validation.
  json document = {{"players", params.links},
                   {"thresholds", params.gamma},
                   {"utilities", {{"channel", channel_to_json(ch)}}}};
  return load_game(document);
}

std::vector<RunOutcome> run_monte_carlo(const ConstrainedGame& game,
                                        std::size_t runs, std::size_t max_steps,
                                        std::uint64_t seed,
                                        const SesaOptions& options,
                                        unsigned threads,
                                        std::size_t keep_traces,
                                        std::vector<SesaTrace>* traces) {
  std::vector<RunOutcome> outcomes(runs);
  const std::size_t kept = traces ? std::min(keep_traces, runs) : 0;
  if (traces) traces->assign(kept, SesaTrace{});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t run = next++; run < runs; run = next++) {
      SesaOptions local = options;
      local.record_steps = run < kept;
      Rng rng = derive_stream(seed, run);
      SesaTrace trace = run_sesa(game, max_steps, rng, local);
      outcomes[run] = {trace.converged_at, trace.final_state.current_actions};
      if (run < kept) (*traces)[run] = std::move(trace);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return outcomes;
}

json summarize_runs(const ConstrainedGame& game,
                    const std::vector<RunOutcome>& outcomes,
                    const ProfileSet& se_set) {
  std::vector<std::size_t> times;
  std::map<std::size_t, std::size_t> histogram;
  json per_run = json::array();
  bool closure = true;
  for (std::size_t run = 0; run < outcomes.size(); ++run) {
    const RunOutcome& outcome = outcomes[run];
    const std::size_t index = game.index_of(outcome.terminal);
    ++histogram[index];
    if (outcome.converged_at) {
      times.push_back(*outcome.converged_at);
      closure = closure && se_set.count(outcome.terminal) > 0;
    }
    per_run.push_back(
        {{"run", run},
         {"converged_at", outcome.converged_at ? json(*outcome.converged_at)
                                               : json(nullptr)},
         {"terminal_profile", index}});
  }

  json hist = json::object();
  for (const auto& [index, count] : histogram) hist[std::to_string(index)] = count;

  json convergence_time = nullptr;
  if (!times.empty()) {
    std::sort(times.begin(), times.end());
    double sum = 0.0;
    for (std::size_t t : times) sum += static_cast<double>(t);
    convergence_time = {{"mean", sum / static_cast<double>(times.size())},
                        {"p50", nearest_rank(times, 0.50)},
                        {"p90", nearest_rank(times, 0.90)},
                        {"p99", nearest_rank(times, 0.99)},
                        {"max", times.back()}};
  }

  return {{"runs", outcomes.size()},
          {"converged_runs", times.size()},
          {"convergence_frequency", outcomes.empty()
                                        ? 0.0
                                        : static_cast<double>(times.size()) /
                                              static_cast<double>(outcomes.size())},
          {"convergence_time", convergence_time},
          {"terminal_histogram", hist},
          {"converged_in_se", closure},
          {"per_run", per_run}};
}

int cmd_enumerate(const ExperimentConfig& config, std::ostream& log) {
  const LoadedGame loaded = resolve_game(config);
  const EquilibriumReport report = analyze(loaded.game, loaded.cost);

  json doc = report_to_json(loaded.game, report);
  if (loaded.channel) doc["channel"] = channel_to_json(*loaded.channel);
  write_file(config.out_dir / "report.json", doc.dump(2) + "\n");
  std::ostringstream csv;
  write_rate_map_csv(csv, loaded.game, report);
  write_file(config.out_dir / "ratemap.csv", csv.str());

  log << "profiles " << loaded.game.profile_count() << ": ne "
      << report.ne_set.size() << ", gne " << report.gne_set.size() << ", se "
      << report.se_set.size() << ", ese " << report.ese_set.size() << "\n";
  if (warn_if_infeasible(loaded.game, report.se_set, log)) return kExitInfeasible;
  return kExitOk;
}

int cmd_sesa(const ExperimentConfig& config, std::ostream& log) {
  const LoadedGame loaded = resolve_game(config);
  const ProfileSet se_set = enumerate_se(loaded.game);
  if (warn_if_infeasible(loaded.game, se_set, log) && config.strict)
    return kExitInfeasible;

  SesaOptions options;
  options.learning_rate = config.learning_rate;
  options.tail = config.tail;
  std::vector<SesaTrace> traces;
  const auto outcomes =
      run_monte_carlo(loaded.game, config.runs, config.max_steps, config.seed,
                      options, config.threads, config.trace_limit, &traces);

  for (std::size_t run = 0; run < traces.size(); ++run) {
    std::ostringstream csv;
    write_trace_csv(csv, loaded.game, traces[run]);
    write_file(config.out_dir / run_file_name(run), csv.str());
  }

  json summary = summarize_runs(loaded.game, outcomes, se_set);
  summary["seed"] = config.seed;
  summary["max_steps"] = config.max_steps;
  summary["learning_rate"] =
      config.learning_rate ? json(*config.learning_rate) : json("1/(t+1)");
  summary["se_size"] = se_set.size();
  write_file(config.out_dir / "summary.json", summary.dump(2) + "\n");

  log << "runs " << config.runs << ": converged " << summary["converged_runs"]
      << " (frequency " << summary["convergence_frequency"] << ")\n";
  return kExitOk;
}

int cmd_brd(const ExperimentConfig& config, std::ostream& log) {
  const LoadedGame loaded = resolve_game(config);
  const ConstrainedGame& game = loaded.game;
  const ProfileSet se_set = enumerate_se(game);
  if (warn_if_infeasible(game, se_set, log) && config.strict) return kExitInfeasible;

  ActionProfile start(config.brd_start.value_or(
      std::vector<std::size_t>(game.num_players(), 0)));
  try {
    game.validate_profile(start);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what(), "brd.start");
  }
  const BrdResult result = run_brd(game, start, config.brd_max_iters);
  const ProfileSet gne_set = enumerate_gne(game);

  json doc = {{"start", start.actions()},
              {"profile", result.profile.actions()},
              {"converged", result.converged},
              {"iterations", result.iterations},
              {"is_se", se_set.count(result.profile) > 0},
              {"is_gne", gne_set.count(result.profile) > 0}};
  write_file(config.out_dir / "brd.json", doc.dump(2) + "\n");
  log << "brd " << start.to_string() << " -> " << result.profile.to_string()
      << (result.converged ? " converged" : " not converged") << " after "
      << result.iterations << " rounds\n";
  return kExitOk;
}

int cmd_channel_gen(const ExperimentConfig& config, std::ostream& log) {
  const SamplerParams params = config.sampler.value_or(SamplerParams{});
  if (params.links < 1) throw DocumentError("expected K >= 1", "sampler.k");
  if (params.levels < 2) throw DocumentError("expected N >= 2", "sampler.levels");
  const std::uint64_t seed = params.seed.value_or(config.seed);
  Rng rng(seed);
  const InterferenceChannel ch =
      sample_channel(rng, params.links, params.snr_db, params.levels);
  const fs::path path = config.out_dir / "channel.json";
  write_file(path, channel_to_json(ch, seed).dump(2) + "\n");
  log << "wrote " << path.string() << "\n";
  return kExitOk;
}

}  // namespace satnet
