#ifndef SATNET_DOCUMENTS_HPP
#define SATNET_DOCUMENTS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "satnet/channel.hpp"
#include "satnet/equilibria.hpp"
#include "satnet/game.hpp"
#include "satnet/sesa.hpp"

namespace satnet {

// Validation failure in an input document. `path` names the offending
// element, e.g. "thresholds[1]" or "utilities.table[0][1]".
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& what, std::string path)
      : std::runtime_error(what + " at " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A game plus its effort model, and the channel behind it when there is one.
struct LoadedGame {
  ConstrainedGame game;
  CostModel cost;
  std::optional<InterferenceChannel> channel;
};

// Game document:
//   { "players": K, "thresholds": [...], "caps": [...],
//     "utilities": { "table": [u_1, ..., u_K] },  // each a K-dim nested array
//     "costs": [[...], ...] }                       // optional, default zero
// or with "utilities": { "channel": <channel document> } and an optional
// top-level "levels". Channel games derive caps from single-user rates and
// default to power-proportional costs.
LoadedGame load_game(const nlohmann::json& document);
LoadedGame load_game(const std::string& text);

// Channel document:
//   { "k": K, "gain_sq": [K*K row-major], "noise": [...], "p_max": [...],
//     "levels": N, "seed": optional }
InterferenceChannel channel_from_json(const nlohmann::json& document,
                                      const std::string& path = "channel");
nlohmann::json channel_to_json(const InterferenceChannel& ch,
                               std::optional<std::uint64_t> seed = {});

// Table-backed game document for `game` (utilities tabulated).
nlohmann::json game_to_json(const ConstrainedGame& game, const CostModel& cost);

nlohmann::json profile_set_to_json(const ProfileSet& profiles);
nlohmann::json report_to_json(const ConstrainedGame& game,
                              const EquilibriumReport& report);

// One row per profile: index, actions, action values, utilities and the four
// membership flags, all taken from `report`.
void write_rate_map_csv(std::ostream& os, const ConstrainedGame& game,
                        const EquilibriumReport& report);

// t,player,action_index,action_value,utility,satisfied
void write_trace_csv(std::ostream& os, const ConstrainedGame& game,
                     const SesaTrace& trace);

// Round-trip decimal form of a double (17 significant digits).
std::string format_real(double value);

}  // namespace satnet

#endif  // SATNET_DOCUMENTS_HPP
