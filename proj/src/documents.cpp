#include "satnet/documents.hpp"

#include <cmath>
#include <cstdio>

namespace satnet {

using nlohmann::json;

namespace {

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& key,
                    const std::string& base) {
  const std::string path = base.empty() ? key : base + "." + key;
  if (!obj.is_object()) throw DocumentError("expected an object", base.empty() ? "$" : base);
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError("missing field", path);
  return *it;
}

std::string child(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

double real_at(const json& value, const std::string& path) {
  if (!value.is_number()) throw DocumentError("expected a number", path);
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw DocumentError("expected a finite number", path);
  return x;
}

std::size_t count_at(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    throw DocumentError("expected a non-negative integer", path);
  return value.get<std::size_t>();
}

std::vector<double> reals_at(const json& value, const std::string& path,
                             std::optional<std::size_t> expected = {}) {
  if (!value.is_array()) throw DocumentError("expected an array", path);
  if (expected && value.size() != *expected)
    throw DocumentError("expected " + std::to_string(*expected) + " entries",
                        path);
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(real_at(value[i], index_path(path, i)));
  return out;
}

// Shape of a rectangular nested array of depth `depth`.
std::vector<std::size_t> nested_shape(const json& value, std::size_t depth,
                                      const std::string& path) {
  std::vector<std::size_t> shape;
  const json* cursor = &value;
  std::string where = path;
  for (std::size_t d = 0; d < depth; ++d) {
    if (!cursor->is_array() || cursor->empty())
      throw DocumentError("expected a non-empty array", where);
    shape.push_back(cursor->size());
    cursor = &(*cursor)[0];
    where = index_path(where, 0);
  }
  return shape;
}

void flatten(const json& value, const std::vector<std::size_t>& shape,
             std::size_t depth, const std::string& path,
             std::vector<double>& out) {
  if (depth == shape.size()) {
    out.push_back(real_at(value, path));
    return;
  }
  if (!value.is_array() || value.size() != shape[depth])
    throw DocumentError("dimension mismatch, expected " +
                            std::to_string(shape[depth]) + " entries",
                        path);
  for (std::size_t i = 0; i < value.size(); ++i)
    flatten(value[i], shape, depth + 1, index_path(path, i), out);
}

ConstrainedGame build_game(std::vector<std::size_t> counts, UtilityFn utility,
                           std::vector<double> thresholds,
                           std::vector<double> caps,
                           std::vector<std::vector<double>> values = {}) {
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (thresholds[k] < 0.0)
      throw DocumentError("threshold must be >= 0",
                          index_path("thresholds", k));
    if (thresholds[k] > caps[k])
      throw DocumentError("threshold exceeds utility cap",
                          index_path("players", k));
  }
  try {
    return ConstrainedGame(std::move(counts), std::move(utility),
                           std::move(thresholds), std::move(caps),
                           std::move(values));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what(), "utilities");
  }
}

CostModel costs_from_json(const json& document,
                          const std::vector<std::size_t>& counts) {
  const json& costs = document.at("costs");
  if (!costs.is_array() || costs.size() != counts.size())
    throw DocumentError("expected one cost array per player", "costs");
  std::vector<std::vector<double>> table;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const std::string path = index_path("costs", k);
    auto row = reals_at(costs[k], path, counts[k]);
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a] < 0.0 || row[a] > 1.0)
        throw DocumentError("cost outside [0, 1]", index_path(path, a));
    }
    table.push_back(std::move(row));
  }
  return CostModel(std::move(table));
}

}  // namespace

InterferenceChannel channel_from_json(const json& document,
                                      const std::string& path) {
  InterferenceChannel ch;
  ch.num_links = count_at(require(document, "k", path), child(path, "k"));
  if (ch.num_links == 0) throw DocumentError("expected K >= 1", child(path, "k"));
  const std::size_t num = ch.num_links;
  ch.gain_sq = reals_at(require(document, "gain_sq", path),
                        child(path, "gain_sq"), num * num);
  for (std::size_t i = 0; i < ch.gain_sq.size(); ++i) {
    if (ch.gain_sq[i] < 0.0)
      throw DocumentError("gain must be >= 0",
                          index_path(child(path, "gain_sq"), i));
  }
  ch.noise = reals_at(require(document, "noise", path), child(path, "noise"), num);
  ch.p_max = reals_at(require(document, "p_max", path), child(path, "p_max"), num);
  for (std::size_t k = 0; k < num; ++k) {
    if (ch.noise[k] <= 0.0)
      throw DocumentError("noise must be > 0", index_path(child(path, "noise"), k));
    if (ch.p_max[k] <= 0.0)
      throw DocumentError("p_max must be > 0", index_path(child(path, "p_max"), k));
  }
  ch.levels = count_at(require(document, "levels", path), child(path, "levels"));
  if (ch.levels < 2) throw DocumentError("expected N >= 2", child(path, "levels"));
  return ch;
}

json channel_to_json(const InterferenceChannel& ch,
                     std::optional<std::uint64_t> seed) {
  json doc = {{"k", ch.num_links},
              {"gain_sq", ch.gain_sq},
              {"noise", ch.noise},
              {"p_max", ch.p_max},
              {"levels", ch.levels}};
  if (seed) doc["seed"] = *seed;
  return doc;
}

LoadedGame load_game(const json& document) {
  if (!document.is_object()) throw DocumentError("expected an object", "$");
  const std::size_t num = count_at(require(document, "players", ""), "players");
  if (num == 0) throw DocumentError("expected at least one player", "players");
  auto thresholds =
      reals_at(require(document, "thresholds", ""), "thresholds", num);
  const json& utilities = require(document, "utilities", "");
  if (!utilities.is_object())
    throw DocumentError("expected an object", "utilities");

  const bool has_table = utilities.contains("table");
  const bool has_channel = utilities.contains("channel");
  if (has_table == has_channel)
    throw DocumentError("expected exactly one of table or channel",
                        "utilities");

  if (has_table) {
    const json& tables = utilities.at("table");
    if (!tables.is_array() || tables.size() != num)
      throw DocumentError("expected one table per player", "utilities.table");
    auto caps = reals_at(require(document, "caps", ""), "caps", num);
    const auto counts = nested_shape(tables[0], num, "utilities.table[0]");
    std::vector<std::vector<double>> flat(num);
    for (std::size_t k = 0; k < num; ++k)
      flatten(tables[k], counts, 0, index_path("utilities.table", k), flat[k]);

    auto shared = std::make_shared<const std::vector<std::vector<double>>>(
        std::move(flat));
    UtilityFn fn = [shared, counts](std::size_t k, const ActionProfile& s) {
      std::size_t index = 0;
      for (std::size_t j = 0; j < counts.size(); ++j)
        index = index * counts[j] + s[j];
      return (*shared)[k][index];
    };
    ConstrainedGame game =
        build_game(counts, std::move(fn), std::move(thresholds), std::move(caps));
    CostModel cost = document.contains("costs")
                         ? costs_from_json(document, counts)
                         : CostModel::uniform_zero(game);
    return {std::move(game), std::move(cost), std::nullopt};
  }

  InterferenceChannel ch =
      channel_from_json(utilities.at("channel"), "utilities.channel");
  if (ch.num_links != num)
    throw DocumentError("channel has " + std::to_string(ch.num_links) +
                            " links, expected " + std::to_string(num),
                        "utilities.channel.k");
  if (document.contains("levels")) {
    const std::size_t levels = count_at(document.at("levels"), "levels");
    if (levels < 2) throw DocumentError("expected N >= 2", "levels");
    ch.levels = levels;
  }
  for (std::size_t k = 0; k < num; ++k) {
    if (thresholds[k] < 0.0)
      throw DocumentError("threshold must be >= 0", index_path("thresholds", k));
    if (thresholds[k] > single_user_cap(ch, k))
      throw DocumentError("threshold exceeds utility cap",
                          index_path("players", k));
  }
  auto [game, cost] = to_game(ch, thresholds);
  if (document.contains("caps")) {
    auto caps = reals_at(document.at("caps"), "caps", num);
    std::vector<std::vector<double>> values;
    for (std::size_t k = 0; k < num; ++k)
      values.push_back(power_grid(ch.p_max[k], ch.levels));
    UtilityFn fn = [base = game](std::size_t k, const ActionProfile& s) {
      return base.utility(k, s);
    };
    game = build_game(game.action_counts(), std::move(fn), thresholds,
                      std::move(caps), std::move(values));
  }
  if (document.contains("costs")) cost = costs_from_json(document, game.action_counts());
  return {std::move(game), std::move(cost), std::move(ch)};
}

LoadedGame load_game(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what(), "$");
  }
  return load_game(document);
}

json game_to_json(const ConstrainedGame& game, const CostModel& cost) {
  const std::size_t num = game.num_players();
  json tables = json::array();
  for (std::size_t k = 0; k < num; ++k) {
    // Build the nested array bottom-up from the flat profile order.
    std::vector<json> level;
    for (std::size_t i = 0; i < game.profile_count(); ++i)
      level.emplace_back(game.utility(k, game.profile_at(i)));
    for (std::size_t d = num; d-- > 0;) {
      const std::size_t width = game.action_count(d);
      std::vector<json> grouped;
      for (std::size_t i = 0; i < level.size(); i += width) {
        json row = json::array();
        for (std::size_t a = 0; a < width; ++a) row.push_back(std::move(level[i + a]));
        grouped.push_back(std::move(row));
      }
      level = std::move(grouped);
    }
    tables.push_back(std::move(level.front()));
  }
  return {{"players", num},
          {"thresholds", game.thresholds()},
          {"caps", game.caps()},
          {"utilities", {{"table", std::move(tables)}}},
          {"costs", cost.table()}};
}

json profile_set_to_json(const ProfileSet& profiles) {
  json out = json::array();
  for (const ActionProfile& s : profiles) {
    json row = json::array();
    for (std::size_t a : s) row.push_back(a);
    out.push_back(std::move(row));
  }
  return out;
}

json report_to_json(const ConstrainedGame& game,
                    const EquilibriumReport& report) {
  return {{"players", game.num_players()},
          {"action_counts", game.action_counts()},
          {"profile_count", game.profile_count()},
          {"thresholds", game.thresholds()},
          {"caps", game.caps()},
          {"feasible", !report.se_set.empty()},
          {"ne", profile_set_to_json(report.ne_set)},
          {"gne", profile_set_to_json(report.gne_set)},
          {"se", profile_set_to_json(report.se_set)},
          {"ese", profile_set_to_json(report.ese_set)},
          {"clipping", report.clipping},
          {"blocking_clipping", report.blocking_clipping}};
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_rate_map_csv(std::ostream& os, const ConstrainedGame& game,
                        const EquilibriumReport& report) {
  const std::size_t num = game.num_players();
  os << "profile";
  for (std::size_t k = 0; k < num; ++k) os << ",action_" << k;
  for (std::size_t k = 0; k < num; ++k) os << ",value_" << k;
  for (std::size_t k = 0; k < num; ++k) os << ",utility_" << k;
  os << ",ne,gne,se,ese\n";
  for (std::size_t i = 0; i < game.profile_count(); ++i) {
    const ActionProfile s = game.profile_at(i);
    os << i;
    for (std::size_t k = 0; k < num; ++k) os << ',' << s[k];
    for (std::size_t k = 0; k < num; ++k)
      os << ',' << format_real(game.action_value(k, s[k]));
    for (std::size_t k = 0; k < num; ++k)
      os << ',' << format_real(game.utility(k, s));
    os << ',' << report.ne_set.count(s) << ',' << report.gne_set.count(s) << ','
       << report.se_set.count(s) << ',' << report.ese_set.count(s) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const ConstrainedGame& game,
                     const SesaTrace& trace) {
  os << "t,player,action_index,action_value,utility,satisfied\n";
  for (const TraceStep& step : trace.steps) {
    for (std::size_t k = 0; k < step.profile.size(); ++k) {
      os << step.t << ',' << k << ',' << step.profile[k] << ','
         << format_real(game.action_value(k, step.profile[k])) << ','
         << format_real(step.utilities[k]) << ','
         << (step.satisfied[k] ? 1 : 0) << '\n';
    }
  }
}

}  // namespace satnet
