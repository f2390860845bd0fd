#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "rgbr/error.hpp"

namespace rgbr::cli {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("missing numeric field \"") + key + "\"");
  return j.at(key).get<double>();
}

Vec4 get_vec4(const json& j) {
  if (!j.is_array() || j.size() != 4) bad("expected an array of four numbers");
  Vec4 v{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) bad("expected an array of four numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

std::vector<std::string> get_names(const json& j) {
  if (!j.is_array() || j.empty()) bad("action list must be a nonempty array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad("action names must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::size_t find_name(const std::vector<std::string>& names, const std::string& s) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return i;
  return names.size();
}

}  // namespace

json load_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) bad("cannot read " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

MemoryOneStrategy parse_strategy(const json& j, StrategyKind kind) {
  if (j.is_array()) return MemoryOneStrategy::validate(get_vec4(j), kind);
  if (j.is_object() && j.contains("p")) {
    const double first = j.contains("p0") ? get_number(j, "p0") : 1.0;
    return MemoryOneStrategy::validate(get_vec4(j.at("p")), kind, first);
  }
  bad("strategy must be [p1,p2,p3,p4] or {\"p\": [...], \"p0\": x}");
}

GameSpec parse_game(const json& j) {
  if (!j.is_object()) bad("game must be an object {\"R\":..,\"S\":..,\"T\":..,\"P\":..}");
  return GameSpec::validate(get_number(j, "R"), get_number(j, "S"), get_number(j, "T"),
                            get_number(j, "P"));
}

StageGame parse_stage_game(const json& j) {
  if (j.is_object() && j.contains("R")) return StageGame::prisoners_dilemma(parse_game(j));
  if (!j.is_object() || !j.contains("actions") || !j.contains("utility")) {
    bad("stage game needs \"actions\" and \"utility\"");
  }
  const auto& acts = j.at("actions");
  if (!acts.is_array() || acts.size() != 2) bad("\"actions\" must hold two action lists");
  auto rows = get_names(acts[0]);
  auto cols = get_names(acts[1]);
  const auto& u = j.at("utility");
  if (!u.is_array() || u.size() != rows.size()) bad("utility must have one row per row action");
  std::vector<std::pair<double, double>> table;
  for (const auto& row : u) {
    if (!row.is_array() || row.size() != cols.size()) bad("utility row length mismatch");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
        bad("utility cells must be [u1, u2]");
      }
      table.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return StageGame(std::move(rows), std::move(cols), std::move(table));
}

bool is_kmemory(const json& j) { return j.is_object() && j.contains("k") && j.contains("table"); }

KMemoryStrategy parse_kmemory(const json& j, const std::vector<std::string>& own_actions,
                              const std::vector<std::string>& other_actions) {
  if (!is_kmemory(j)) bad("k-memory strategy needs \"k\" and \"table\"");
  if (!j.at("k").is_number_integer() || j.at("k").get<int>() < 1) bad("\"k\" must be a positive integer");
  const int k = j.at("k").get<int>();

  std::vector<std::string> own = own_actions, other = other_actions;
  if (j.contains("actions")) {
    const auto& a = j.at("actions");
    if (a.is_array() && !a.empty() && a[0].is_array()) {
      if (a.size() != 2) bad("\"actions\" must be one list or [own, other]");
      own = get_names(a[0]);
      other = get_names(a[1]);
    } else {
      own = other = get_names(a);
    }
    if (own != own_actions || other != other_actions) {
      bad("strategy actions do not match the stage game");
    }
  }

  const HistoryCodec codec(k, own.size(), other.size());
  const auto& table = j.at("table");
  if (!table.is_object()) bad("\"table\" must map history keys to distributions");

  // Each profile token is an own action name followed by an other action name.
  auto parse_profile = [&](const std::string& token) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t a = 0; a < own.size(); ++a) {
      if (token.rfind(own[a], 0) != 0) continue;
      const std::size_t b = find_name(other, token.substr(own[a].size()));
      if (b < other.size()) return {a, b};
    }
    bad("unknown profile \"" + token + "\"");
  };

  std::vector<std::vector<double>> dist(codec.state_count());
  std::vector<bool> seen(codec.state_count(), false);
  for (auto it = table.begin(); it != table.end(); ++it) {
    std::vector<std::pair<std::size_t, std::size_t>> hist;
    std::stringstream ss(it.key());
    std::string token;
    while (std::getline(ss, token, ',')) hist.push_back(parse_profile(token));
    if (hist.size() != static_cast<std::size_t>(k)) {
      bad("history \"" + it.key() + "\" does not have k profiles");
    }
    const std::size_t s = codec.encode(hist);
    if (seen[s]) bad("duplicate history \"" + it.key() + "\"");
    seen[s] = true;
    const auto& d = it.value();
    if (!d.is_array() || d.size() != own.size()) bad("distribution length mismatch at \"" + it.key() + "\"");
    for (const auto& x : d) {
      if (!x.is_number()) bad("distribution entries must be numbers");
      dist[s].push_back(x.get<double>());
    }
  }
  for (std::size_t s = 0; s < seen.size(); ++s) {
    if (!seen[s]) bad("table misses history \"" + history_key(s, codec, own, other) + "\"");
  }
  return KMemoryStrategy(k, std::move(own), std::move(other), std::move(dist));
}

Population parse_population(const json& j) {
  if (!j.is_array() || j.empty()) bad("population must be a nonempty array");
  std::vector<PopulationMember> members;
  for (const auto& m : j) {
    if (!m.is_object() || !m.contains("p")) bad("population entries need \"p\"");
    int count = 1;
    if (m.contains("count")) {
      if (!m.at("count").is_number_integer()) bad("\"count\" must be an integer");
      count = m.at("count").get<int>();
    }
    members.push_back({parse_strategy(m, StrategyKind::CompletelyMixed), count});
  }
  return Population(std::move(members));
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json vec(const Vec4& v) { return json::array({number(v[0]), number(v[1]), number(v[2]), number(v[3])}); }

std::string history_key(std::size_t state, const HistoryCodec& codec,
                        const std::vector<std::string>& own_actions,
                        const std::vector<std::string>& other_actions) {
  std::string key;
  for (auto [a, b] : codec.decode(state)) {
    if (!key.empty()) key += ',';
    key += own_actions[a] + other_actions[b];
  }
  return key;
}

}  // namespace rgbr::cli
