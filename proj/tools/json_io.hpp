#pragma once

// JSON schemas shared by every subcommand.
//
//   strategy    [0.9,0.5,0.2,0.1]  or  {"p": [0.9,0.5,0.2,0.1], "p0": 1.0}
//   game        {"R":3,"S":0,"T":5,"P":1}
//   stage game  {"actions": [["c","d"],["c","d"]],
//                "utility": [[[3,3],[0,5]],[[5,0],[1,1]]]}
//   k-memory    {"k":2, "actions":["c","d"], "table": {"cc,cc":[0.9,0.1], ...}}
//               keys are comma-joined profiles, oldest first, owner's action first
//   population  [{"p":[0.9,0.5,0.2,0.1],"count":9}, ...]
//
// Any argument may be given inline or as "@path" to read it from a file.

#include <json.hpp>
#include <string>

#include "rgbr/game.hpp"
#include "rgbr/mdp.hpp"
#include "rgbr/tournament.hpp"

namespace rgbr::cli {

using json = nlohmann::ordered_json;

/// Inline JSON text, or the contents of the file named after a leading '@'.
json load_argument(const std::string& arg);

MemoryOneStrategy parse_strategy(const json& j, StrategyKind kind = StrategyKind::Any);
GameSpec parse_game(const json& j);
/// Accepts both the (R,S,T,P) schema and the general stage-game schema.
StageGame parse_stage_game(const json& j);
bool is_kmemory(const json& j);
/// `game` supplies the action sets when the JSON omits them. The strategy is
/// owned by the player whose actions come first in each profile key.
KMemoryStrategy parse_kmemory(const json& j, const std::vector<std::string>& own_actions,
                              const std::vector<std::string>& other_actions);
Population parse_population(const json& j);

/// Rounded to 12 significant digits; non-finite values become null.
json number(double x);
json vec(const Vec4& v);
/// "cc,dc"-style key for a history, owner's action first in each profile.
std::string history_key(std::size_t state, const HistoryCodec& codec,
                        const std::vector<std::string>& own_actions,
                        const std::vector<std::string>& other_actions);

}  // namespace rgbr::cli
