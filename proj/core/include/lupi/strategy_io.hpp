#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lupi/game.hpp"

namespace lupi {

// Text form:  first line `n`, second line n whitespace-separated probabilities.
// JSON form:  {"n": int, "probs": [float, ...]}

Strategy parse_strategy_text(std::string_view text);
Strategy parse_strategy_json(std::string_view text);
/// Dispatches on the first non-blank character ('{' selects JSON).
Strategy parse_strategy(std::string_view text);
Strategy read_strategy_file(const std::filesystem::path& path);

std::string format_strategy_text(const Strategy& s);
std::string format_strategy_json(const Strategy& s);

}  // namespace lupi
