#pragma once

#include <string>

#include "xorgames/games.hpp"
#include "xorgames/sdp.hpp"
#include "xorgames/strategies.hpp"

namespace xorgames {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Shortest round-trip decimal representation (std::to_chars).  All numeric
// payloads are serialized through this so reports are byte-reproducible.
std::string decimal_string(double x);
double parse_decimal(const std::string& s);

std::string game_to_json(const GameMatrix& g);
GameMatrix game_from_json(const std::string& text);

std::string binary_game_to_json(const BinaryGame& bg);
BinaryGame binary_game_from_json(const std::string& text);

std::string strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const std::string& text);

std::string certificate_to_json(const SdpCertificate& cert);

}  // namespace xorgames
