#pragma once

// Stable serializations: ordered keys, 12 significant digits, C locale.

#include <string>

#include "json.hpp"
#include "qgames/games.hpp"
#include "qgames/solver.hpp"

namespace qgames {

// Rounds to 12 significant digits; maps -0 to 0.
double round12(double v);
std::string format12(double v);

nlohmann::ordered_json to_json(const GameSpec& game, const PayoffReport& report);
nlohmann::ordered_json to_json(const StrategySpec& s);
nlohmann::ordered_json to_json(const BestResponse& br);
nlohmann::ordered_json to_json(const EquilibriumVerdict& v);
nlohmann::ordered_json to_json(const ParetoVerdict& v);
nlohmann::ordered_json to_json(const SweepResult& sweep);

// Header "f,player1,...,playerN" then one row per fidelity.
std::string sweep_csv(const SweepResult& sweep);

std::string payoff_text(const GameSpec& game, const PayoffReport& report);

}  // namespace qgames
