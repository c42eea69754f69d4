#pragma once

// The reproduction checks behind `qgames verify` and the acceptance test binary.

#include <string>
#include <vector>

#include "json.hpp"
#include "qgames/strategy.hpp"

namespace qgames {

enum class Relation { Approx, AtMost, Below, Above, Exact };

struct CheckResult {
    int criterion = 0;
    std::string check;  // short id, e.g. "4c minority tie mass"
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::Approx;
    bool pass = false;
    std::string note;  // optional context, e.g. the deviation that broke an equilibrium
};

struct AcceptanceOptions {
    // Symmetric Kolkata strategy under test.
    FrameParams kolkata_strategy = kolkata_optimum_params();
    int property_draws = 1000;
    unsigned long long property_seed = 20111;
};

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options = {});

std::string_view relation_symbol(Relation r);
nlohmann::ordered_json to_json(const CheckResult& c);
std::string to_text(const CheckResult& c);

}  // namespace qgames
