#pragma once

// Solution concepts over parameterized strategy spaces.
//
// Profiles passed in are ordered like operator lists (player n first). Per-player
// results (payoffs, deviations) are indexed by player - 1.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgames/games.hpp"
#include "qgames/strategy.hpp"

namespace qgames {

struct SearchConfig {
    int grid_points_per_axis = 24;
    // Spaces with more than three parameters use a coarse grid and multi-start refinement.
    int coarse_grid_points = 6;
    int multistart = 16;
    int refine_iterations = 200;
    double refine_initial_step = 0.1;
    double epsilon_nash = 1e-6;
    std::uint64_t seed = 0;
    // Extra refinement starts drawn uniformly from the parameter box with `seed`.
    int random_starts = 4;
    // Worker threads for grid and multi-start evaluation; never changes results.
    int threads = 1;

    void validate() const;
};

nlohmann::ordered_json to_json(const SearchConfig& cfg);
SearchConfig search_config_from_json(const nlohmann::json& doc);

class SearchSpace {
public:
    static SearchSpace of(StrategyFamily family);
    // Exactly the listed strategies, all of one family.
    static SearchSpace finite(std::vector<StrategySpec> candidates);

    StrategyFamily family() const { return family_; }
    bool is_finite() const { return !candidates_.empty() || family_is_discrete(family_); }
    // Enumerates a finite space in its canonical order.
    std::vector<StrategySpec> enumerate() const;
    bool contains(const StrategySpec& s) const;
    std::string describe() const;

private:
    StrategyFamily family_ = StrategyFamily::FullSU2;
    std::vector<StrategySpec> candidates_;
};

struct BestResponse {
    StrategySpec strategy;
    double payoff = 0.0;
    std::size_t evaluations = 0;
};

struct EquilibriumVerdict {
    bool is_equilibrium = false;
    double max_unilateral_gain = 0.0;
    std::vector<double> profile_payoffs;
    std::vector<BestResponse> best_deviation;
};

struct RefineResult {
    std::vector<double> params;
    double value = 0.0;
    // Best value after each accepted or rejected sweep; non-decreasing.
    std::vector<double> history;
    std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Coordinate ascent inside `box`: try +/- step on each axis in order, accept the
// first strict improvement, halve the step after a sweep without one. Stops after
// cfg.refine_iterations sweeps or once the step drops below 1e-8.
RefineResult refine(const Objective& objective, std::vector<double> start, std::span<const ParamRange> box,
                    const SearchConfig& cfg);

// Payoffs of a whole profile (player-n-first specs), player 1 first.
std::vector<double> profile_payoffs(const GameSpec& game, std::span<const StrategySpec> profile,
                                    double fidelity = 1.0);

BestResponse best_response(const GameSpec& game, std::span<const StrategySpec> profile, int player,
                           const SearchSpace& space, const SearchConfig& cfg, double fidelity = 1.0);

EquilibriumVerdict verify_nash(const GameSpec& game, std::span<const StrategySpec> profile, const SearchSpace& space,
                               const SearchConfig& cfg, double fidelity = 1.0);

// Finite pure-strategy game; d may be 1.
struct NormalFormGame {
    int n = 2;
    int d = 2;
    // payoffs[flat outcome][player - 1]; outcome digits are player-n-first.
    std::vector<std::vector<double>> payoffs;

    double payoff(std::span<const int> choices_player_n_first, int player) const;
};

NormalFormGame to_normal_form(const GameSpec& game);

// Weakly dominant pure strategy for `player`, lowest index on ties.
std::optional<int> dominant_strategy(const NormalFormGame& game, int player);

enum class ParetoCertificate { AnalyticSumBound, SearchHeuristic };

struct ParetoVerdict {
    bool pareto_optimal = true;
    ParetoCertificate certificate = ParetoCertificate::SearchHeuristic;
    // max over outcomes of the payoff sum, divided by n: ceiling for any symmetric profile
    double symmetric_bound = 0.0;
    std::optional<StrategySpec> witness;
    double witness_payoff = 0.0;
};

ParetoVerdict pareto_check_symmetric(const GameSpec& game, double payoff, const SearchSpace& space,
                                     const SearchConfig& cfg, double fidelity = 1.0);

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

struct SweepRow {
    double fidelity = 0.0;
    std::vector<double> payoffs;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<AffineFit> fits;  // one per player
    double max_residual = 0.0;
};

SweepResult fidelity_sweep(const GameSpec& game, const StrategySpec& strategy, std::span<const double> f_grid);

// Runs fn(0..count-1) over `threads` workers. fn must write only to index-owned slots.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qgames
