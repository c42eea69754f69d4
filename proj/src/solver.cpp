#include "qgames/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

constexpr double kMinStep = 1e-8;

// Payoffs for profiles that differ from a base profile in one slot (or are fully
// symmetric). Uses the pure-state route: since U I U^dagger = I, the noisy
// outcome distribution is f |U psi|^2 + (1 - f)/D.
class PayoffEvaluator {
public:
    PayoffEvaluator(const GameSpec& game, double fidelity) : game_(game), fidelity_(fidelity) {
        if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw InputError("fidelity outside [0,1]");
        if (game.use_entangler_pair && fidelity != 1.0)
            throw InputError("the prisoner's dilemma has no noise model; fidelity must be 1");
        initial_ = initial_state(game).amplitudes();
        columns_.resize(static_cast<std::size_t>(game.shape.n));
        for (int p = 1; p <= game.shape.n; ++p) {
            auto& col = columns_[static_cast<std::size_t>(p - 1)];
            col.reserve(game.payoff_table.size());
            for (const auto& row : game.payoff_table)
                col.push_back(boost::rational_cast<double>(row[static_cast<std::size_t>(p - 1)]));
        }
    }

    // ops player-n-first; returns player's expected payoff.
    double payoff(std::span<const ComplexMatrix> ops, int player) const {
        const auto& col = columns_[static_cast<std::size_t>(player - 1)];
        if (game_.use_entangler_pair) {
            const PureState fin = play_pd(ops[1], ops[0], game_.entangler);
            double s = 0.0;
            for (std::size_t i = 0; i < col.size(); ++i) s += col[i] * std::norm(fin.amplitudes()[i]);
            return s;
        }
        std::vector<Complex> amps(initial_.entries().begin(), initial_.entries().end());
        apply_local_inplace(ops, game_.shape, amps);
        const double floor = (1.0 - fidelity_) / static_cast<double>(amps.size());
        double s = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) s += col[i] * (fidelity_ * std::norm(amps[i]) + floor);
        return s;
    }

private:
    const GameSpec& game_;
    double fidelity_;
    ComplexVector initial_;
    std::vector<std::vector<double>> columns_;
};

std::vector<double> clamp_to_box(std::vector<double> x, std::span<const ParamRange> box) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
    return x;
}

void require_compatible(const GameSpec& game, const SearchSpace& space) {
    if (family_dimension(space.family()) != game.shape.d)
        throw InputError("strategy space '" + std::string(family_tag(space.family())) + "' acts on dimension " +
                         std::to_string(family_dimension(space.family())) + " but the game has d = " +
                         std::to_string(game.shape.d));
}

void require_profile(const GameSpec& game, std::span<const StrategySpec> profile) {
    if (static_cast<int>(profile.size()) != game.shape.n)
        throw InputError("profile has " + std::to_string(profile.size()) + " strategies, game has " +
                         std::to_string(game.shape.n) + " players");
    for (const auto& s : profile)
        if (family_dimension(s.family) != game.shape.d)
            throw InputError("strategy '" + s.literal() + "' does not act on dimension " + std::to_string(game.shape.d));
}

// Re-express a seed strategy in the search family when an exact embedding exists.
std::optional<StrategySpec> seed_in_family(const StrategySpec& s, StrategyFamily family) {
    if (s.family == family) return s;
    if (s.family == StrategyFamily::EisertSU2 && family == StrategyFamily::FullSU2)
        return StrategySpec(family, {s.params[0], s.params[1], -std::numbers::pi / 2});
    return std::nullopt;
}

struct SearchOutcome {
    StrategySpec strategy;
    double value;
    std::size_t evaluations;
};

// Maximizes score(matrix) over the space. Deterministic for a given cfg.
SearchOutcome search_space(const SearchSpace& space, const std::function<double(const ComplexMatrix&)>& score,
                           std::span<const StrategySpec> seeds, const SearchConfig& cfg) {
    if (space.is_finite()) {
        const auto candidates = space.enumerate();
        std::vector<double> values(candidates.size());
        parallel_for(candidates.size(), cfg.threads, [&](std::size_t i) { values[i] = score(candidates[i].matrix()); });
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[best]) best = i;
        return {candidates[best], values[best], candidates.size()};
    }

    const StrategyFamily family = space.family();
    const auto box = family_box(family);
    const std::size_t k = box.size();
    const bool high_dim = k > 3;
    const auto g = static_cast<std::size_t>(high_dim ? cfg.coarse_grid_points : cfg.grid_points_per_axis);

    std::size_t total = 1;
    for (std::size_t a = 0; a < k; ++a) total *= g;

    auto grid_point = [&](std::size_t idx) {
        std::vector<double> x(k);
        // First parameter is the most significant digit: lexicographic order.
        for (std::size_t a = k; a-- > 0;) {
            const std::size_t step = idx % g;
            idx /= g;
            x[a] = box[a].lo + (box[a].hi - box[a].lo) * static_cast<double>(step) / static_cast<double>(g - 1);
        }
        return x;
    };
    auto objective = [&](std::span<const double> x) {
        return score(StrategySpec(family, std::vector<double>(x.begin(), x.end())).matrix());
    };

    std::vector<double> grid_values(total);
    parallel_for(total, cfg.threads, [&](std::size_t i) { grid_values[i] = objective(grid_point(i)); });

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t top = std::min<std::size_t>(high_dim ? static_cast<std::size_t>(cfg.multistart) : 1, total);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return grid_values[a] != grid_values[b] ? grid_values[a] > grid_values[b] : a < b;
                      });

    std::vector<std::vector<double>> starts;
    for (std::size_t i = 0; i < top; ++i) starts.push_back(grid_point(order[i]));
    for (const auto& s : seeds)
        if (auto mapped = seed_in_family(s, family)) starts.push_back(mapped->params);
    std::mt19937_64 rng(cfg.seed);
    for (int r = 0; r < cfg.random_starts; ++r) {
        std::vector<double> x(k);
        for (std::size_t a = 0; a < k; ++a) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            x[a] = box[a].lo + u * (box[a].hi - box[a].lo);
        }
        starts.push_back(std::move(x));
    }

    std::vector<RefineResult> refined(starts.size());
    parallel_for(starts.size(), cfg.threads, [&](std::size_t i) { refined[i] = refine(objective, starts[i], box, cfg); });

    std::vector<double> best_x = grid_point(order[0]);
    double best_value = grid_values[order[0]];
    std::size_t evaluations = total;
    for (const auto& r : refined) {
        evaluations += r.evaluations;
        if (r.value > best_value) {
            best_value = r.value;
            best_x = r.params;
        }
    }
    return {StrategySpec(family, best_x), best_value, evaluations};
}

}  // namespace

void SearchConfig::validate() const {
    if (grid_points_per_axis < 2) throw InputError("grid_points_per_axis must be >= 2");
    if (coarse_grid_points < 2) throw InputError("coarse_grid_points must be >= 2");
    if (multistart < 1) throw InputError("multistart must be >= 1");
    if (refine_iterations < 0) throw InputError("refine_iterations must be >= 0");
    if (!(refine_initial_step > 0.0)) throw InputError("refine_initial_step must be positive");
    if (!(epsilon_nash > 0.0)) throw InputError("epsilon_nash must be positive");
    if (random_starts < 0) throw InputError("random_starts must be >= 0");
    if (threads < 1) throw InputError("threads must be >= 1");
}

nlohmann::ordered_json to_json(const SearchConfig& cfg) {
    nlohmann::ordered_json j;
    j["grid_points_per_axis"] = cfg.grid_points_per_axis;
    j["coarse_grid_points"] = cfg.coarse_grid_points;
    j["multistart"] = cfg.multistart;
    j["refine_iterations"] = cfg.refine_iterations;
    j["refine_initial_step"] = cfg.refine_initial_step;
    j["epsilon_nash"] = cfg.epsilon_nash;
    j["seed"] = cfg.seed;
    j["random_starts"] = cfg.random_starts;
    return j;
}

SearchConfig search_config_from_json(const nlohmann::json& doc) {
    SearchConfig cfg;
    try {
        cfg.grid_points_per_axis = doc.value("grid_points_per_axis", cfg.grid_points_per_axis);
        cfg.coarse_grid_points = doc.value("coarse_grid_points", cfg.coarse_grid_points);
        cfg.multistart = doc.value("multistart", cfg.multistart);
        cfg.refine_iterations = doc.value("refine_iterations", cfg.refine_iterations);
        cfg.refine_initial_step = doc.value("refine_initial_step", cfg.refine_initial_step);
        cfg.epsilon_nash = doc.value("epsilon_nash", cfg.epsilon_nash);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.random_starts = doc.value("random_starts", cfg.random_starts);
        cfg.threads = doc.value("threads", cfg.threads);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed search config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

SearchSpace SearchSpace::of(StrategyFamily family) {
    SearchSpace s;
    s.family_ = family;
    return s;
}

SearchSpace SearchSpace::finite(std::vector<StrategySpec> candidates) {
    if (candidates.empty()) throw InputError("finite strategy space needs at least one strategy");
    for (const auto& c : candidates)
        if (c.family != candidates.front().family) throw InputError("finite strategy space mixes families");
    SearchSpace s;
    s.family_ = candidates.front().family;
    s.candidates_ = std::move(candidates);
    return s;
}

std::vector<StrategySpec> SearchSpace::enumerate() const {
    if (!candidates_.empty()) return candidates_;
    if (!family_is_discrete(family_)) throw InputError("continuous strategy space cannot be enumerated");
    std::vector<StrategySpec> out;
    const auto box = family_box(family_);
    for (int k = static_cast<int>(box[0].lo); k <= static_cast<int>(box[0].hi); ++k)
        out.emplace_back(family_, std::vector<double>{static_cast<double>(k)});
    return out;
}

bool SearchSpace::contains(const StrategySpec& s) const {
    if (s.family != family_) return false;
    if (candidates_.empty()) return true;
    return std::find(candidates_.begin(), candidates_.end(), s) != candidates_.end();
}

std::string SearchSpace::describe() const {
    std::string out(family_tag(family_));
    if (!candidates_.empty()) out += "[" + std::to_string(candidates_.size()) + " strategies]";
    return out;
}

RefineResult refine(const Objective& objective, std::vector<double> start, std::span<const ParamRange> box,
                    const SearchConfig& cfg) {
    RefineResult r;
    r.params = clamp_to_box(std::move(start), box);
    r.value = objective(r.params);
    r.evaluations = 1;
    double step = cfg.refine_initial_step;
    for (int it = 0; it < cfg.refine_iterations && step >= kMinStep; ++it) {
        bool improved = false;
        for (std::size_t a = 0; a < r.params.size() && !improved; ++a) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> trial = r.params;
                trial[a] = std::clamp(trial[a] + dir * step, box[a].lo, box[a].hi);
                if (trial[a] == r.params[a]) continue;
                const double v = objective(trial);
                ++r.evaluations;
                if (v > r.value) {
                    r.params = std::move(trial);
                    r.value = v;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step /= 2;
        r.history.push_back(r.value);
    }
    return r;
}

std::vector<double> profile_payoffs(const GameSpec& game, std::span<const StrategySpec> profile, double fidelity) {
    require_profile(game, profile);
    const PayoffEvaluator eval(game, fidelity);
    std::vector<ComplexMatrix> ops;
    for (const auto& s : profile) ops.push_back(s.matrix());
    std::vector<double> out;
    for (int p = 1; p <= game.shape.n; ++p) out.push_back(eval.payoff(ops, p));
    return out;
}

BestResponse best_response(const GameSpec& game, std::span<const StrategySpec> profile, int player,
                           const SearchSpace& space, const SearchConfig& cfg, double fidelity) {
    cfg.validate();
    require_profile(game, profile);
    require_compatible(game, space);
    if (player < 1 || player > game.shape.n) throw InputError("player index out of range");

    const PayoffEvaluator eval(game, fidelity);
    std::vector<ComplexMatrix> base;
    for (const auto& s : profile) base.push_back(s.matrix());
    const std::size_t slot = static_cast<std::size_t>(game.shape.n - player);

    auto score = [&](const ComplexMatrix& u) {
        std::vector<ComplexMatrix> ops = base;
        ops[slot] = u;
        return eval.payoff(ops, player);
    };
    std::vector<StrategySpec> seeds;
    if (!space.is_finite()) seeds.push_back(profile[slot]);
    const SearchOutcome found = search_space(space, score, seeds, cfg);
    return {found.strategy, found.value, found.evaluations};
}

EquilibriumVerdict verify_nash(const GameSpec& game, std::span<const StrategySpec> profile, const SearchSpace& space,
                               const SearchConfig& cfg, double fidelity) {
    EquilibriumVerdict v;
    v.profile_payoffs = profile_payoffs(game, profile, fidelity);
    v.max_unilateral_gain = -std::numeric_limits<double>::infinity();
    for (int p = 1; p <= game.shape.n; ++p) {
        BestResponse br = best_response(game, profile, p, space, cfg, fidelity);
        v.max_unilateral_gain = std::max(v.max_unilateral_gain, br.payoff - v.profile_payoffs[static_cast<std::size_t>(p - 1)]);
        v.best_deviation.push_back(std::move(br));
    }
    v.is_equilibrium = v.max_unilateral_gain <= cfg.epsilon_nash;
    return v;
}

double NormalFormGame::payoff(std::span<const int> choices, int player) const {
    std::size_t idx = 0;
    for (int c : choices) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(c);
    return payoffs.at(idx).at(static_cast<std::size_t>(player - 1));
}

NormalFormGame to_normal_form(const GameSpec& game) {
    NormalFormGame g;
    g.n = game.shape.n;
    g.d = game.shape.d;
    for (const auto& row : game.payoff_table) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(boost::rational_cast<double>(v));
        g.payoffs.push_back(std::move(r));
    }
    return g;
}

std::optional<int> dominant_strategy(const NormalFormGame& game, int player) {
    if (player < 1 || player > game.n) throw InputError("player index out of range");
    if (game.d < 1) throw InputError("game needs at least one strategy");
    std::size_t opponents = 1;
    for (int i = 1; i < game.n; ++i) opponents *= static_cast<std::size_t>(game.d);

    const auto slot = static_cast<std::size_t>(game.n - player);
    std::vector<int> choices(static_cast<std::size_t>(game.n));
    auto fill_opponents = [&](std::size_t code) {
        for (std::size_t pos = choices.size(); pos-- > 0;) {
            if (pos == slot) continue;
            choices[pos] = static_cast<int>(code % static_cast<std::size_t>(game.d));
            code /= static_cast<std::size_t>(game.d);
        }
    };

    for (int candidate = 0; candidate < game.d; ++candidate) {
        bool dominant = true;
        for (std::size_t code = 0; code < opponents && dominant; ++code) {
            fill_opponents(code);
            choices[slot] = candidate;
            const double mine = game.payoff(choices, player);
            for (int other = 0; other < game.d && dominant; ++other) {
                choices[slot] = other;
                if (game.payoff(choices, player) > mine) dominant = false;
            }
        }
        if (dominant) return candidate;
    }
    return std::nullopt;
}

ParetoVerdict pareto_check_symmetric(const GameSpec& game, double payoff, const SearchSpace& space,
                                     const SearchConfig& cfg, double fidelity) {
    cfg.validate();
    require_compatible(game, space);
    ParetoVerdict v;
    // In a symmetric profile every player earns the same p, and n p = E[sum_i $_i] <= max_b sum_i $_i(b).
    double best_sum = 0.0;
    for (const auto& row : game.payoff_table) {
        double s = 0.0;
        for (const auto& x : row) s += boost::rational_cast<double>(x);
        best_sum = std::max(best_sum, s);
    }
    v.symmetric_bound = best_sum / game.shape.n;
    if (payoff >= v.symmetric_bound - cfg.epsilon_nash) {
        v.certificate = ParetoCertificate::AnalyticSumBound;
        v.pareto_optimal = true;
        return v;
    }

    const PayoffEvaluator eval(game, fidelity);
    auto score = [&](const ComplexMatrix& u) {
        const std::vector<ComplexMatrix> ops(static_cast<std::size_t>(game.shape.n), u);
        return eval.payoff(ops, 1);
    };
    const SearchOutcome found = search_space(space, score, {}, cfg);
    v.certificate = ParetoCertificate::SearchHeuristic;
    if (found.value > payoff + cfg.epsilon_nash) {
        v.pareto_optimal = false;
        v.witness = found.strategy;
        v.witness_payoff = found.value;
    }
    return v;
}

SweepResult fidelity_sweep(const GameSpec& game, const StrategySpec& strategy, std::span<const double> f_grid) {
    if (game.use_entangler_pair) throw InputError("the prisoner's dilemma has no fidelity parameter");
    if (f_grid.empty()) throw InputError("fidelity grid is empty");
    for (double f : f_grid)
        if (!(f >= 0.0 && f <= 1.0)) throw InputError("fidelity " + std::to_string(f) + " outside [0,1]");

    SweepResult out;
    const ComplexMatrix u = strategy.matrix();
    for (double f : f_grid) out.rows.push_back({f, play_symmetric(game, u, f).payoffs});

    const auto m = static_cast<double>(f_grid.size());
    const double mean_f = std::accumulate(f_grid.begin(), f_grid.end(), 0.0) / m;
    double sxx = 0.0;
    for (double f : f_grid) sxx += (f - mean_f) * (f - mean_f);
    for (int p = 0; p < game.shape.n; ++p) {
        const auto pi = static_cast<std::size_t>(p);
        double mean_y = 0.0;
        for (const auto& row : out.rows) mean_y += row.payoffs[pi];
        mean_y /= m;
        double sxy = 0.0;
        for (const auto& row : out.rows) sxy += (row.fidelity - mean_f) * (row.payoffs[pi] - mean_y);
        AffineFit fit;
        fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
        fit.intercept = mean_y - fit.slope * mean_f;
        for (const auto& row : out.rows)
            out.max_residual =
                std::max(out.max_residual, std::abs(row.payoffs[pi] - (fit.slope * row.fidelity + fit.intercept)));
        out.fits.push_back(fit);
    }
    return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace qgames
