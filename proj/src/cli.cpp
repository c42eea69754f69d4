#include "qgames/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "qgames/acceptance.hpp"
#include "qgames/errors.hpp"
#include "qgames/games.hpp"
#include "qgames/report.hpp"
#include "qgames/solver.hpp"
#include "qgames/strategy.hpp"

namespace qgames {

namespace {

struct Globals {
    int threads = 0;
    std::string format = "json";
};

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("QGAMES_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("QGAMES_THREADS='") + env + "' is not a positive integer");
    }
    return 1;
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    err << j.dump() << '\n';
}

void emit_payoffs(std::ostream& out, const std::string& format, const GameSpec& game, const PayoffReport& report) {
    if (format == "text") {
        out << payoff_text(game, report);
    } else if (format == "csv") {
        out << "player,payoff\n";
        for (std::size_t p = 0; p < report.payoffs.size(); ++p) out << p + 1 << ',' << format12(report.payoffs[p]) << '\n';
    } else {
        out << to_json(game, report).dump(2) << '\n';
    }
}

GameSpec game_by_name(const std::string& name, int players, const std::string& entangler) {
    if (name == "pd") return prisoners_dilemma(entangler == "d" ? Entangler::EisertD : Entangler::SigmaX);
    if (name == "minority") return minority_game(players);
    if (name == "kolkata") return kolkata_game();
    throw InputError("unknown game '" + name + "'");
}

std::vector<double> parse_fidelity_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::istringstream ts(token);
        ts.imbue(std::locale::classic());
        double v = 0.0;
        if (!(ts >> v) || !ts.eof()) throw InputError("bad fidelity '" + token + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InputError("empty fidelity list");
    return out;
}

// Player-1-first literals to a player-n-first profile; one literal means symmetric.
std::vector<StrategySpec> profile_from_literals(const std::vector<std::string>& literals, int players) {
    std::vector<StrategySpec> specs;
    for (const auto& lit : literals) specs.push_back(parse_strategy(lit));
    if (specs.size() == 1) return std::vector<StrategySpec>(static_cast<std::size_t>(players), specs.front());
    if (static_cast<int>(specs.size()) != players)
        throw InputError("expected 1 or " + std::to_string(players) + " strategies, got " + std::to_string(specs.size()));
    std::reverse(specs.begin(), specs.end());
    return specs;
}

int run_verify(std::ostream& out, bool as_json) {
    const auto results = run_acceptance();
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (as_json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : results) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
    } else {
        std::map<int, bool> by_criterion;
        for (const auto& r : results) {
            out << to_text(r) << '\n';
            auto [it, inserted] = by_criterion.emplace(r.criterion, r.pass);
            if (!inserted) it->second = it->second && r.pass;
        }
        for (const auto& [criterion, pass] : by_criterion)
            out << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << '\n';
    }
    return all ? 0 : 1;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum game simulator: prisoner's dilemma, minority and Kolkata games", "qgames"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    app.add_option("--threads", g.threads, "worker threads (falls back to QGAMES_THREADS, then 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));

    std::string alice, bob, entangler = "x";
    bool emit_table = false;
    auto* pd = app.add_subcommand("pd", "play the quantum prisoner's dilemma");
    pd->add_option("--alice", alice, "Alice's strategy literal");
    pd->add_option("--bob", bob, "Bob's strategy literal");
    pd->add_option("--entangler", entangler, "x: (I+i sx.sx)/sqrt2, d: (I+i D.D)/sqrt2")
        ->check(CLI::IsMember({"x", "d"}));

    int players = 4;
    std::string strategy;
    double fidelity = 1.0;
    auto* minority = app.add_subcommand("minority", "play the n-player quantum minority game");
    minority->add_option("-n,--players", players, "number of players")->check(CLI::Range(2, 14));
    minority->add_option("--strategy", strategy, "symmetric strategy literal");
    minority->add_option("--fidelity", fidelity, "GHZ fidelity f in [0,1]");

    auto* kolkata = app.add_subcommand("kolkata", "play the 3-player, 3-choice Kolkata restaurant game");
    kolkata->add_option("--strategy", strategy, "symmetric strategy literal");
    kolkata->add_option("--fidelity", fidelity, "GHZ fidelity f in [0,1]");

    for (auto* sub : {pd, minority, kolkata})
        sub->add_flag("--emit-table", emit_table, "print the classical payoff table instead of playing");

    std::string game_name = "kolkata";
    int points = 11;
    std::string fidelities;
    auto* sweep = app.add_subcommand("sweep", "payoffs of a symmetric strategy across fidelities");
    sweep->add_option("--game", game_name, "minority or kolkata")->check(CLI::IsMember({"minority", "kolkata"}));
    sweep->add_option("-n,--players", players, "players (minority only)")->check(CLI::Range(2, 14));
    sweep->add_option("--strategy", strategy, "symmetric strategy literal")->required();
    sweep->add_option("--points", points, "equispaced fidelities on [0,1]")->check(CLI::Range(2, 100000));
    sweep->add_option("--fidelities", fidelities, "explicit comma-separated fidelities");

    std::vector<std::string> strategies;
    std::string space_tag;
    int player = 0;
    std::string config_path;
    SearchConfig cfg;
    auto* search = app.add_subcommand("search", "best response or Nash verification over a strategy space");
    search->add_option("--game", game_name, "pd, minority or kolkata")
        ->required()
        ->check(CLI::IsMember({"pd", "minority", "kolkata"}));
    search->add_option("-n,--players", players, "players (minority only)")->check(CLI::Range(2, 14));
    search->add_option("--entangler", entangler, "pd entangler: x or d")->check(CLI::IsMember({"x", "d"}));
    search->add_option("--strategy", strategies, "profile literal(s): one for symmetric, else player 1 first")
        ->required();
    search->add_option("--space", space_tag, "strategy family searched: full, eisert, bit, c3, su3");
    search->add_option("--player", player, "only compute this player's best response");
    search->add_option("--fidelity", fidelity, "GHZ fidelity f in [0,1]");
    search->add_option("--config", config_path, "SearchConfig JSON file");
    search->add_option("--seed", cfg.seed, "seed for random refinement starts");
    search->add_option("--grid", cfg.grid_points_per_axis, "grid points per axis")->check(CLI::Range(2, 100000));
    search->add_option("--refine", cfg.refine_iterations, "refinement sweeps")->check(CLI::NonNegativeNumber);
    search->add_option("--step", cfg.refine_initial_step, "initial refinement step (rad)");
    search->add_option("--epsilon", cfg.epsilon_nash, "Nash tolerance in payoff units");

    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "run the reproduction checks");
    verify->add_flag("--json", verify_json, "machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return 2;
    }

    // Strategies are required unless only the payoff table is requested.
    if (!emit_table) {
        const char* missing = nullptr;
        if (pd->parsed() && alice.empty()) missing = "--alice is required";
        if (pd->parsed() && bob.empty()) missing = "--bob is required";
        if ((minority->parsed() || kolkata->parsed()) && strategy.empty()) missing = "--strategy is required";
        if (missing != nullptr) {
            emit_error(err, "usage", missing);
            return 2;
        }
    }

    try {
        if (pd->parsed()) {
            const GameSpec game = prisoners_dilemma(entangler == "d" ? Entangler::EisertD : Entangler::SigmaX);
            if (emit_table) {
                out << payoff_table_json(game).dump(2) << '\n';
                return 0;
            }
            const std::vector<ComplexMatrix> ops{parse_strategy(bob).matrix(), parse_strategy(alice).matrix()};
            emit_payoffs(out, g.format, game, play_profile(game, ops, 1.0));
            return 0;
        }
        if (minority->parsed() || kolkata->parsed()) {
            const GameSpec game = minority->parsed() ? minority_game(players) : kolkata_game();
            if (emit_table) {
                out << payoff_table_json(game).dump(2) << '\n';
                return 0;
            }
            emit_payoffs(out, g.format, game, play_symmetric(game, parse_strategy(strategy).matrix(), fidelity));
            return 0;
        }
        if (sweep->parsed()) {
            const GameSpec game = game_by_name(game_name, players, "x");
            std::vector<double> grid;
            if (!fidelities.empty()) {
                grid = parse_fidelity_list(fidelities);
            } else {
                for (int i = 0; i < points; ++i) grid.push_back(static_cast<double>(i) / (points - 1));
            }
            const SweepResult result = fidelity_sweep(game, parse_strategy(strategy), grid);
            if (g.format == "json")
                out << to_json(result).dump(2) << '\n';
            else
                out << sweep_csv(result);
            return 0;
        }
        if (search->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw InputError("cannot open config '" + config_path + "'");
                nlohmann::json doc;
                try {
                    doc = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw InputError(std::string("config is not valid JSON: ") + e.what());
                }
                const SearchConfig from_file = search_config_from_json(doc);
                // Command-line flags given explicitly win over the file.
                auto pick = [&](const char* flag, auto& field, const auto& file_value) {
                    if (search->count(flag) == 0) field = file_value;
                };
                pick("--seed", cfg.seed, from_file.seed);
                pick("--grid", cfg.grid_points_per_axis, from_file.grid_points_per_axis);
                pick("--refine", cfg.refine_iterations, from_file.refine_iterations);
                pick("--step", cfg.refine_initial_step, from_file.refine_initial_step);
                pick("--epsilon", cfg.epsilon_nash, from_file.epsilon_nash);
                cfg.coarse_grid_points = from_file.coarse_grid_points;
                cfg.multistart = from_file.multistart;
                cfg.random_starts = from_file.random_starts;
            }
            cfg.threads = resolve_threads(g.threads);
            cfg.validate();

            const GameSpec game = game_by_name(game_name, players, entangler);
            const auto profile = profile_from_literals(strategies, game.shape.n);
            const SearchSpace space = SearchSpace::of(space_tag.empty() ? profile.front().family : family_from_tag(space_tag));

            nlohmann::ordered_json report;
            report["game"] = game.name();
            report["n"] = game.shape.n;
            report["d"] = game.shape.d;
            report["fidelity"] = round12(fidelity);
            report["space"] = space.describe();
            nlohmann::ordered_json lits = nlohmann::ordered_json::array();
            for (auto it = profile.rbegin(); it != profile.rend(); ++it) lits.push_back(it->literal());
            report["profile"] = std::move(lits);
            report["config"] = to_json(cfg);
            if (player != 0) {
                report["mode"] = "best_response";
                report["player"] = player;
                const auto base = profile_payoffs(game, profile, fidelity);
                if (player < 1 || player > game.shape.n) throw InputError("player index out of range");
                const BestResponse br = best_response(game, profile, player, space, cfg, fidelity);
                report["current_payoff"] = round12(base[static_cast<std::size_t>(player - 1)]);
                report["result"] = to_json(br);
                report["gain"] = round12(br.payoff - base[static_cast<std::size_t>(player - 1)]);
            } else {
                report["mode"] = "verify_nash";
                report["result"] = to_json(verify_nash(game, profile, space, cfg, fidelity));
            }
            out << report.dump(2) << '\n';
            return 0;
        }
        if (verify->parsed()) return run_verify(out, verify_json);
    } catch (const InputError& e) {
        emit_error(err, "input", e.what());
        return 2;
    } catch (const NumericError& e) {
        emit_error(err, "numeric", e.what());
        return 2;
    }
    emit_error(err, "usage", "no subcommand");
    return 2;
}

}  // namespace qgames
