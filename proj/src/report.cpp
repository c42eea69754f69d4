#include "qgames/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qgames {

std::string format12(double v) {
    v = round12(v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

namespace {

nlohmann::ordered_json rounded(const std::vector<double>& values) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double v : values) arr.push_back(round12(v));
    return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const GameSpec& game, const PayoffReport& report) {
    nlohmann::ordered_json j;
    j["game"] = game.name();
    j["n"] = game.shape.n;
    j["d"] = game.shape.d;
    j["fidelity"] = round12(report.fidelity);
    j["payoffs"] = rounded(report.payoffs);
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (const auto& [label, p] : report.probabilities) probs[label.str()] = round12(p);
    j["probabilities"] = std::move(probs);
    return j;
}

nlohmann::ordered_json to_json(const StrategySpec& s) {
    nlohmann::ordered_json j;
    j["family"] = std::string(family_tag(s.family));
    j["params"] = rounded(s.params);
    j["literal"] = s.literal();
    return j;
}

nlohmann::ordered_json to_json(const BestResponse& br) {
    nlohmann::ordered_json j;
    j["strategy"] = to_json(br.strategy);
    j["payoff"] = round12(br.payoff);
    j["evaluations"] = br.evaluations;
    return j;
}

nlohmann::ordered_json to_json(const EquilibriumVerdict& v) {
    nlohmann::ordered_json j;
    j["is_equilibrium"] = v.is_equilibrium;
    j["max_unilateral_gain"] = round12(v.max_unilateral_gain);
    j["profile_payoffs"] = rounded(v.profile_payoffs);
    nlohmann::ordered_json devs = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < v.best_deviation.size(); ++p) {
        nlohmann::ordered_json d = to_json(v.best_deviation[p]);
        d["player"] = p + 1;
        d["gain"] = round12(v.best_deviation[p].payoff - v.profile_payoffs[p]);
        devs.push_back(std::move(d));
    }
    j["best_deviation"] = std::move(devs);
    return j;
}

nlohmann::ordered_json to_json(const ParetoVerdict& v) {
    nlohmann::ordered_json j;
    j["pareto_optimal"] = v.pareto_optimal;
    j["certificate"] = v.certificate == ParetoCertificate::AnalyticSumBound ? "analytic_sum_bound" : "search_heuristic";
    j["symmetric_bound"] = round12(v.symmetric_bound);
    if (v.witness) {
        j["witness"] = to_json(*v.witness);
        j["witness_payoff"] = round12(v.witness_payoff);
    }
    return j;
}

nlohmann::ordered_json to_json(const SweepResult& sweep) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : sweep.rows) {
        nlohmann::ordered_json row;
        row["f"] = round12(r.fidelity);
        row["payoffs"] = rounded(r.payoffs);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    nlohmann::ordered_json fits = nlohmann::ordered_json::array();
    for (const auto& f : sweep.fits) fits.push_back({{"slope", round12(f.slope)}, {"intercept", round12(f.intercept)}});
    j["fits"] = std::move(fits);
    j["max_residual"] = round12(sweep.max_residual);
    return j;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream os;
    os << 'f';
    const std::size_t n = sweep.rows.empty() ? 0 : sweep.rows.front().payoffs.size();
    for (std::size_t p = 1; p <= n; ++p) os << ",player" << p;
    os << '\n';
    for (const auto& r : sweep.rows) {
        os << format12(r.fidelity);
        for (double v : r.payoffs) os << ',' << format12(v);
        os << '\n';
    }
    return os.str();
}

std::string payoff_text(const GameSpec& game, const PayoffReport& report) {
    std::ostringstream os;
    os << game.name() << " (n=" << game.shape.n << ", d=" << game.shape.d << ", f=" << format12(report.fidelity)
       << ")\n";
    for (std::size_t p = 0; p < report.payoffs.size(); ++p)
        os << "  player " << p + 1 << ": " << format12(report.payoffs[p]) << '\n';
    os << "  outcomes with probability > 1e-12:\n";
    for (const auto& [label, prob] : report.probabilities)
        if (prob > 1e-12) os << "    |" << label.str() << "> " << format12(prob) << '\n';
    return os.str();
}

}  // namespace qgames
