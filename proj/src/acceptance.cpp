#include "qgames/acceptance.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qgames/cli.hpp"
#include "qgames/games.hpp"
#include "qgames/quantum.hpp"
#include "qgames/report.hpp"
#include "qgames/solver.hpp"

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
public:
    void add(int criterion, std::string id, double expected, double observed, double tolerance, Relation rel) {
        bool pass = false;
        switch (rel) {
            case Relation::Approx: pass = std::abs(observed - expected) <= tolerance; break;
            case Relation::AtMost: pass = observed <= expected; break;
            case Relation::Below: pass = observed < expected; break;
            case Relation::Above: pass = observed > expected; break;
            case Relation::Exact: pass = observed == expected; break;
        }
        results_.push_back({criterion, std::move(id), expected, observed, tolerance, rel, pass, {}});
    }
    void note(std::string text) { results_.back().note = std::move(text); }
    void exact_rational(int criterion, std::string id, const Rational& expected, const Rational& observed) {
        results_.push_back({criterion, std::move(id), boost::rational_cast<double>(expected),
                            boost::rational_cast<double>(observed), 0.0, Relation::Exact, expected == observed, {}});
    }
    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::vector<CheckResult> results_;
};

std::string deviation_note(const BestResponse& br, int player) {
    return "player " + std::to_string(player) + " best response " + br.strategy.literal() + " pays " +
           format12(br.payoff);
}

StrategySpec eisert_q() { return StrategySpec(StrategyFamily::EisertSU2, {0.0, kPi / 2}); }

StrategySpec kolkata_spec(const FrameParams& p) {
    return StrategySpec(StrategyFamily::FrameSU3,
                        {p.phi, p.theta, p.chi, p.alpha1, p.alpha2, p.alpha3, p.beta1, p.beta2});
}

void pd_checks(Recorder& rec) {
    const GameSpec pd = prisoners_dilemma();
    for (const auto& c : classical_embedding_check(pd).cases)
        for (std::size_t p = 0; p < c.expected.size(); ++p)
            rec.add(1, "1 pd embedding |" + c.outcome + "> player " + std::to_string(p + 1), c.expected[p],
                    c.observed[p], 1e-9, Relation::Approx);

    const std::vector<StrategySpec> q_profile{eisert_q(), eisert_q()};
    const auto payoffs = profile_payoffs(pd, q_profile);
    rec.add(2, "2a pd Q(x)Q payoff alice", 3.0, payoffs[0], 1e-9, Relation::Approx);
    rec.add(2, "2a pd Q(x)Q payoff bob", 3.0, payoffs[1], 1e-9, Relation::Approx);
    const SearchConfig cfg;
    const auto verdict = verify_nash(pd, q_profile, SearchSpace::of(StrategyFamily::EisertSU2), cfg);
    rec.add(2, "2b pd Q(x)Q nash gain over eisert space", 1e-6, verdict.max_unilateral_gain, 0.0, Relation::AtMost);
    rec.note(deviation_note(verdict.best_deviation[0], 1));

    const auto br = best_response(pd, q_profile, 1, SearchSpace::of(StrategyFamily::FullSU2), cfg);
    rec.add(3, "3 pd full-SU(2) deviation gain vs Q", 0.1, br.payoff - payoffs[0], 0.0, Relation::Above);
    rec.note(deviation_note(br, 1));
}

void minority_checks(Recorder& rec) {
    const GameSpec game = minority_game(4);
    rec.exact_rational(4, "4a minority classical uniform payoff", Rational(1, 8), classical_uniform_payoff(game)[0]);

    const StrategySpec opt(StrategyFamily::FullSU2, {kPi / 2, -kPi / 8, kPi / 8});
    const PayoffReport report = play_symmetric(game, opt.matrix());
    for (std::size_t p = 0; p < report.payoffs.size(); ++p)
        rec.add(4, "4b minority symmetric payoff player " + std::to_string(p + 1), 0.25, report.payoffs[p], 1e-9,
                Relation::Approx);
    double tie_mass = 0.0;
    for (const auto& [label, prob] : report.probabilities) {
        int ones = 0;
        for (int digit : label.digits()) ones += digit;
        if (ones == 2) tie_mass = std::max(tie_mass, prob);
    }
    rec.add(4, "4c minority max probability on 2-2 splits", 1e-12, tie_mass, 0.0, Relation::Below);

    const std::vector<StrategySpec> profile(4, opt);
    const SearchConfig cfg;
    const auto verdict = verify_nash(game, profile, SearchSpace::of(StrategyFamily::FullSU2), cfg);
    rec.add(4, "4d minority nash gain over full SU(2)", 1e-6, verdict.max_unilateral_gain, 0.0, Relation::AtMost);
    const auto pareto = pareto_check_symmetric(game, 0.25, SearchSpace::of(StrategyFamily::FullSU2), cfg);
    const bool analytic = pareto.pareto_optimal && pareto.certificate == ParetoCertificate::AnalyticSumBound;
    rec.add(4, "4e minority pareto certified by sum bound", 1.0, analytic ? 1.0 : 0.0, 0.0, Relation::Exact);
}

void kolkata_checks(Recorder& rec, const AcceptanceOptions& options) {
    const GameSpec game = kolkata_game();
    rec.exact_rational(5, "5a kolkata classical uniform payoff", Rational(4, 9), classical_uniform_payoff(game)[0]);

    const StrategySpec u = kolkata_spec(options.kolkata_strategy);
    const PayoffReport report = play_symmetric(game, u.matrix(), 1.0);
    for (std::size_t p = 0; p < report.payoffs.size(); ++p)
        rec.add(5, "5b kolkata symmetric payoff player " + std::to_string(p + 1), 2.0 / 3.0, report.payoffs[p], 1e-9,
                Relation::Approx);

    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const SweepResult sweep = fidelity_sweep(game, u, grid);
    for (std::size_t p = 0; p < sweep.fits.size(); ++p) {
        rec.add(5, "5c kolkata sweep slope player " + std::to_string(p + 1), 2.0 / 9.0, sweep.fits[p].slope, 1e-9,
                Relation::Approx);
        rec.add(5, "5c kolkata sweep intercept player " + std::to_string(p + 1), 4.0 / 9.0, sweep.fits[p].intercept,
                1e-9, Relation::Approx);
    }
    rec.add(5, "5c kolkata sweep max residual", 1e-9, sweep.max_residual, 0.0, Relation::Below);

    const EmbeddingReport emb = classical_embedding_check(game);
    int matches = 0;
    double worst = 0.0;
    for (const auto& c : emb.cases) {
        matches += c.match ? 1 : 0;
        for (std::size_t p = 0; p < c.expected.size(); ++p) worst = std::max(worst, std::abs(c.expected[p] - c.observed[p]));
    }
    rec.add(6, "6 kolkata embedding matching profiles", 27.0, matches, 0.0, Relation::Exact);
    rec.add(6, "6 kolkata embedding max payoff deviation", 0.0, worst, 1e-9, Relation::Approx);
}

void property_checks(Recorder& rec, const AcceptanceOptions& options) {
    std::mt19937_64 rng(options.property_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](StrategyFamily fam) {
        std::vector<double> params;
        for (const auto& r : family_box(fam)) {
            if (family_is_discrete(fam))
                params.push_back(std::floor(unit(rng) * (r.hi - r.lo + 1)) + r.lo);
            else
                params.push_back(r.lo + unit(rng) * (r.hi - r.lo));
        }
        return StrategySpec(fam, std::move(params));
    };

    for (auto fam : {StrategyFamily::FullSU2, StrategyFamily::EisertSU2, StrategyFamily::ClassicalBit,
                     StrategyFamily::CyclicC3, StrategyFamily::FrameSU3}) {
        double worst_unitary = 0.0;
        double worst_det = 0.0;
        for (int i = 0; i < options.property_draws; ++i) {
            const ComplexMatrix u = draw(fam).matrix();
            worst_unitary = std::max(worst_unitary, unitarity_residual(u));
            worst_det = std::max(worst_det, std::abs(determinant(u) - Complex{1.0}));
        }
        const std::string tag(family_tag(fam));
        rec.add(7, "7a unitarity residual " + tag, 1e-9, worst_unitary, 0.0, Relation::Below);
        if (fam == StrategyFamily::FullSU2 || fam == StrategyFamily::FrameSU3)
            rec.add(7, "7b |det-1| " + tag, 1e-9, worst_det, 0.0, Relation::Below);
    }

    std::normal_distribution<double> gauss;
    double worst_norm = 0.0;
    double worst_trace = 0.0;
    for (int i = 0; i < options.property_draws; ++i) {
        const bool qutrit = i % 2 == 1;
        const SystemShape shape = qutrit ? SystemShape(3, 3) : SystemShape(4, 2);
        ComplexVector v(shape.dimension());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = Complex{gauss(rng), gauss(rng)};
        v = Complex{1.0 / v.norm()} * v;
        const PureState psi(shape, v);
        std::vector<ComplexMatrix> ops;
        for (int p = 0; p < shape.n; ++p)
            ops.push_back(draw(qutrit ? StrategyFamily::FrameSU3 : StrategyFamily::FullSU2).matrix());
        worst_norm = std::max(worst_norm, std::abs(apply_local_pure(ops, psi).amplitudes().norm() - 1.0));
        const DensityMatrix rho = add_noise(psi, unit(rng));
        worst_trace = std::max(worst_trace, std::abs(trace(conjugate_density(ops, rho).matrix()) - Complex{1.0}));
    }
    rec.add(7, "7c norm preservation", 1e-9, worst_norm, 0.0, Relation::Below);
    rec.add(7, "7d trace preservation", 1e-9, worst_trace, 0.0, Relation::Below);

    for (const GameSpec& game : {prisoners_dilemma(), minority_game(4), kolkata_game()}) {
        double worst = 0.0;
        for (int p = 1; p <= game.shape.n; ++p) {
            const ComplexMatrix op = payoff_operator(game, p).matrix;
            for (std::size_t i = 0; i < game.payoff_table.size(); ++i) {
                const double want = boost::rational_cast<double>(game.payoff_table[i][static_cast<std::size_t>(p - 1)]);
                worst = std::max(worst, std::abs(op(i, i) - Complex{want}));
            }
        }
        rec.add(7, "7e payoff operator diagonal " + game.name(), 0.0, worst, 0.0, Relation::Exact);
    }
}

void determinism_checks(Recorder& rec) {
    auto run = [](const char* threads) {
        const std::vector<std::string> args{"search",   "--game", "minority", "-n",        "4",
                                            "--strategy", "full:pi/2,-pi/8,pi/8", "--space", "full",
                                            "--seed",   "7",      "--threads", threads};
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return std::pair{code, out.str()};
    };
    const auto [code1, out1] = run("1");
    const auto [code8, out8] = run("8");
    const bool same = code1 == 0 && code8 == 0 && !out1.empty() && out1 == out8;
    rec.add(8, "8 search output identical for 1 and 8 threads", 1.0, same ? 1.0 : 0.0, 0.0, Relation::Exact);
}

}  // namespace

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options) {
    Recorder rec;
    pd_checks(rec);
    minority_checks(rec);
    kolkata_checks(rec, options);
    property_checks(rec, options);
    determinism_checks(rec);
    return rec.take();
}

std::string_view relation_symbol(Relation r) {
    switch (r) {
        case Relation::Approx: return "~=";
        case Relation::AtMost: return "<=";
        case Relation::Below: return "<";
        case Relation::Above: return ">";
        case Relation::Exact: return "==";
    }
    return "?";
}

nlohmann::ordered_json to_json(const CheckResult& c) {
    nlohmann::ordered_json j;
    j["check"] = c.check;
    j["criterion"] = c.criterion;
    j["relation"] = std::string(relation_symbol(c.relation));
    j["expected"] = round12(c.expected);
    j["observed"] = round12(c.observed);
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

std::string to_text(const CheckResult& c) {
    std::ostringstream os;
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.check << ": observed " << format12(c.observed) << ' '
       << relation_symbol(c.relation) << ' ' << format12(c.expected);
    if (c.relation == Relation::Approx) os << " (tol " << c.tolerance << ')';
    if (!c.note.empty()) os << " [" << c.note << ']';
    return os.str();
}

}  // namespace qgames
