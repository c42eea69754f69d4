#include "qgames/games.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qgames/errors.hpp"
#include "qgames/strategy.hpp"

namespace qgames {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

std::vector<std::vector<Rational>> tabulate(const SystemShape& shape, auto&& payoff_of) {
    std::vector<std::vector<Rational>> table(shape.dimension());
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const BasisLabel label = BasisLabel::from_index(shape, idx);
        table[idx].reserve(static_cast<std::size_t>(shape.n));
        for (int player = 1; player <= shape.n; ++player) table[idx].push_back(payoff_of(label, player));
    }
    return table;
}

PayoffOperator operator_from_table(const GameSpec& game, int player) {
    if (player < 1 || player > game.shape.n)
        throw InputError("player " + std::to_string(player) + " outside 1.." + std::to_string(game.shape.n));
    std::vector<double> diag;
    diag.reserve(game.payoff_table.size());
    for (const auto& row : game.payoff_table) diag.push_back(to_double(row[static_cast<std::size_t>(player - 1)]));
    return {player, ComplexMatrix::diagonal(std::span<const double>(diag))};
}

PayoffReport report_from_density(const GameSpec& game, const DensityMatrix& rho, double fidelity) {
    PayoffReport report;
    report.fidelity = fidelity;
    report.payoffs.reserve(static_cast<std::size_t>(game.shape.n));
    for (int player = 1; player <= game.shape.n; ++player)
        report.payoffs.push_back(expectation(rho, payoff_operator(game, player).matrix));
    report.probabilities = outcome_probabilities(rho);
    return report;
}

}  // namespace

std::string GameSpec::name() const {
    switch (kind) {
        case GameKind::PrisonersDilemma: return "pd";
        case GameKind::Minority: return "minority";
        case GameKind::Kolkata: return "kolkata";
    }
    throw InternalError("unknown game kind");
}

const Rational& GameSpec::payoff(const BasisLabel& label, int player) const {
    if (player < 1 || player > shape.n) throw InputError("player index out of range");
    return payoff_table.at(label.index())[static_cast<std::size_t>(player - 1)];
}

GameSpec prisoners_dilemma(Entangler entangler) {
    GameSpec game;
    game.kind = GameKind::PrisonersDilemma;
    game.shape = SystemShape(2, 2);
    game.use_entangler_pair = true;
    game.entangler = entangler;
    // Ket |x_B x_A>, 0 = cooperate, 1 = defect. Row: (Alice, Bob).
    game.payoff_table = {{3, 3}, {5, 0}, {0, 5}, {1, 1}};
    return game;
}

GameSpec minority_game(int players) {
    if (players < 2) throw InputError("minority game needs at least 2 players");
    GameSpec game;
    game.kind = GameKind::Minority;
    game.shape = SystemShape(players, 2);
    game.payoff_table = tabulate(game.shape, [](const BasisLabel& label, int player) {
        const int mine = label.digit_of_player(player);
        int same = 0;
        for (int digit : label.digits()) same += digit == mine ? 1 : 0;
        const int other = static_cast<int>(label.digits().size()) - same;
        return Rational(same < other ? 1 : 0);
    });
    return game;
}

GameSpec kolkata_game() {
    GameSpec game;
    game.kind = GameKind::Kolkata;
    game.shape = SystemShape(3, 3);
    // Paid iff nobody else picked the same option (crowd limit 1).
    game.payoff_table = tabulate(game.shape, [](const BasisLabel& label, int player) {
        const int mine = label.digit_of_player(player);
        int same = 0;
        for (int digit : label.digits()) same += digit == mine ? 1 : 0;
        return Rational(same == 1 ? 1 : 0);
    });
    return game;
}

ComplexMatrix entangler_j(Entangler kind) {
    const ComplexMatrix flip = kind == Entangler::SigmaX ? pauli(Pauli::X) : su2_eisert(std::numbers::pi, 0.0);
    const Complex i{0.0, 1.0};
    return Complex{std::numbers::sqrt2 / 2.0} * (ComplexMatrix::identity(4) + i * kron(flip, flip));
}

PureState play_pd(const ComplexMatrix& u_alice, const ComplexMatrix& u_bob, Entangler kind) {
    const SystemShape shape(2, 2);
    const std::array<ComplexMatrix, 2> ops{u_bob, u_alice};
    check_local_ops(ops, shape, UnitarityCheck::Strict);
    const ComplexMatrix j = entangler_j(kind);
    const ComplexMatrix circuit = matmul(dagger(j), matmul(kron(u_bob, u_alice), j));
    ComplexVector out = matvec(circuit, basis_state(shape, BasisLabel(shape, {0, 0})).amplitudes());
    const double norm = out.norm();
    return PureState(shape, Complex{1.0 / norm} * out);
}

PayoffOperator payoff_operator(const GameSpec& game, int player) { return operator_from_table(game, player); }

PayoffOperator pd_payoff_operator(PdPlayer player) {
    return operator_from_table(prisoners_dilemma(), player == PdPlayer::Alice ? 1 : 2);
}

PayoffOperator minority_payoff_operator(int players, int player) {
    return operator_from_table(minority_game(players), player);
}

PayoffOperator kolkata_payoff_operator(int player) { return operator_from_table(kolkata_game(), player); }

PureState initial_state(const GameSpec& game) {
    if (game.kind == GameKind::PrisonersDilemma) return basis_state(game.shape, BasisLabel(game.shape, {0, 0}));
    return ghz(game.shape);
}

PayoffReport play_profile(const GameSpec& game, std::span<const ComplexMatrix> ops, double fidelity) {
    if (game.use_entangler_pair) {
        if (fidelity != 1.0) throw InputError("the prisoner's dilemma has no noise model; fidelity must be 1");
        if (ops.size() != 2) throw InputError("the prisoner's dilemma takes 2 operators");
        const PureState fin = play_pd(ops[1], ops[0], game.entangler);
        return report_from_density(game, DensityMatrix::from_pure(fin), fidelity);
    }
    const DensityMatrix rho_in = add_noise(initial_state(game), fidelity);
    const DensityMatrix rho_fin = conjugate_density(ops, rho_in);
    return report_from_density(game, rho_fin, fidelity);
}

PayoffReport play_symmetric(const GameSpec& game, const ComplexMatrix& u, double fidelity) {
    const std::vector<ComplexMatrix> ops(static_cast<std::size_t>(game.shape.n), u);
    return play_profile(game, ops, fidelity);
}

std::vector<Rational> classical_uniform_payoff(const GameSpec& game) {
    std::vector<Rational> sums(static_cast<std::size_t>(game.shape.n), Rational(0));
    for (const auto& row : game.payoff_table)
        for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += row[p];
    const auto outcomes = static_cast<long long>(game.payoff_table.size());
    for (auto& s : sums) s /= outcomes;
    return sums;
}

EmbeddingReport classical_embedding_check(const GameSpec& game) {
    std::vector<ComplexMatrix> moves = classical_set(game.shape.d);
    // The D entangler commutes with D (x) D rather than sx (x) sx.
    if (game.use_entangler_pair && game.entangler == Entangler::EisertD) moves[1] = su2_eisert(std::numbers::pi, 0.0);
    const auto n = static_cast<std::size_t>(game.shape.n);
    EmbeddingReport report;
    // Every choice vector corresponds to a classical outcome label with the same digits.
    for (std::size_t idx = 0; idx < game.shape.dimension(); ++idx) {
        const BasisLabel label = BasisLabel::from_index(game.shape, idx);
        std::vector<ComplexMatrix> ops;
        ops.reserve(n);
        for (int digit : label.digits()) ops.push_back(moves[static_cast<std::size_t>(digit)]);

        EmbeddingCase c;
        c.choices = label.digits();
        c.outcome = label.str();
        for (const auto& v : game.payoff_table[idx]) c.expected.push_back(to_double(v));
        c.observed = play_profile(game, ops, 1.0).payoffs;
        c.match = true;
        for (std::size_t p = 0; p < n; ++p)
            if (std::abs(c.expected[p] - c.observed[p]) >= kAcceptTol) c.match = false;
        report.ok = report.ok && c.match;
        report.cases.push_back(std::move(c));
    }
    return report;
}

nlohmann::ordered_json payoff_table_json(const GameSpec& game) {
    nlohmann::ordered_json doc;
    doc["game"] = game.name();
    doc["n"] = game.shape.n;
    doc["d"] = game.shape.d;
    nlohmann::ordered_json payoffs = nlohmann::ordered_json::object();
    for (std::size_t idx = 0; idx < game.payoff_table.size(); ++idx) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& v : game.payoff_table[idx]) {
            if (v.denominator() == 1)
                row.push_back(v.numerator());
            else
                row.push_back(to_double(v));
        }
        payoffs[BasisLabel::from_index(game.shape, idx).str()] = std::move(row);
    }
    doc["payoffs"] = std::move(payoffs);
    return doc;
}

GameSpec game_from_json(const nlohmann::json& doc) {
    try {
        const auto name = doc.at("game").get<std::string>();
        const int n = doc.at("n").get<int>();
        const int d = doc.at("d").get<int>();
        GameSpec game;
        if (name == "pd")
            game = prisoners_dilemma();
        else if (name == "minority")
            game = minority_game(n);
        else if (name == "kolkata")
            game = kolkata_game();
        else
            throw InputError("unknown game '" + name + "'");
        if (game.shape.n != n || game.shape.d != d) throw InputError("n/d do not match game '" + name + "'");

        const auto& payoffs = doc.at("payoffs");
        if (payoffs.size() != game.payoff_table.size()) throw InputError("payoff table does not cover every outcome");
        for (auto it = payoffs.begin(); it != payoffs.end(); ++it) {
            const BasisLabel label = BasisLabel::parse(game.shape, it.key());
            const auto& row = it.value();
            if (row.size() != static_cast<std::size_t>(n)) throw InputError("payoff row " + it.key() + " has wrong length");
            for (int p = 1; p <= n; ++p)
                if (std::abs(row[static_cast<std::size_t>(p - 1)].get<double>() - to_double(game.payoff(label, p))) > 0.0)
                    throw InputError("payoff for " + it.key() + " player " + std::to_string(p) + " differs from the " +
                                     name + " table");
        }
        return game;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed game JSON: ") + e.what());
    }
}

}  // namespace qgames
