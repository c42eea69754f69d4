#pragma once

// The three games as executable protocols plus their classical oracles.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include "json.hpp"

#include "qgames/linalg.hpp"
#include "qgames/quantum.hpp"

namespace qgames {

using Rational = boost::rational<long long>;

enum class GameKind { PrisonersDilemma, Minority, Kolkata };

// Which global operator wraps the prisoner's dilemma.
//   SigmaX:  J = (I(x)I + i sx(x)sx)/sqrt2; {I, sx} commute with it, so the
//            classical table embeds under {I, sx}.
//   EisertD: J = (I(x)I + i D(x)D)/sqrt2 with D = [[0,1],[-1,0]]; embeds the
//            classical game under {I, D} instead.
// Both send |00> to (|00> + i|11>)/sqrt2.
enum class Entangler { SigmaX, EisertD };

struct GameSpec {
    GameKind kind = GameKind::PrisonersDilemma;
    SystemShape shape;
    bool use_entangler_pair = false;
    Entangler entangler = Entangler::SigmaX;
    // payoff_table[flat index][player - 1]
    std::vector<std::vector<Rational>> payoff_table;

    std::string name() const;
    const Rational& payoff(const BasisLabel& label, int player) const;
};

GameSpec prisoners_dilemma(Entangler entangler = Entangler::SigmaX);
GameSpec minority_game(int players);
GameSpec kolkata_game();

struct PayoffOperator {
    int player = 1;
    ComplexMatrix matrix;  // diagonal in the computational basis
};

struct PayoffReport {
    std::vector<double> payoffs;  // player 1 first
    std::map<BasisLabel, double> probabilities;
    double fidelity = 1.0;
};

enum class PdPlayer { Alice, Bob };

ComplexMatrix entangler_j(Entangler kind = Entangler::SigmaX);

// J^dagger (U_B (x) U_A) J |00>.
PureState play_pd(const ComplexMatrix& u_alice, const ComplexMatrix& u_bob,
                  Entangler kind = Entangler::SigmaX);

PayoffOperator payoff_operator(const GameSpec& game, int player);
PayoffOperator pd_payoff_operator(PdPlayer player);
PayoffOperator minority_payoff_operator(int players, int player);
PayoffOperator kolkata_payoff_operator(int player);

// The shared state handed to players before their moves (|00> for the
// prisoner's dilemma, whose entangler is applied inside play_pd).
PureState initial_state(const GameSpec& game);

// ops are ordered player-n-first, matching U_n (x) ... (x) U_1.
PayoffReport play_profile(const GameSpec& game, std::span<const ComplexMatrix> ops, double fidelity = 1.0);
PayoffReport play_symmetric(const GameSpec& game, const ComplexMatrix& u, double fidelity = 1.0);

// Expected payoff per player when every player picks uniformly at random.
std::vector<Rational> classical_uniform_payoff(const GameSpec& game);

struct EmbeddingCase {
    std::vector<int> choices;  // classical_set index per player, player-n-first
    std::string outcome;       // expected classical outcome label
    std::vector<double> expected;
    std::vector<double> observed;
    bool match = false;
};

struct EmbeddingReport {
    bool ok = true;
    std::vector<EmbeddingCase> cases;
};

EmbeddingReport classical_embedding_check(const GameSpec& game);

// {game, n, d, payoffs: {"<digits>": [...]}} with digit strings player-n-first.
nlohmann::ordered_json payoff_table_json(const GameSpec& game);
// Rebuilds the named game and checks the supplied table matches it exactly.
GameSpec game_from_json(const nlohmann::json& doc);

}  // namespace qgames
