#include <numbers>
#include <random>

#include "doctest.h"
#include "qgames/errors.hpp"
#include "qgames/games.hpp"
#include "qgames/solver.hpp"
#include "qgames/strategy.hpp"
#include "test_support.hpp"

using namespace qgames;
using std::numbers::pi;

namespace {

const Complex kI{0, 1};

std::vector<double> diag(const ComplexMatrix& m) {
    std::vector<double> out;
    for (std::size_t k = 0; k < m.rows(); ++k) out.push_back(m(k, k).real());
    return out;
}

// Minority rule by direct counting: a player wins iff strictly fewer players share their choice.
int minority_oracle(const std::string& digits, int player) {
    const std::size_t n = digits.size();
    const char mine = digits[n - static_cast<std::size_t>(player)];
    const auto same = std::count(digits.begin(), digits.end(), mine);
    return 2 * same < static_cast<long>(n) ? 1 : 0;
}

std::vector<ComplexMatrix> same_ops(const ComplexMatrix& u, int n) { return std::vector<ComplexMatrix>(n, u); }

}  // namespace

TEST_CASE("entanglers") {
    const double h = std::sqrt(0.5);
    for (auto kind : {Entangler::SigmaX, Entangler::EisertD}) {
        const auto j = entangler_j(kind);
        CHECK(max_abs_diff(matvec(j, ComplexVector{1, 0, 0, 0}), ComplexVector{h, 0, 0, h * kI}) < 1e-15);
        CHECK(max_abs_diff(matmul(j, dagger(j)), ComplexMatrix::identity(4)) < kAlgebraTol);
    }
    const auto j = entangler_j();
    const auto xx = kron(pauli(Pauli::X), pauli(Pauli::X));
    CHECK(max_abs_diff(matmul(j, matmul(xx, dagger(j))), xx) < kAlgebraTol);
}

TEST_CASE("two-player protocol outcomes") {
    const auto id = ComplexMatrix::identity(2);
    const auto x = pauli(Pauli::X);
    CHECK(max_abs_diff(play_pd(id, id).amplitudes(), ComplexVector{1, 0, 0, 0}) < kAlgebraTol);
    // Alice is the low digit.
    CHECK(max_abs_diff(play_pd(x, id).amplitudes(), ComplexVector{0, 1, 0, 0}) < kAlgebraTol);
    CHECK(max_abs_diff(play_pd(id, x).amplitudes(), ComplexVector{0, 0, 1, 0}) < kAlgebraTol);
    const auto q = su2_eisert(0, pi / 2);
    // Q (x) Q returns to |00> up to phase under both entanglers.
    for (auto kind : {Entangler::SigmaX, Entangler::EisertD})
        CHECK(std::norm(play_pd(q, q, kind).amplitudes()[0]) == doctest::Approx(1.0));
}

TEST_CASE("payoff operators") {
    CHECK(diag(pd_payoff_operator(PdPlayer::Alice).matrix) == std::vector<double>{3, 5, 0, 1});
    CHECK(diag(pd_payoff_operator(PdPlayer::Bob).matrix) == std::vector<double>{3, 0, 5, 1});

    for (int n : {2, 3, 4, 5}) {
        const SystemShape shape(n, 2);
        for (int player = 1; player <= n; ++player) {
            const auto m = minority_payoff_operator(n, player).matrix;
            CHECK(is_hermitian(m));
            for (std::size_t idx = 0; idx < shape.dimension(); ++idx)
                CHECK(m(idx, idx).real() == minority_oracle(BasisLabel::from_index(shape, idx).str(), player));
        }
    }
    // n = 4, player 1 wins only at 0001 and 1110.
    const auto m4 = diag(minority_payoff_operator(4, 1).matrix);
    CHECK(std::count(m4.begin(), m4.end(), 1.0) == 2);
    CHECK(m4[1] == 1.0);
    CHECK(m4[14] == 1.0);
    const auto m2 = diag(minority_payoff_operator(2, 1).matrix);
    CHECK(std::count(m2.begin(), m2.end(), 0.0) == 4);

    const SystemShape k(3, 3);
    const auto k1 = kolkata_payoff_operator(1).matrix;
    int rank = 0;
    for (double v : diag(k1)) rank += v != 0.0;
    CHECK(rank == 12);
    const auto idx012 = BasisLabel::parse(k, "012").index();
    const auto idx220 = BasisLabel::parse(k, "220").index();
    for (int player = 1; player <= 3; ++player) {
        CHECK(kolkata_payoff_operator(player).matrix(idx012, idx012) == Complex{1});
        CHECK(kolkata_payoff_operator(player).matrix(idx220, idx220) == Complex{player == 1 ? 1.0 : 0.0});
    }
    CHECK_THROWS_AS(kolkata_payoff_operator(4), InputError);
    CHECK_THROWS_AS(minority_payoff_operator(4, 0), InputError);
}

TEST_CASE("symmetric play") {
    const auto mg = minority_game(4);
    for (double p : play_symmetric(mg, ComplexMatrix::identity(2)).payoffs) CHECK(p == doctest::Approx(0.0));
    const auto opt = su2_full(pi / 2, -pi / 8, pi / 8);
    for (double p : play_symmetric(mg, opt).payoffs) CHECK(p == doctest::Approx(0.25));

    const auto kg = kolkata_game();
    for (double p : play_symmetric(kg, ComplexMatrix::identity(3)).payoffs) CHECK(p == doctest::Approx(0.0));
    for (double p : play_symmetric(kg, ComplexMatrix::identity(3), 0.0).payoffs) CHECK(p == doctest::Approx(4.0 / 9));
    const auto u = su3_frame(kolkata_optimum_params());
    for (double p : play_symmetric(kg, u).payoffs) CHECK(p == doctest::Approx(2.0 / 3).epsilon(1e-9));
    for (double p : play_symmetric(kg, u, 0.5).payoffs) CHECK(p == doctest::Approx(5.0 / 9).epsilon(1e-9));

    const auto pd = prisoners_dilemma();
    const auto q = su2_eisert(0, pi / 2);
    CHECK(play_symmetric(pd, q).payoffs == std::vector<double>{3, 3});
    CHECK_THROWS_AS(play_symmetric(pd, q, 0.5), InputError);
}

TEST_CASE("profile play") {
    const auto kg = kolkata_game();
    const std::vector<ComplexMatrix> shifts{cyclic_s(1), cyclic_s(2), cyclic_s(0)};
    for (double p : play_profile(kg, shifts).payoffs) CHECK(p == doctest::Approx(1.0));

    const auto pd = prisoners_dilemma();
    const std::vector<ComplexMatrix> bob_i_alice_x{ComplexMatrix::identity(2), pauli(Pauli::X)};
    const auto r = play_profile(pd, bob_i_alice_x);
    CHECK(r.payoffs[0] == doctest::Approx(5.0));
    CHECK(r.payoffs[1] == doctest::Approx(0.0));

    // All-identity on GHZ: average of the two all-equal outcomes, which pay nothing in minority games.
    const auto mg = minority_game(3);
    const auto ids = same_ops(ComplexMatrix::identity(2), 3);
    for (double p : play_profile(mg, ids).payoffs) CHECK(p == doctest::Approx(0.0));
    const auto probs = play_profile(mg, ids).probabilities;
    CHECK(probs.at(BasisLabel::parse(mg.shape, "000")) == doctest::Approx(0.5));
    CHECK(probs.at(BasisLabel::parse(mg.shape, "111")) == doctest::Approx(0.5));

    CHECK_THROWS_AS(play_profile(mg, same_ops(ComplexMatrix::identity(2), 2)), InputError);
    CHECK_THROWS_AS(play_profile(mg, ids, 1.1), InputError);
}

TEST_CASE("payoffs are reproducible from the outcome distribution") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const bool kolkata = trial % 2 == 0;
        const auto game = kolkata ? kolkata_game() : minority_game(4);
        std::vector<ComplexMatrix> ops;
        for (int p = 0; p < game.shape.n; ++p)
            ops.push_back(
                test::random_strategy(rng, kolkata ? StrategyFamily::FrameSU3 : StrategyFamily::FullSU2).matrix());
        const double f = std::uniform_real_distribution<double>(0, 1)(rng);
        const auto r = play_profile(game, ops, f);
        double total_prob = 0.0, total_payoff = 0.0;
        std::vector<double> from_probs(static_cast<std::size_t>(game.shape.n), 0.0);
        for (const auto& [label, prob] : r.probabilities) {
            total_prob += prob;
            for (int pl = 1; pl <= game.shape.n; ++pl)
                from_probs[pl - 1] += prob * boost::rational_cast<double>(game.payoff(label, pl));
        }
        CHECK(total_prob == doctest::Approx(1.0).epsilon(1e-9));
        for (int pl = 0; pl < game.shape.n; ++pl) {
            CHECK(std::abs(from_probs[pl] - r.payoffs[pl]) < kAcceptTol);
            total_payoff += r.payoffs[pl];
        }
        if (!kolkata) CHECK(total_payoff <= 1.0 + kAcceptTol);  // at most one strict minority side wins
    }
}

TEST_CASE("payoffs are affine in the fidelity") {
    std::mt19937_64 rng(29);
    const auto kg = kolkata_game();
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = test::random_strategy(rng, StrategyFamily::FrameSU3).matrix();
        const auto pure = play_symmetric(kg, u, 1.0).payoffs;
        const auto mixed = play_symmetric(kg, u, 0.0).payoffs;
        const double f = 0.05 * trial;
        const auto mid = play_symmetric(kg, u, f).payoffs;
        for (std::size_t p = 0; p < 3; ++p) CHECK(std::abs(mid[p] - (f * pure[p] + (1 - f) * mixed[p])) < kAcceptTol);
    }
}

TEST_CASE("symmetric profiles give symmetric payoffs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto mg = minority_game(4);
        const auto u = test::random_strategy(rng, StrategyFamily::FullSU2).matrix();
        const auto pay = play_symmetric(mg, u, 0.7).payoffs;
        for (double p : pay) CHECK(std::abs(p - pay[0]) < kAcceptTol);
    }
}

TEST_CASE("uniform classical payoffs") {
    const auto m4 = classical_uniform_payoff(minority_game(4));
    for (const auto& r : m4) CHECK(r == Rational(1, 8));
    for (const auto& r : classical_uniform_payoff(kolkata_game())) CHECK(r == Rational(4, 9));
    for (const auto& r : classical_uniform_payoff(prisoners_dilemma())) CHECK(r == Rational(9, 4));
    for (const auto& r : classical_uniform_payoff(minority_game(2))) CHECK(r == Rational(0));
}

TEST_CASE("classical moves reproduce the classical games") {
    for (const auto& game : {prisoners_dilemma(), prisoners_dilemma(Entangler::EisertD), kolkata_game(), minority_game(4)}) {
        const auto report = classical_embedding_check(game);
        CHECK(report.ok);
        CHECK(report.cases.size() == game.shape.dimension());
    }
}

TEST_CASE("payoff tables round-trip through JSON") {
    for (const auto& game : {prisoners_dilemma(), kolkata_game(), minority_game(3)}) {
        const auto doc = payoff_table_json(game);
        const auto back = game_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(back.name() == game.name());
        CHECK(back.payoff_table == game.payoff_table);
    }
    auto doc = nlohmann::json::parse(payoff_table_json(kolkata_game()).dump());
    doc["payoffs"]["012"][0] = 0;
    CHECK_THROWS_AS(game_from_json(doc), InputError);
    CHECK_THROWS_AS(game_from_json(nlohmann::json{{"game", "chess"}}), InputError);
}

TEST_CASE("density and state-vector evaluation routes agree") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const bool kolkata = trial % 2 == 0;
        const auto game = kolkata ? kolkata_game() : minority_game(4);
        std::vector<StrategySpec> specs;
        std::vector<ComplexMatrix> ops;
        for (int p = 0; p < game.shape.n; ++p) {
            specs.push_back(test::random_strategy(rng, kolkata ? StrategyFamily::FrameSU3 : StrategyFamily::FullSU2));
            ops.push_back(specs.back().matrix());
        }
        const double f = 0.1 * (trial % 11);
        const auto slow = play_profile(game, ops, f).payoffs;
        const auto fast = profile_payoffs(game, specs, f);
        for (std::size_t p = 0; p < slow.size(); ++p) CHECK(std::abs(slow[p] - fast[p]) < kAcceptTol);
    }
}
