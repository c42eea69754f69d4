#include <numbers>
#include <random>

#include "doctest.h"
#include "qgames/errors.hpp"
#include "qgames/games.hpp"
#include "qgames/quantum.hpp"
#include "qgames/strategy.hpp"
#include "test_support.hpp"

using namespace qgames;

namespace {

// Reduced diagonal of player `player` by summing |a|^2 over all other digits.
std::vector<double> reduced_diagonal(const PureState& psi, int player) {
    std::vector<double> out(static_cast<std::size_t>(psi.shape().d), 0.0);
    for (std::size_t idx = 0; idx < psi.shape().dimension(); ++idx) {
        const auto label = BasisLabel::from_index(psi.shape(), idx);
        out[static_cast<std::size_t>(label.digit_of_player(player))] += std::norm(psi.amplitudes()[idx]);
    }
    return out;
}

}  // namespace

TEST_CASE("basis states follow the |x_n ... x_1> index convention") {
    const SystemShape two(2, 2);
    CHECK(basis_state(two, BasisLabel::parse(two, "10")).amplitudes() == ComplexVector{0, 0, 1, 0});
    const SystemShape one(1, 3);
    CHECK(basis_state(one, BasisLabel::parse(one, "2")).amplitudes() == ComplexVector{0, 0, 1});

    const SystemShape three(3, 3);
    const auto label = BasisLabel::parse(three, "120");
    // Player i contributes digit * d^(i-1): players 3,2,1 carry digits 1,2,0.
    const std::size_t oracle = 1 * 9 + 2 * 3 + 0 * 1;
    CHECK(label.index() == oracle);
    CHECK(basis_state(three, label).amplitudes()[15] == Complex{1});
    CHECK(label.digit_of_player(1) == 0);
    CHECK(label.digit_of_player(3) == 1);
    CHECK(BasisLabel::from_index(three, 15) == label);

    CHECK_THROWS_AS(BasisLabel::parse(three, "130"), InputError);
    CHECK_THROWS_AS(BasisLabel::parse(three, "12"), InputError);
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(SystemShape(0, 2), InputError);
    CHECK_THROWS_AS(SystemShape(2, 1), InputError);
    CHECK_THROWS_AS(SystemShape(10, 3), InputError);
    CHECK(SystemShape(9, 3).dimension() == 19683);
}

TEST_CASE("GHZ and Bell states") {
    const double h = std::sqrt(0.5);
    CHECK(max_abs_diff(ghz(SystemShape(2, 2)).amplitudes(), ComplexVector{h, 0, 0, h}) < 1e-15);

    const auto g4 = ghz(SystemShape(4, 2));
    CHECK(std::abs(g4.amplitudes()[0] - h) < 1e-15);
    CHECK(std::abs(g4.amplitudes()[15] - h) < 1e-15);
    CHECK(std::abs(g4.amplitudes().norm() - 1.0) < 1e-15);

    const auto g33 = ghz(SystemShape(3, 3));
    const double t = 1.0 / std::sqrt(3.0);
    for (std::size_t idx : {0u, 13u, 26u}) CHECK(std::abs(g33.amplitudes()[idx] - t) < 1e-15);
    // d >= 3 ignores the phase argument.
    CHECK(ghz(SystemShape(3, 3), 1.0).amplitudes() == g33.amplitudes());

    const auto phased = ghz(SystemShape(2, 2), std::numbers::pi / 2);
    CHECK(std::abs(phased.amplitudes()[3] - Complex{0, h}) < 1e-15);

    CHECK(max_abs_diff(bell(BellKind::PhiMinus).amplitudes(), ComplexVector{h, 0, 0, -h}) < 1e-15);
    CHECK(max_abs_diff(bell(BellKind::PsiPlus).amplitudes(), ComplexVector{0, h, h, 0}) < 1e-15);
    for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
        const auto b = bell(kind);
        CHECK(std::abs(b.amplitudes().norm() - 1.0) < 1e-15);
        for (int player : {1, 2}) {
            const auto diag = reduced_diagonal(b, player);
            CHECK(std::abs(diag[0] - 0.5) < 1e-15);
            CHECK(std::abs(diag[1] - 0.5) < 1e-15);
        }
    }
}

TEST_CASE("local operators act on the right tensor factors") {
    const SystemShape two(2, 2);
    const auto ket00 = basis_state(two, BasisLabel::parse(two, "00"));
    const std::vector<ComplexMatrix> ids(2, ComplexMatrix::identity(2));
    CHECK(apply_local_pure(ids, ket00).amplitudes() == ket00.amplitudes());
    const std::vector<ComplexMatrix> flips(2, pauli(Pauli::X));
    CHECK(apply_local_pure(flips, ket00).amplitudes() == ComplexVector{0, 0, 0, 1});

    // Only player 1 flips: |00> -> |01>.
    const std::vector<ComplexMatrix> one_flip{ComplexMatrix::identity(2), pauli(Pauli::X)};
    CHECK(apply_local_pure(one_flip, ket00).amplitudes() == ComplexVector{0, 1, 0, 0});

    const SystemShape three(3, 3);
    const auto ket000 = basis_state(three, BasisLabel::parse(three, "000"));
    const std::vector<ComplexMatrix> shifts{cyclic_s(1), cyclic_s(2), cyclic_s(0)};
    CHECK(apply_local_pure(shifts, ket000).amplitudes() ==
          basis_state(three, BasisLabel::parse(three, "120")).amplitudes());
}

TEST_CASE("factor-wise application agrees with the explicit Kronecker product") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const bool qutrit = trial % 2 == 1;
        const SystemShape shape = qutrit ? SystemShape(3, 3) : SystemShape(4, 2);
        const PureState psi(shape, test::random_unit_vector(rng, shape.dimension()));
        std::vector<ComplexMatrix> ops;
        for (int p = 0; p < shape.n; ++p)
            ops.push_back(test::random_strategy(rng, qutrit ? StrategyFamily::FrameSU3 : StrategyFamily::FullSU2).matrix());

        const ComplexVector fast = apply_local_pure(ops, psi).amplitudes();
        const ComplexVector slow = matvec(test::kron_all(ops), psi.amplitudes());
        CHECK(max_abs_diff(fast, slow) < kAlgebraTol);
        CHECK(std::abs(fast.norm() - 1.0) < kAcceptTol);

        const DensityMatrix rho = DensityMatrix::from_pure(psi);
        const ComplexMatrix full = test::kron_all(ops);
        const ComplexMatrix expected = matmul(full, matmul(rho.matrix(), dagger(full)));
        const DensityMatrix got = conjugate_density(ops, rho);
        CHECK(max_abs_diff(got.matrix(), expected) < kAlgebraTol);
        CHECK(max_abs_diff(got.matrix(), outer(fast, fast)) < kAlgebraTol);
        CHECK(std::abs(trace(got.matrix()) - Complex{1}) < kAcceptTol);
        CHECK(is_hermitian(got.matrix()));
    }
}

TEST_CASE("conjugation is blind to global phases") {
    std::mt19937_64 rng(9);
    const SystemShape shape(3, 3);
    const DensityMatrix rho = add_noise(ghz(shape), 0.7);
    std::vector<ComplexMatrix> ops, phased;
    for (int p = 0; p < 3; ++p) {
        ops.push_back(test::random_strategy(rng, StrategyFamily::FrameSU3).matrix());
        phased.push_back(std::polar(1.0, 0.3 + p) * ops.back());
    }
    CHECK(max_abs_diff(conjugate_density(ops, rho).matrix(), conjugate_density(phased, rho).matrix()) < kAlgebraTol);

    const std::vector<ComplexMatrix> ids(3, ComplexMatrix::identity(3));
    CHECK(max_abs_diff(conjugate_density(ids, rho).matrix(), rho.matrix()) < kAlgebraTol);
}

TEST_CASE("non-unitary operators are rejected in strict mode") {
    const SystemShape two(2, 2);
    const auto psi = ghz(two);
    const std::vector<ComplexMatrix> bad{ComplexMatrix{{1, 1}, {0, 1}}, ComplexMatrix::identity(2)};
    CHECK_THROWS_AS(apply_local_pure(bad, psi), InputError);
    CHECK_THROWS_AS(conjugate_density(bad, DensityMatrix::from_pure(psi)), InputError);
    // Lenient mode warns and renormalizes.
    const auto out = apply_local_pure(bad, psi, UnitarityCheck::Lenient);
    CHECK(std::abs(out.amplitudes().norm() - 1.0) < kAcceptTol);

    const std::vector<ComplexMatrix> wrong_count(3, ComplexMatrix::identity(2));
    CHECK_THROWS_AS(apply_local_pure(wrong_count, psi), InputError);
    const std::vector<ComplexMatrix> wrong_dim(2, ComplexMatrix::identity(3));
    CHECK_THROWS_AS(apply_local_pure(wrong_dim, psi), InputError);
}

TEST_CASE("fidelity noise") {
    const SystemShape k(3, 3);
    const auto psi = ghz(k);
    CHECK(max_abs_diff(add_noise(psi, 1.0).matrix(), outer(psi.amplitudes(), psi.amplitudes())) < 1e-15);
    const auto mixed = add_noise(psi, 0.0);
    CHECK(max_abs_diff(mixed.matrix(), Complex{1.0 / 27} * ComplexMatrix::identity(27)) < 1e-15);
    // 0.5 * 1/3 + 0.5/27 = 5/27
    CHECK(std::abs(add_noise(psi, 0.5).matrix()(0, 0) - Complex{5.0 / 27}) < 1e-15);
    for (double f : {0.0, 0.2, 0.9, 1.0}) CHECK(std::abs(trace(add_noise(psi, f).matrix()) - Complex{1}) < kAcceptTol);
    CHECK_THROWS_AS(add_noise(psi, -0.1), InputError);
    CHECK_THROWS_AS(add_noise(psi, 1.5), InputError);
}

TEST_CASE("expectation values") {
    const auto rho = DensityMatrix::from_pure(bell(BellKind::PhiPlus));
    CHECK(std::abs(expectation(rho, ComplexMatrix::identity(4)) - 1.0) < 1e-15);
    const ComplexVector ket00{1, 0, 0, 0};
    CHECK(std::abs(expectation(rho, outer(ket00, ket00)) - 0.5) < 1e-15);
    CHECK_THROWS_AS(expectation(rho, ComplexMatrix::identity(2)), InputError);
    const Complex i{0, 1};
    // Anti-Hermitian observable gives an imaginary trace.
    CHECK_THROWS_AS(expectation(rho, i * ComplexMatrix::identity(4)), NumericError);

    const auto game = kolkata_game();
    const auto u = su3_frame(kolkata_optimum_params());
    const std::vector<ComplexMatrix> ops(3, u);
    const auto fin = conjugate_density(ops, add_noise(ghz(game.shape), 1.0));
    CHECK(std::abs(expectation(fin, kolkata_payoff_operator(1).matrix) - 2.0 / 3.0) < kAcceptTol);
}

TEST_CASE("noise acts affinely on expectations") {
    std::mt19937_64 rng(13);
    const SystemShape shape(4, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi(shape, test::random_unit_vector(rng, 16));
        const auto p = test::random_matrix(rng, 16, 16);
        const ComplexMatrix herm = Complex{0.5} * (p + dagger(p));
        const double f = (trial + 0.5) / 20.0;
        const double lhs = expectation(add_noise(psi, f), herm);
        const double pure = expectation(DensityMatrix::from_pure(psi), herm);
        CHECK(std::abs(lhs - (f * pure + (1 - f) * trace(herm).real() / 16.0)) < kAlgebraTol);
    }
}

TEST_CASE("outcome probabilities") {
    const auto probs = outcome_probabilities(add_noise(ghz(SystemShape(3, 3)), 1.0));
    double total = 0.0;
    for (const auto& [label, p] : probs) {
        total += p;
        const auto s = label.str();
        const bool diagonal = s == "000" || s == "111" || s == "222";
        CHECK(std::abs(p - (diagonal ? 1.0 / 3 : 0.0)) < 1e-15);
    }
    CHECK(std::abs(total - 1.0) < kAcceptTol);

    for (const auto& [label, p] : outcome_probabilities(add_noise(ghz(SystemShape(3, 3)), 0.0)))
        CHECK(std::abs(p - 1.0 / 27) < 1e-15);
}

TEST_CASE("density matrix invariants are enforced") {
    const SystemShape two(2, 2);
    CHECK_THROWS_AS(DensityMatrix(two, ComplexMatrix::identity(4)), InputError);  // trace 4
    CHECK_THROWS_AS(DensityMatrix(two, ComplexMatrix{{0.5, 1, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
                    InputError);  // not Hermitian
    CHECK_THROWS_AS(DensityMatrix(two, ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5, 0, 0})), InputError);
    CHECK_THROWS_AS(PureState(two, ComplexVector{1, 1, 0, 0}), InputError);
}
