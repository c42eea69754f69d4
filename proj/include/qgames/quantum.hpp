#pragma once

// States of n players' subsystems, each of local dimension d.
//
// Player i (1-based) is the i-th tensor factor counted from the RIGHT of the ket
// label |x_n ... x_1>, i.e. contributes digit * d^(i-1) to the flat index.
// Operator lists are therefore ordered player-n-first, like the ket.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgames/linalg.hpp"

namespace qgames {

inline constexpr std::size_t kDefaultDimensionCap = 19683;  // 3^9

struct SystemShape {
    int n = 1;  // players
    int d = 2;  // choices per player

    SystemShape() = default;
    SystemShape(int players, int choices, std::size_t cap = kDefaultDimensionCap);

    std::size_t dimension() const;
    friend bool operator==(const SystemShape&, const SystemShape&) = default;
};

class BasisLabel {
public:
    // digits[0] belongs to player n, digits.back() to player 1.
    BasisLabel(const SystemShape& shape, std::vector<int> digits);
    static BasisLabel parse(const SystemShape& shape, std::string_view text);
    static BasisLabel from_index(const SystemShape& shape, std::size_t index);

    std::size_t index() const;
    // Digit chosen by player i (1-based).
    int digit_of_player(int player) const;
    const std::vector<int>& digits() const { return digits_; }
    std::string str() const;

    auto operator<=>(const BasisLabel& other) const { return digits_ <=> other.digits_; }
    bool operator==(const BasisLabel& other) const { return digits_ == other.digits_; }

private:
    SystemShape shape_;
    std::vector<int> digits_;
};

class PureState {
public:
    PureState(SystemShape shape, ComplexVector amplitudes);

    const SystemShape& shape() const { return shape_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }

private:
    SystemShape shape_;
    ComplexVector amplitudes_;
};

class DensityMatrix {
public:
    DensityMatrix(SystemShape shape, ComplexMatrix matrix);
    static DensityMatrix from_pure(const PureState& psi);

    const SystemShape& shape() const { return shape_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    SystemShape shape_;
    ComplexMatrix matrix_;
};

enum class UnitarityCheck { Strict, Lenient };

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState basis_state(const SystemShape& shape, const BasisLabel& label);

// d == 2: (|0..0> + e^{i phase}|1..1>)/sqrt2.  d >= 3: uniform sum over |k..k>,
// phase ignored.
PureState ghz(const SystemShape& shape, double phase = 0.0);

PureState bell(BellKind kind);

// (U_n (x) ... (x) U_1)|psi>, applied one factor at a time.
PureState apply_local_pure(std::span<const ComplexMatrix> ops, const PureState& psi,
                           UnitarityCheck check = UnitarityCheck::Strict);

// (U_n (x) ... (x) U_1) rho (U_n (x) ... (x) U_1)^dagger.
DensityMatrix conjugate_density(std::span<const ComplexMatrix> ops, const DensityMatrix& rho,
                                UnitarityCheck check = UnitarityCheck::Strict);

// f |psi><psi| + (1 - f)/D * I_D.
DensityMatrix add_noise(const PureState& psi, double fidelity);

// Tr(P rho); throws NumericError if the imaginary part reaches kAcceptTol.
double expectation(const DensityMatrix& rho, const ComplexMatrix& observable);

std::map<BasisLabel, double> outcome_probabilities(const DensityMatrix& rho);
std::map<BasisLabel, double> outcome_probabilities(const PureState& psi);

// In-place (U_n (x) ... (x) U_1) v for a raw amplitude buffer of length d^n.
// No unitarity or normalization checks; callers validate.
void apply_local_inplace(std::span<const ComplexMatrix> ops, const SystemShape& shape,
                         std::span<Complex> amplitudes);

void check_local_ops(std::span<const ComplexMatrix> ops, const SystemShape& shape,
                     UnitarityCheck check);

}  // namespace qgames
