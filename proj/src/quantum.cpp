#include "qgames/quantum.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>

#include "qgames/errors.hpp"

namespace qgames {

SystemShape::SystemShape(int players, int choices, std::size_t cap) : n(players), d(choices) {
    if (n < 1) throw InputError("player count must be >= 1");
    if (d < 2) throw InputError("local dimension must be >= 2");
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::size_t>(d);
        if (dim > cap)
            throw InputError("Hilbert dimension " + std::to_string(d) + "^" + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap));
    }
}

std::size_t SystemShape::dimension() const {
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
    return dim;
}

BasisLabel::BasisLabel(const SystemShape& shape, std::vector<int> digits)
    : shape_(shape), digits_(std::move(digits)) {
    if (static_cast<int>(digits_.size()) != shape_.n)
        throw InputError("basis label needs " + std::to_string(shape_.n) + " digits, got " +
                         std::to_string(digits_.size()));
    for (int digit : digits_)
        if (digit < 0 || digit >= shape_.d)
            throw InputError("basis digit " + std::to_string(digit) + " outside [0," +
                             std::to_string(shape_.d) + ")");
}

BasisLabel BasisLabel::parse(const SystemShape& shape, std::string_view text) {
    std::vector<int> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9') throw InputError("basis label '" + std::string(text) + "' is not a digit string");
        digits.push_back(c - '0');
    }
    return BasisLabel(shape, std::move(digits));
}

BasisLabel BasisLabel::from_index(const SystemShape& shape, std::size_t index) {
    if (index >= shape.dimension()) throw InputError("basis index out of range");
    std::vector<int> digits(static_cast<std::size_t>(shape.n));
    for (int pos = shape.n - 1; pos >= 0; --pos) {
        digits[static_cast<std::size_t>(pos)] = static_cast<int>(index % static_cast<std::size_t>(shape.d));
        index /= static_cast<std::size_t>(shape.d);
    }
    return BasisLabel(shape, std::move(digits));
}

std::size_t BasisLabel::index() const {
    std::size_t idx = 0;
    for (int digit : digits_) idx = idx * static_cast<std::size_t>(shape_.d) + static_cast<std::size_t>(digit);
    return idx;
}

int BasisLabel::digit_of_player(int player) const {
    if (player < 1 || player > shape_.n) throw InputError("player index out of range");
    return digits_[static_cast<std::size_t>(shape_.n - player)];
}

std::string BasisLabel::str() const {
    std::string s;
    s.reserve(digits_.size());
    for (int digit : digits_) s.push_back(static_cast<char>('0' + digit));
    return s;
}

PureState::PureState(SystemShape shape, ComplexVector amplitudes)
    : shape_(shape), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != shape_.dimension()) throw InputError("state dimension does not match shape");
    if (std::abs(amplitudes_.norm_squared() - 1.0) >= kAcceptTol)
        throw InputError("state is not normalized (norm^2 = " + std::to_string(amplitudes_.norm_squared()) + ")");
}

DensityMatrix::DensityMatrix(SystemShape shape, ComplexMatrix matrix)
    : shape_(shape), matrix_(std::move(matrix)) {
    const std::size_t dim = shape_.dimension();
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw InputError("density matrix dimension does not match shape");
    if (!is_hermitian(matrix_, kAlgebraTol)) throw InputError("density matrix is not Hermitian");
    if (std::abs(trace(matrix_) - Complex{1.0}) >= kAcceptTol) throw InputError("density matrix trace is not 1");
    for (std::size_t i = 0; i < dim; ++i)
        if (matrix_(i, i).real() < -kAcceptTol) throw InputError("density matrix has negative population");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.shape(), outer(psi.amplitudes(), psi.amplitudes()));
}

PureState basis_state(const SystemShape& shape, const BasisLabel& label) {
    if (label.digits().size() != static_cast<std::size_t>(shape.n)) throw InputError("label does not fit shape");
    ComplexVector v(shape.dimension());
    v[label.index()] = 1.0;
    return PureState(shape, std::move(v));
}

PureState ghz(const SystemShape& shape, double phase) {
    const std::size_t dim = shape.dimension();
    // Index of |k k ... k> is k * (1 + d + ... + d^(n-1)).
    std::size_t repunit = 0;
    for (int i = 0; i < shape.n; ++i) repunit = repunit * static_cast<std::size_t>(shape.d) + 1;

    ComplexVector v(dim);
    if (shape.d == 2) {
        v[0] = std::numbers::sqrt2 / 2.0;
        v[repunit] = std::polar(std::numbers::sqrt2 / 2.0, phase);
    } else {
        const double amp = 1.0 / std::sqrt(static_cast<double>(shape.d));
        for (int k = 0; k < shape.d; ++k) v[static_cast<std::size_t>(k) * repunit] = amp;
    }
    return PureState(shape, std::move(v));
}

PureState bell(BellKind kind) {
    const double h = std::numbers::sqrt2 / 2.0;
    ComplexVector v(4);
    switch (kind) {
        case BellKind::PhiPlus: v[0] = h; v[3] = h; break;
        case BellKind::PhiMinus: v[0] = h; v[3] = -h; break;
        case BellKind::PsiPlus: v[1] = h; v[2] = h; break;
        case BellKind::PsiMinus: v[1] = h; v[2] = -h; break;
    }
    return PureState(SystemShape(2, 2), std::move(v));
}

void check_local_ops(std::span<const ComplexMatrix> ops, const SystemShape& shape, UnitarityCheck check) {
    if (static_cast<int>(ops.size()) != shape.n)
        throw InputError("expected " + std::to_string(shape.n) + " local operators, got " + std::to_string(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto& op = ops[k];
        if (op.rows() != static_cast<std::size_t>(shape.d) || op.cols() != static_cast<std::size_t>(shape.d))
            throw InputError("local operator " + std::to_string(k) + " is not " + std::to_string(shape.d) + "x" +
                             std::to_string(shape.d));
        const double residual = unitarity_residual(op);
        if (residual >= kAcceptTol) {
            const std::string msg = "local operator for player " + std::to_string(shape.n - static_cast<int>(k)) +
                                    " is not unitary (residual " + std::to_string(residual) + ")";
            if (check == UnitarityCheck::Strict) throw InputError(msg);
            std::cerr << "warning: " << msg << '\n';
        }
    }
}

void apply_local_inplace(std::span<const ComplexMatrix> ops, const SystemShape& shape,
                         std::span<Complex> amplitudes) {
    const auto d = static_cast<std::size_t>(shape.d);
    const std::size_t dim = amplitudes.size();
    std::vector<Complex> gathered(d);
    std::size_t stride = 1;
    // Player 1 (last op) sits at stride 1, player n (first op) at stride d^(n-1).
    for (std::size_t k = ops.size(); k-- > 0; stride *= d) {
        const ComplexMatrix& op = ops[k];
        const std::size_t block = stride * d;
        for (std::size_t base = 0; base < dim; base += block) {
            for (std::size_t offset = 0; offset < stride; ++offset) {
                const std::size_t first = base + offset;
                for (std::size_t j = 0; j < d; ++j) gathered[j] = amplitudes[first + j * stride];
                for (std::size_t i = 0; i < d; ++i) {
                    Complex s{};
                    for (std::size_t j = 0; j < d; ++j) s += op(i, j) * gathered[j];
                    amplitudes[first + i * stride] = s;
                }
            }
        }
    }
}

PureState apply_local_pure(std::span<const ComplexMatrix> ops, const PureState& psi, UnitarityCheck check) {
    check_local_ops(ops, psi.shape(), check);
    ComplexVector out = psi.amplitudes();
    apply_local_inplace(ops, psi.shape(), out.entries());
    if (check == UnitarityCheck::Lenient) {
        const double norm = out.norm();
        if (norm == 0.0) throw NumericError("local operators annihilated the state");
        out = Complex{1.0 / norm} * out;
    }
    return PureState(psi.shape(), std::move(out));
}

namespace {

// Returns (U M) for the full local product U, one column at a time.
ComplexMatrix left_apply(std::span<const ComplexMatrix> ops, const SystemShape& shape, const ComplexMatrix& m) {
    const std::size_t dim = m.rows();
    ComplexMatrix out(dim, dim);
    std::vector<Complex> column(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) column[r] = m(r, c);
        apply_local_inplace(ops, shape, column);
        for (std::size_t r = 0; r < dim; ++r) out(r, c) = column[r];
    }
    return out;
}

}  // namespace

DensityMatrix conjugate_density(std::span<const ComplexMatrix> ops, const DensityMatrix& rho, UnitarityCheck check) {
    check_local_ops(ops, rho.shape(), check);
    // U rho U^dagger = (U (U rho)^dagger)^dagger
    const ComplexMatrix half = left_apply(ops, rho.shape(), rho.matrix());
    ComplexMatrix full = dagger(left_apply(ops, rho.shape(), dagger(half)));
    if (check == UnitarityCheck::Lenient) {
        const Complex tr = trace(full);
        if (std::abs(tr) == 0.0) throw NumericError("local operators annihilated the state");
        full = Complex{1.0} / tr * full;
    }
    // Round-off leaves a ~1e-16 anti-Hermitian part; symmetrize so the invariant holds exactly.
    const ComplexMatrix herm = Complex{0.5} * (full + dagger(full));
    return DensityMatrix(rho.shape(), herm);
}

DensityMatrix add_noise(const PureState& psi, double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw InputError("fidelity " + std::to_string(fidelity) + " outside [0,1]");
    const std::size_t dim = psi.shape().dimension();
    ComplexMatrix m = Complex{fidelity} * outer(psi.amplitudes(), psi.amplitudes());
    const double floor = (1.0 - fidelity) / static_cast<double>(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) += floor;
    return DensityMatrix(psi.shape(), std::move(m));
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& observable) {
    const ComplexMatrix& m = rho.matrix();
    if (observable.rows() != m.rows() || observable.cols() != m.cols())
        throw InputError("observable dimension does not match state");
    // Tr(P rho) = sum_ij P_ij rho_ji
    Complex s{};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += observable(i, j) * m(j, i);
    if (std::abs(s.imag()) >= kAcceptTol)
        throw NumericError("expectation has imaginary part " + std::to_string(s.imag()));
    return s.real();
}

std::map<BasisLabel, double> outcome_probabilities(const DensityMatrix& rho) {
    std::map<BasisLabel, double> probs;
    const std::size_t dim = rho.shape().dimension();
    for (std::size_t i = 0; i < dim; ++i)
        probs.emplace(BasisLabel::from_index(rho.shape(), i), rho.matrix()(i, i).real());
    return probs;
}

std::map<BasisLabel, double> outcome_probabilities(const PureState& psi) {
    std::map<BasisLabel, double> probs;
    const std::size_t dim = psi.shape().dimension();
    for (std::size_t i = 0; i < dim; ++i)
        probs.emplace(BasisLabel::from_index(psi.shape(), i), std::norm(psi.amplitudes()[i]));
    return probs;
}

}  // namespace qgames
