#pragma once

// Parameterized families of single-player unitaries.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgames/linalg.hpp"

namespace qgames {

enum class StrategyFamily { FullSU2, EisertSU2, ClassicalBit, CyclicC3, FrameSU3 };

enum class Pauli { I, X, Y, Z };

struct ParamRange {
    double lo;
    double hi;
};

// Local dimension the family acts on (2 or 3).
int family_dimension(StrategyFamily family);
std::size_t family_param_count(StrategyFamily family);
bool family_is_discrete(StrategyFamily family);
// Closed parameter box used for validation and search.
std::vector<ParamRange> family_box(StrategyFamily family);
std::string_view family_tag(StrategyFamily family);  // "full", "eisert", ...
StrategyFamily family_from_tag(std::string_view tag);

struct StrategySpec {
    StrategyFamily family = StrategyFamily::FullSU2;
    std::vector<double> params;

    // Validates arity and ranges; throws InputError.
    StrategySpec(StrategyFamily fam, std::vector<double> values);

    ComplexMatrix matrix() const;
    // Canonical literal, e.g. "full:1.57079632679,-0.392699081699,0.392699081699".
    std::string literal() const;

    friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

// [[e^{ia}c, i e^{ib}s], [i e^{-ib}s, e^{-ia}c]] with c = cos(theta/2), s = sin(theta/2).
ComplexMatrix su2_full(double theta, double alpha, double beta);

// [[e^{ia}c, s], [-s, e^{-ia}c]].
ComplexMatrix su2_eisert(double theta, double alpha);

ComplexMatrix pauli(Pauli which);

// k-th power of the 3-cycle s = [[0,0,1],[1,0,0],[0,1,0]], which maps |j> to |j+1 mod 3>.
ComplexMatrix cyclic_s(int k);

struct FrameVectors {
    std::array<Complex, 3> x;
    std::array<Complex, 3> y;
    std::array<Complex, 3> z;
};

struct FrameParams {
    double phi, theta, chi, alpha1, alpha2, alpha3, beta1, beta2;
};

// x and y from the angle parameterization; z = conj(x) cross y.
FrameVectors frame_vectors(const FrameParams& p);

// Columns (x, conj(y), z).
ComplexMatrix su3_frame(const FrameParams& p);

// The Kolkata optimum: (pi/4, acos(1/sqrt3), pi/4, 5pi/18, 5pi/18, 5pi/18, pi/3, 11pi/6).
FrameParams kolkata_optimum_params();

// {I, sigma_x} for d = 2, {s^0, s^1, s^2} for d = 3.
std::vector<ComplexMatrix> classical_set(int d);

// Radian expression: decimal numbers, pi multiples and fractions ("-11pi/6",
// "3*pi/4", "pi"), or acos(1/sqrt3).
double parse_radians(std::string_view text);

// "full:a,b,c", "eisert:a,b", "bit:k", "c3:k", "su3:8 values" or "su3:table2".
StrategySpec parse_strategy(std::string_view literal);

}  // namespace qgames
