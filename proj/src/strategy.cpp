#include "qgames/strategy.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

#include "qgames/errors.hpp"

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;

Complex cis(double angle) { return std::polar(1.0, angle); }

double parse_decimal(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw InputError("bad number '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string format_param(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

int family_dimension(StrategyFamily family) {
    switch (family) {
        case StrategyFamily::FullSU2:
        case StrategyFamily::EisertSU2:
        case StrategyFamily::ClassicalBit: return 2;
        case StrategyFamily::CyclicC3:
        case StrategyFamily::FrameSU3: return 3;
    }
    throw InternalError("unknown strategy family");
}

std::size_t family_param_count(StrategyFamily family) {
    switch (family) {
        case StrategyFamily::FullSU2: return 3;
        case StrategyFamily::EisertSU2: return 2;
        case StrategyFamily::ClassicalBit:
        case StrategyFamily::CyclicC3: return 1;
        case StrategyFamily::FrameSU3: return 8;
    }
    throw InternalError("unknown strategy family");
}

bool family_is_discrete(StrategyFamily family) {
    return family == StrategyFamily::ClassicalBit || family == StrategyFamily::CyclicC3;
}

std::vector<ParamRange> family_box(StrategyFamily family) {
    switch (family) {
        case StrategyFamily::FullSU2: return {{0, kPi}, {-kPi, kPi}, {-kPi, kPi}};
        case StrategyFamily::EisertSU2: return {{0, kPi}, {0, kPi / 2}};
        case StrategyFamily::ClassicalBit: return {{0, 1}};
        case StrategyFamily::CyclicC3: return {{0, 2}};
        case StrategyFamily::FrameSU3:
            return {{0, kPi / 2}, {0, kPi / 2}, {0, kPi / 2}, {0, 2 * kPi},
                    {0, 2 * kPi}, {0, 2 * kPi}, {0, 2 * kPi}, {0, 2 * kPi}};
    }
    throw InternalError("unknown strategy family");
}

std::string_view family_tag(StrategyFamily family) {
    switch (family) {
        case StrategyFamily::FullSU2: return "full";
        case StrategyFamily::EisertSU2: return "eisert";
        case StrategyFamily::ClassicalBit: return "bit";
        case StrategyFamily::CyclicC3: return "c3";
        case StrategyFamily::FrameSU3: return "su3";
    }
    throw InternalError("unknown strategy family");
}

StrategyFamily family_from_tag(std::string_view tag) {
    for (auto fam : {StrategyFamily::FullSU2, StrategyFamily::EisertSU2, StrategyFamily::ClassicalBit,
                     StrategyFamily::CyclicC3, StrategyFamily::FrameSU3})
        if (family_tag(fam) == tag) return fam;
    throw InputError("unknown strategy family '" + std::string(tag) + "'");
}

StrategySpec::StrategySpec(StrategyFamily fam, std::vector<double> values)
    : family(fam), params(std::move(values)) {
    const auto tag = std::string(family_tag(family));
    if (params.size() != family_param_count(family))
        throw InputError(tag + " strategy takes " + std::to_string(family_param_count(family)) + " parameters, got " +
                         std::to_string(params.size()));
    const auto box = family_box(family);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double v = params[i];
        if (!std::isfinite(v) || v < box[i].lo - kRangeSlack || v > box[i].hi + kRangeSlack)
            throw InputError(tag + " parameter " + std::to_string(i + 1) + " = " + format_param(v) + " outside [" +
                             format_param(box[i].lo) + ", " + format_param(box[i].hi) + "]");
        if (family_is_discrete(family) && v != std::round(v))
            throw InputError(tag + " strategy index must be an integer");
    }
}

ComplexMatrix StrategySpec::matrix() const {
    switch (family) {
        case StrategyFamily::FullSU2: return su2_full(params[0], params[1], params[2]);
        case StrategyFamily::EisertSU2: return su2_eisert(params[0], params[1]);
        case StrategyFamily::ClassicalBit: return params[0] == 0.0 ? pauli(Pauli::I) : pauli(Pauli::X);
        case StrategyFamily::CyclicC3: return cyclic_s(static_cast<int>(params[0]));
        case StrategyFamily::FrameSU3:
            return su3_frame({params[0], params[1], params[2], params[3], params[4], params[5], params[6], params[7]});
    }
    throw InternalError("unknown strategy family");
}

std::string StrategySpec::literal() const {
    std::string out(family_tag(family));
    out.push_back(':');
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out.push_back(',');
        out += format_param(params[i]);
    }
    return out;
}

ComplexMatrix su2_full(double theta, double alpha, double beta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex i{0.0, 1.0};
    return {{cis(alpha) * c, i * cis(beta) * s}, {i * cis(-beta) * s, cis(-alpha) * c}};
}

ComplexMatrix su2_eisert(double theta, double alpha) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {{cis(alpha) * c, s}, {-s, cis(-alpha) * c}};
}

ComplexMatrix pauli(Pauli which) {
    const Complex i{0.0, 1.0};
    switch (which) {
        case Pauli::I: return {{1, 0}, {0, 1}};
        case Pauli::X: return {{0, 1}, {1, 0}};
        case Pauli::Y: return {{0, -i}, {i, 0}};
        case Pauli::Z: return {{1, 0}, {0, -1}};
    }
    throw InternalError("unknown Pauli");
}

ComplexMatrix cyclic_s(int k) {
    if (k < 0 || k > 2) throw InputError("cyclic power " + std::to_string(k) + " outside {0,1,2}");
    ComplexMatrix m(3, 3);
    for (int j = 0; j < 3; ++j) m(static_cast<std::size_t>((j + k) % 3), static_cast<std::size_t>(j)) = 1.0;
    return m;
}

FrameVectors frame_vectors(const FrameParams& p) {
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sc = std::sin(p.chi), cc = std::cos(p.chi);

    FrameVectors f;
    f.x = {st * cp * cis(p.alpha1), st * sp * cis(p.alpha2), ct * cis(p.alpha3)};
    f.y = {cc * ct * cp * cis(p.beta1 - p.alpha1) + sc * sp * cis(p.beta2 - p.alpha1),
           cc * ct * sp * cis(p.beta1 - p.alpha2) - sc * cp * cis(p.beta2 - p.alpha2),
           -cc * st * cis(p.beta1 - p.alpha3)};
    const auto& x = f.x;
    const auto& y = f.y;
    f.z = {std::conj(x[1]) * y[2] - std::conj(x[2]) * y[1],
           std::conj(x[2]) * y[0] - std::conj(x[0]) * y[2],
           std::conj(x[0]) * y[1] - std::conj(x[1]) * y[0]};
    return f;
}

ComplexMatrix su3_frame(const FrameParams& p) {
    const FrameVectors f = frame_vectors(p);
    ComplexMatrix u(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        u(r, 0) = f.x[r];
        u(r, 1) = std::conj(f.y[r]);
        u(r, 2) = f.z[r];
    }
    const double residual = unitarity_residual(u);
    if (residual >= kAcceptTol) throw InternalError("su3_frame produced a non-unitary matrix");
    return u;
}

FrameParams kolkata_optimum_params() {
    return {kPi / 4, std::acos(1.0 / std::sqrt(3.0)), kPi / 4, 5 * kPi / 18, 5 * kPi / 18, 5 * kPi / 18, kPi / 3,
            11 * kPi / 6};
}

std::vector<ComplexMatrix> classical_set(int d) {
    if (d == 2) return {pauli(Pauli::I), pauli(Pauli::X)};
    if (d == 3) return {cyclic_s(0), cyclic_s(1), cyclic_s(2)};
    throw InputError("no classical operator set for d = " + std::to_string(d));
}

double parse_radians(std::string_view text) {
    if (text == "acos(1/sqrt3)" || text == "acos(1/sqrt(3))") return std::acos(1.0 / std::sqrt(3.0));
    static const std::regex pattern(R"(^([+-]?)((?:\d+(?:\.\d*)?|\.\d+))?(\*?pi)?(?:/(\d+(?:\.\d*)?))?$)");
    std::cmatch m;
    if (!std::regex_match(text.data(), text.data() + text.size(), m, pattern))
        throw InputError("cannot parse angle '" + std::string(text) + "'");
    const bool has_number = m[2].matched;
    const bool has_pi = m[3].matched;
    if (!has_number && !has_pi) throw InputError("cannot parse angle '" + std::string(text) + "'");
    if (!has_number && m[3].str().front() == '*') throw InputError("cannot parse angle '" + std::string(text) + "'");
    double value = has_number ? parse_decimal(m[2].str()) : 1.0;
    if (has_pi) value *= kPi;
    if (m[4].matched) {
        const double den = parse_decimal(m[4].str());
        if (den == 0.0) throw InputError("division by zero in angle '" + std::string(text) + "'");
        value /= den;
    }
    return m[1].str() == "-" ? -value : value;
}

StrategySpec parse_strategy(std::string_view literal) {
    const std::size_t colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw InputError("strategy literal '" + std::string(literal) + "' needs the form family:params");
    const StrategyFamily family = family_from_tag(literal.substr(0, colon));
    const std::string_view body = literal.substr(colon + 1);
    if (family == StrategyFamily::FrameSU3 && body == "table2") {
        const FrameParams p = kolkata_optimum_params();
        return StrategySpec(family, {p.phi, p.theta, p.chi, p.alpha1, p.alpha2, p.alpha3, p.beta1, p.beta2});
    }
    std::vector<double> values;
    for (auto token : split(body, ',')) {
        if (token.empty()) throw InputError("empty parameter in '" + std::string(literal) + "'");
        values.push_back(family_is_discrete(family) ? parse_decimal(token) : parse_radians(token));
    }
    return StrategySpec(family, std::move(values));
}

}  // namespace qgames
