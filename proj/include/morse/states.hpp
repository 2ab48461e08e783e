#ifndef MORSE_STATES_HPP
#define MORSE_STATES_HPP

// Wavefunction families attached to the S-matrix poles: bound, antibound
// (via psi2), redundant (generic / integer-even / half-integer-odd), the
// E = 0 semi-bound state, and the tilded mirror forms used by the ladder
// chains. Every family reduces to
//     psi(x) = exp(q x + r) * exp(-e^{-x}) * 1F1(a; c; 2 e^{-x})
// and is evaluated through a log-magnitude representation so the
// exp(-e^{-x}) underflow and the 1F1 overflow cancel instead of colliding.

#include <cmath>
#include <complex>
#include <vector>

#include "morse/errors.hpp"
#include "morse/scattering.hpp"
#include "morse/specfun.hpp"

namespace morse {

inline constexpr double log2_const = 0.69314718055994530942;

enum class Family {
    Psi1,
    Psi2,
    Bound,
    RedundantGeneric,
    RedundantEvenInt,
    RedundantOddHalf,
    SemiBound,
    TildeBoundInt,
    TildeRedundantEven,
    RedundantEvenChain,
    RedundantOddChain,
};

struct WaveFunctionSpec {
    Family family;
    PotentialParams params;
    int index = 0;        // n1, n2, n or m depending on the family
    cplx energy = 0.0;    // E; epsilon = sqrt(-E) with Re epsilon >= 0
};

namespace detail {

// sqrt(-E) on the Re >= 0 branch; pure imaginary results (real k) take
// Im >= 0 so that epsilon = +ik for scattering energies
inline cplx epsilon_of(cplx energy) {
    cplx e = std::sqrt(-energy);
    if (e.real() < 0.0 || (e.real() == 0.0 && e.imag() < 0.0)) e = -e;
    return e;
}

struct FamilyParts {
    cplx q; // coefficient of x in the exponential prefactor
    cplx r; // constant term of the exponential prefactor (log scale)
    cplx a;
    cplx c;
};

inline FamilyParts family_parts(const WaveFunctionSpec& s) {
    const double A = s.params.A;
    const int N = s.params.N;
    const int n = s.index;
    auto from_epsilon = [&](cplx eps, cplx a) {
        return FamilyParts{-eps, 2.0 * eps * log2_const, a, 1.0 + 2.0 * eps};
    };
    switch (s.family) {
        case Family::Psi1: {
            const cplx eps = epsilon_of(s.energy);
            return FamilyParts{-eps, 0.0, -A + eps, 1.0 + 2.0 * eps};
        }
        case Family::Psi2: {
            const cplx eps = epsilon_of(s.energy);
            return FamilyParts{eps, -2.0 * eps * log2_const, -A - eps, 1.0 - 2.0 * eps};
        }
        case Family::Bound: {
            if (n < 0 || A - n <= tau_int)
                throw IndexOutOfRange("Bound: need 0 <= n <= [A] with A-n > 0");
            return from_epsilon(A - n, cplx(-n));
        }
        case Family::RedundantGeneric: {
            if (n < 0) throw IndexOutOfRange("RedundantGeneric: n2 >= 0");
            const double eps = 0.5 * (n + 1);
            return from_epsilon(eps, -A + eps);
        }
        case Family::RedundantEvenInt: {
            if (s.params.regime != Regime::Integer)
                throw IndexOutOfRange("RedundantEvenInt: integer regime only");
            if (n < 0 || n % 2 != 0) throw IndexOutOfRange("RedundantEvenInt: even n2 >= 0");
            const double eps = 0.5 * (n + 1);
            return from_epsilon(eps, -A + eps);
        }
        case Family::RedundantOddHalf: {
            if (s.params.regime != Regime::HalfInteger)
                throw IndexOutOfRange("RedundantOddHalf: half-integer regime only");
            if (n < 1 || n % 2 != 1) throw IndexOutOfRange("RedundantOddHalf: odd n2 >= 1");
            // c = 1 + 2*eps = n2 + 2, not the printed n2 + 3
            const double eps = 0.5 * (n + 1);
            return from_epsilon(eps, -A + eps);
        }
        case Family::SemiBound:
            return FamilyParts{0.0, 0.0, -A, 1.0};
        case Family::TildeBoundInt: {
            if (s.params.regime != Regime::Integer || n < N || n > 2 * N)
                throw IndexOutOfRange("TildeBoundInt: integer regime, N <= n <= 2N");
            const double d = static_cast<double>(N - n); // <= 0
            return FamilyParts{d, -2.0 * d * log2_const, cplx(n - 2 * N), 1.0 - 2.0 * d};
        }
        case Family::TildeRedundantEven: {
            if (n > -1) throw IndexOutOfRange("TildeRedundantEven: m <= -1");
            const double eps = n + 0.5; // negative
            return FamilyParts{eps, -2.0 * eps * log2_const, -A - eps, 1.0 - 2.0 * eps};
        }
        case Family::RedundantEvenChain: {
            const double eps = n + 0.5;
            if (n >= 0) return from_epsilon(eps, -A + eps);
            return FamilyParts{eps, -2.0 * eps * log2_const, -A - eps, 1.0 - 2.0 * eps};
        }
        case Family::RedundantOddChain: {
            const double eps = n + 1.0;
            if (n >= -1) return from_epsilon(eps, -A + eps);
            return FamilyParts{eps, -2.0 * eps * log2_const, -A - eps, 1.0 - 2.0 * eps};
        }
    }
    throw UnsupportedFamily("unknown wavefunction family");
}

} // namespace detail

inline WaveFunctionSpec make_spec(Family f, const PotentialParams& p, int index = 0,
                                  cplx energy = 0.0) {
    WaveFunctionSpec s{f, p, index, energy};
    switch (f) {
        case Family::Psi1:
        case Family::Psi2:
            break;
        case Family::SemiBound:
            s.energy = 0.0;
            break;
        default: {
            const auto parts = detail::family_parts(s); // validates the index
            s.energy = -(-parts.q) * (-parts.q);
            break;
        }
    }
    return s;
}

// log psi = q x + r - e^{-x} + log 1F1(a; c; 2 e^{-x});  real part is
// log|psi|, imaginary part the phase.
inline cplx evaluate_log(const WaveFunctionSpec& spec, double x,
                         const EvalPrecision& prec = {}) {
    const auto parts = detail::family_parts(spec);
    const double u = std::exp(-x);
    const cplx log_f = kummer_1f1_log({parts.a, parts.c, 2.0 * u}, prec);
    return parts.q * x + parts.r - u + log_f;
}

// Recombined wavefunction value (unnormalized); overflows to inf and
// underflows to 0 where |x| is beyond recombination range.
inline cplx evaluate(const WaveFunctionSpec& spec, double x, const EvalPrecision& prec = {}) {
    const cplx w = evaluate_log(spec, x, prec);
    if (w.real() == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(w);
}

// Analytic d psi/dx via the contiguous derivative of 1F1.
inline cplx evaluate_derivative(const WaveFunctionSpec& spec, double x,
                                const EvalPrecision& prec = {}) {
    const auto parts = detail::family_parts(spec);
    const double u = std::exp(-x);
    const cplx z = 2.0 * u;
    const cplx log_f = kummer_1f1_log({parts.a, parts.c, z}, prec);
    const cplx log_f1 = kummer_1f1_log({parts.a + 1.0, parts.c + 1.0, z}, prec);
    const double m = std::max(log_f.real(), log_f1.real());
    if (m == -std::numeric_limits<double>::infinity()) return 0.0;
    const cplx bracket = (parts.q + u) * std::exp(log_f - m) -
                         z * (parts.a / parts.c) * std::exp(log_f1 - m);
    return std::exp(parts.q * x + parts.r - u + m) * bracket;
}

// E_n = -(A - n)^2 for n = 0..[A] with A - n > 0, descending |E|. For
// integer A the n = N entry is E = 0 and reported as the semi-bound state
// instead.
inline std::vector<double> bound_energies(const PotentialParams& p) {
    std::vector<double> out;
    for (int n = 0; p.A - n > tau_int; ++n) out.push_back(-(p.A - n) * (p.A - n));
    return out;
}

// C2/C1 from the x -> -infinity matching; equals S(k) e^{2ik ln 2}.
inline cplx coefficient_ratio(const PotentialParams& p, cplx k) {
    const cplx ik = cplx(0.0, 1.0) * k;
    return -std::exp(log_gamma(-p.A - ik) - log_gamma(-p.A + ik) + log_gamma(1.0 + 2.0 * ik) -
                     log_gamma(1.0 - 2.0 * ik));
}

enum class Side { PlusInfinity, MinusInfinity };

// Asymptotic form descriptor.
//  PlusInfinity:  psi ~ coefficient * exp(x_coefficient * x)
//  MinusInfinity: psi ~ coefficient * exp(e^{-x} + (1+A) x)
struct AsymptoticForm {
    Side side;
    cplx coefficient;
    cplx x_coefficient = 0.0;
    bool double_exponential = false; // true for the -infinity forms
};

inline AsymptoticForm asymptotic(const WaveFunctionSpec& spec, Side side) {
    const double A = spec.params.A;
    const auto parts = detail::family_parts(spec);
    switch (spec.family) {
        case Family::Psi1:
        case Family::Psi2:
        case Family::Bound:
            break;
        default:
            throw UnsupportedFamily("asymptotic: Psi1, Psi2 or Bound only");
    }
    if (side == Side::PlusInfinity) {
        // 1F1 -> 1, so psi ~ e^{r} e^{q x}
        return {side, std::exp(parts.r), parts.q, false};
    }
    // x -> -infinity: 1F1(a;c;z) ~ Gamma(c)/Gamma(a) e^z z^{a-c}, z = 2e^{-x},
    // giving psi ~ [Gamma(c)/Gamma(a)] 2^{a-c} e^{r} * exp(e^{-x} + (1+A) x)
    if (spec.family == Family::Bound) return {side, 0.0, 1.0 + A, true}; // 1/Gamma(-n) = 0
    const cplx coeff = std::exp(log_gamma(parts.c) - log_gamma(parts.a) +
                                (parts.a - parts.c) * log2_const + parts.r);
    return {side, coeff, 1.0 + A, true};
}

// Max relative residual of the Schrodinger equation over the samples, with
// psi'' from 5-point central differences. The oracle that a spec really is
// an eigenfunction at its energy label.
inline double ode_residual(const WaveFunctionSpec& spec, const std::vector<double>& x_samples,
                           double h) {
    if (!(h > 0.0)) throw InvalidParams("ode_residual: h must be > 0");
    const double A = spec.params.A;
    double worst = 0.0;
    for (double x : x_samples) {
        const cplx fm2 = evaluate(spec, x - 2.0 * h);
        const cplx fm1 = evaluate(spec, x - h);
        const cplx f0 = evaluate(spec, x);
        const cplx fp1 = evaluate(spec, x + h);
        const cplx fp2 = evaluate(spec, x + 2.0 * h);
        const cplx d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        const double u = std::exp(-x);
        const cplx v = (u * u - 2.0 * (A + 0.5) * u) * f0;
        const cplx res = -d2 + v - spec.energy * f0;
        const double scale = std::abs(spec.energy * f0) + std::abs(d2) +
                             std::numeric_limits<double>::epsilon();
        worst = std::max(worst, std::abs(res) / scale);
    }
    return worst;
}

} // namespace morse

#endif
