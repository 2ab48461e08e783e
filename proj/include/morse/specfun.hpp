#ifndef MORSE_SPECFUN_HPP
#define MORSE_SPECFUN_HPP

// Complex special-function kernel: log-Gamma (Lanczos), digamma, and the
// Kummer confluent hypergeometric function 1F1 in the three regimes needed
// here (truncating polynomial, forward series, large-|z| expansion).

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <optional>

#include "morse/errors.hpp"

namespace morse {

using cplx = std::complex<double>;

// Global "is an integer" detection tolerance; shared by every module so that
// regime classification stays consistent.
inline constexpr double tau_int = 1e-9;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// If z is within tol of a non-positive integer -n, returns n.
inline std::optional<int> gamma_pole_index(cplx z, double tol) {
    const double n = std::round(-z.real());
    if (n < 0.0) return std::nullopt;
    if (std::abs(z + n) <= tol) return static_cast<int>(n);
    return std::nullopt;
}

namespace detail {

// Lanczos g = 607/128, 15 terms; relative accuracy ~1e-15 for Re z >= 0.5.
inline cplx log_gamma_lanczos(cplx z) {
    static constexpr double g = 4.7421875; // 607/128
    static constexpr double c0 = 0.99999999999999709182;
    static constexpr double coef[14] = {
        57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,     -0.49191381609762019978,
        0.33994649984811888699e-4, 0.46523628927048575665e-4,
        -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3,
        -0.16431810653676389022e-3, 0.84418223983852743293e-4,
        -0.26190838401581408670e-4, 0.36899182659531622704e-5};

    cplx ser = c0;
    for (int j = 0; j < 14; ++j) ser += coef[j] / (z + static_cast<double>(j + 1));
    const cplx tmp = z + (g + 0.5);
    // log(sqrt(2*pi))
    static const double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(tmp) - tmp + std::log(ser / z);
}

} // namespace detail

// Principal-branch log-Gamma; reflection for Re z < 0.5, conjugate symmetry
// enforced by construction, real output on the positive real axis.
inline cplx log_gamma(cplx z) {
    if (auto n = gamma_pole_index(z, tau_int)) throw PoleOfGamma(*n);
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        const cplx s = std::sin(pi * z);
        return std::log(pi) - std::log(s) - log_gamma(1.0 - z);
    }
    return detail::log_gamma_lanczos(z);
}

// psi(z) = d/dz log Gamma(z); recurrence shift plus asymptotic series.
inline cplx digamma(cplx z) {
    if (auto n = gamma_pole_index(z, tau_int)) throw PoleOfGamma(*n);
    if (z.imag() < 0.0) return std::conj(digamma(std::conj(z)));
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi*cot(pi*z)
        return digamma(1.0 - z) - pi * std::cos(pi * z) / std::sin(pi * z);
    }
    cplx shift = 0.0;
    while (z.real() < 15.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // B_{2n}/(2n): 1/12, -1/120, 1/252, -1/240, 1/132, -691/32760, 1/12
    static constexpr double b[7] = {
        1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,      -1.0 / 240.0,
        1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    const cplx inv2 = 1.0 / (z * z);
    cplx sum = 0.0;
    cplx p = inv2;
    for (double bn : b) {
        sum += bn * p;
        p *= inv2;
    }
    return shift + std::log(z) - 0.5 / z - sum;
}

struct KummerArgs {
    cplx a;
    cplx c;
    cplx z;
};

struct EvalPrecision {
    double rel_tol = 1e-15;
    int max_terms = 500;
    double asymptotic_threshold = 30.0;
};

namespace detail {

inline void check_kummer_domain(const KummerArgs& args) {
    if (!std::isfinite(args.a.real()) || !std::isfinite(args.a.imag()) ||
        !std::isfinite(args.c.real()) || !std::isfinite(args.c.imag()) ||
        !std::isfinite(args.z.real()) || !std::isfinite(args.z.imag()))
        throw InvalidParams("non-finite Kummer argument");
    if (auto m = gamma_pole_index(args.c, tau_int)) {
        auto n = gamma_pole_index(args.a, tau_int);
        // valid only when the series truncates before the vanishing denominator
        if (!n || *n > *m)
            throw InvalidC("1F1 with c at a non-positive integer and no early truncation");
    }
}

// Exact degree-n polynomial, a = -n.
inline cplx kummer_polynomial(int n, cplx c, cplx z) {
    cplx term = 1.0, sum = 1.0;
    for (int j = 0; j < n; ++j) {
        term *= (static_cast<double>(-n + j)) * z / ((c + static_cast<double>(j)) * (j + 1.0));
        sum += term;
    }
    return sum;
}

// Forward power series; requires 3 consecutive small terms to survive the
// alternating-cancellation plateau at negative real z.
inline cplx kummer_series_raw(const KummerArgs& args, const EvalPrecision& prec) {
    cplx term = 1.0, sum = 1.0;
    int small_run = 0;
    for (int j = 0; j < prec.max_terms; ++j) {
        term *= (args.a + static_cast<double>(j)) * args.z /
                ((args.c + static_cast<double>(j)) * (j + 1.0));
        sum += term;
        if (std::abs(term) <= prec.rel_tol * std::abs(sum)) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
    }
    throw NoConvergence("1F1 forward series: max_terms exceeded");
}

// Kummer's transformation 1F1(a;c;z) = e^z 1F1(c-a;c;-z) keeps the series
// argument in the right half plane, where the terms cancel far less.
inline cplx kummer_series(const KummerArgs& args, const EvalPrecision& prec) {
    if (args.z.real() < 0.0)
        return std::exp(args.z) * kummer_series_raw({args.c - args.a, args.c, -args.z}, prec);
    return kummer_series_raw(args, prec);
}

// Asymptotic sum  sum_j (p)_j (q)_j / (j! w^j), truncated at the smallest
// term (or earlier when below rel_tol).
inline cplx asymptotic_sum(cplx p, cplx q, cplx w, double rel_tol) {
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int j = 0; j < 200; ++j) {
        const cplx next = term * (p + static_cast<double>(j)) * (q + static_cast<double>(j)) /
                          ((j + 1.0) * w);
        const double mag = std::abs(next);
        if (mag > prev) break; // past optimal truncation
        term = next;
        sum += term;
        prev = mag;
        if (mag <= rel_tol * std::abs(sum)) break;
    }
    return sum;
}

} // namespace detail

// Full large-|z| expansion of 1F1: dominant e^z z^{a-c} branch plus the
// algebraic z^{-a} branch, principal branch of the powers.
inline cplx kummer_asymptotic(const KummerArgs& args, const EvalPrecision& prec = {}) {
    const cplx a = args.a, c = args.c, z = args.z;
    if (auto n = gamma_pole_index(a, tau_int)) throw PoleOfGamma(*n);
    const cplx log_z = std::log(z);
    const cplx lgc = log_gamma(c);

    cplx dominant = std::exp(z + (a - c) * log_z + lgc - log_gamma(a)) *
                    detail::asymptotic_sum(c - a, 1.0 - a, z, prec.rel_tol);

    cplx algebraic = 0.0;
    if (!gamma_pole_index(c - a, tau_int)) {
        const double sgn = (z.imag() >= 0.0) ? 1.0 : -1.0;
        algebraic = std::exp(cplx(0.0, sgn * pi) * a - a * log_z + lgc - log_gamma(c - a)) *
                    detail::asymptotic_sum(a, a - c + 1.0, -z, prec.rel_tol);
    }
    return dominant + algebraic;
}

// 1F1(a; c; z): polynomial when a is a non-positive integer, forward series
// for |z| below the threshold, full asymptotic expansion beyond it.
inline cplx kummer_1f1(const KummerArgs& args, const EvalPrecision& prec = {}) {
    detail::check_kummer_domain(args);
    if (args.z == 0.0) return 1.0;
    if (auto n = gamma_pole_index(args.a, tau_int))
        return detail::kummer_polynomial(*n, args.c, args.z);
    if (std::abs(args.z) < prec.asymptotic_threshold)
        return detail::kummer_series(args, prec);
    return kummer_asymptotic(args, prec);
}

// d/dz 1F1(a; c; z) = (a/c) 1F1(a+1; c+1; z)
inline cplx kummer_derivative(const KummerArgs& args, const EvalPrecision& prec = {}) {
    return (args.a / args.c) * kummer_1f1({args.a + 1.0, args.c + 1.0, args.z}, prec);
}

// Complex log of 1F1 for use where the value itself overflows a double.
// Returns log|F| + i arg F (arg not reduced across the asymptotic formula).
inline cplx kummer_1f1_log(const KummerArgs& args, const EvalPrecision& prec = {}) {
    detail::check_kummer_domain(args);
    if (args.z == 0.0) return 0.0;
    if (auto n = gamma_pole_index(args.a, tau_int)) {
        const cplx v = detail::kummer_polynomial(*n, args.c, args.z);
        if (std::isfinite(v.real()) && std::isfinite(v.imag()) && v != 0.0)
            return std::log(v);
        if (v == 0.0) return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        // overflowed polynomial: dominated by the leading term (-n)_n z^n / ((c)_n n!)
        cplx log_lead = 0.0;
        for (int j = 0; j < *n; ++j)
            log_lead += std::log((static_cast<double>(-*n + j)) /
                                 ((args.c + static_cast<double>(j)) * (j + 1.0))) +
                        std::log(args.z);
        return log_lead;
    }
    if (std::abs(args.z) < prec.asymptotic_threshold) {
        const cplx v = detail::kummer_series(args, prec);
        if (v == 0.0) return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        return std::log(v);
    }
    // log of the dominant branch; fold in the algebraic branch when comparable
    const cplx a = args.a, c = args.c, z = args.z;
    const cplx log_z = std::log(z);
    const cplx lgc = log_gamma(c);
    const cplx log_dom = z + (a - c) * log_z + lgc - log_gamma(a) +
                         std::log(detail::asymptotic_sum(c - a, 1.0 - a, z, prec.rel_tol));
    if (!gamma_pole_index(c - a, tau_int)) {
        const double sgn = (z.imag() >= 0.0) ? 1.0 : -1.0;
        const cplx log_alg = cplx(0.0, sgn * pi) * a - a * log_z + lgc - log_gamma(c - a) +
                             std::log(detail::asymptotic_sum(a, a - c + 1.0, -z, prec.rel_tol));
        if (log_alg.real() > log_dom.real() - 40.0)
            return log_dom + std::log(1.0 + std::exp(log_alg - log_dom));
    }
    return log_dom;
}

// Associated Laguerre polynomial L_n^{alpha}(z) by the three-term recurrence.
inline cplx laguerre(int n, double alpha, cplx z) {
    if (n < 0) throw IndexOutOfRange("laguerre: n must be >= 0");
    cplx lm1 = 1.0;
    if (n == 0) return lm1;
    cplx l = 1.0 + alpha - z;
    for (int k = 1; k < n; ++k) {
        const cplx lp1 = ((2.0 * k + 1.0 + alpha - z) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

} // namespace morse

#endif
