#ifndef MORSE_SCATTERING_HPP
#define MORSE_SCATTERING_HPP

// S(k) for the one-dimensional Morse potential, phase shifts, and the
// closed-form enumeration/classification of every pole of S on the
// imaginary axis, with numerator/denominator cancellation accounting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "morse/errors.hpp"
#include "morse/specfun.hpp"

namespace morse {

inline constexpr double tau_pole = 1e-8; // guard radius for checked S(k)

enum class Regime { Generic, Integer, HalfInteger };

struct PotentialParams {
    double A = 0.0;
    Regime regime = Regime::Generic;
    int N = 0; // Integer: A = N; HalfInteger: A = (2N-1)/2

    static PotentialParams make(double A) {
        if (!(A > tau_int)) throw InvalidParams("Morse strength A must be > 0");
        PotentialParams p;
        p.A = A;
        const double r = std::round(A);
        const double r2 = std::round(2.0 * A);
        if (std::abs(A - r) <= tau_int && r >= 1.0) {
            p.regime = Regime::Integer;
            p.N = static_cast<int>(r);
        } else if (std::abs(2.0 * A - r2) <= tau_int &&
                   static_cast<long long>(r2) % 2 != 0 && r2 >= 1.0) {
            p.regime = Regime::HalfInteger;
            p.N = static_cast<int>((r2 + 1.0) / 2.0); // A = (2N-1)/2
        } else {
            p.regime = Regime::Generic;
            p.N = 0;
        }
        return p;
    }
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Integer: return "integer";
        case Regime::HalfInteger: return "half-integer";
        default: return "generic";
    }
}

enum class PoleClass { Bound, Antibound, RedundantEven, RedundantOdd, SemiBound };

inline const char* pole_class_name(PoleClass c) {
    switch (c) {
        case PoleClass::Bound: return "bound";
        case PoleClass::Antibound: return "antibound";
        case PoleClass::RedundantEven: return "redundant-even";
        case PoleClass::RedundantOdd: return "redundant-odd";
        default: return "semi-bound";
    }
}

// The four Gamma factors of S(k) = -G(Num1)G(Num2)/(G(Den1)G(Den2)) e^{-2ik ln2}:
//   Num1: Gamma(-A-ik), Num2: Gamma(1+2ik), Den1: Gamma(-A+ik), Den2: Gamma(1-2ik)
enum class GammaFactor { Num1, Num2, Den1, Den2 };

struct PoleRecord {
    double im_k = 0.0;   // pole at k0 = i*im_k
    double energy = 0.0; // E = k0^2 = -im_k^2
    int net_order = 0;   // numerator Gamma-poles minus denominator Gamma-poles
    PoleClass cls = PoleClass::Bound;
    int series_index = 0; // n1 for bound/antibound, sub-series n2 for redundant
    std::vector<std::pair<GammaFactor, int>> contributing_factors; // factor, +/-1

    std::complex<double> k0() const { return {0.0, im_k}; }
};

// Log-domain assembly of S(k); the i*pi term carries the overall minus sign.
// When Gamma(-A-ik) and Gamma(-A+ik) sit on the same pole (k ~ 0 at integer
// A) the pair cancels; its ratio is continued through the pole via
// Gamma(w) = Gamma(w+K) / [(w)(w+1)...(w+K-1)], with the vanishing factor
// pair replaced by its limit dw1/dw2 = -1.
inline cplx log_s_matrix(const PotentialParams& p, cplx k) {
    static const double log2_ = 0.69314718055994530942;
    const cplx ik = cplx(0.0, 1.0) * k;
    const cplx w1 = -p.A - ik, w2 = -p.A + ik;

    cplx pair;
    const auto n1 = gamma_pole_index(w1, tau_int);
    const auto n2 = gamma_pole_index(w2, tau_int);
    if (n1 && n2) {
        const int K = std::max(*n1, *n2) + 1;
        pair = log_gamma(w1 + static_cast<double>(K)) - log_gamma(w2 + static_cast<double>(K));
        for (int i = 0; i < K; ++i) {
            const cplx f1 = w1 + static_cast<double>(i), f2 = w2 + static_cast<double>(i);
            if (std::abs(f1) <= tau_int && std::abs(f2) <= tau_int)
                pair += cplx(0.0, pi); // lim (w2+i)/(w1+i) = (+ik)/(-ik) = -1
            else
                pair += std::log(f2) - std::log(f1);
        }
    } else {
        pair = log_gamma(w1) - log_gamma(w2);
    }
    return pair + log_gamma(1.0 + 2.0 * ik) - log_gamma(1.0 - 2.0 * ik) - 2.0 * ik * log2_ +
           cplx(0.0, pi);
}

inline cplx s_matrix_unchecked(const PotentialParams& p, cplx k) {
    return std::exp(log_s_matrix(p, k));
}

std::vector<PoleRecord> enumerate_poles(const PotentialParams& p, double im_k_min,
                                        double im_k_max);

// Guarded evaluation: refuses k within tau_pole of an enumerated pole.
inline cplx s_matrix(const PotentialParams& p, cplx k) {
    const double y = k.imag();
    for (const auto& rec : enumerate_poles(p, y - 1.0, y + 1.0)) {
        if (rec.cls == PoleClass::SemiBound) continue;
        if (std::abs(k - rec.k0()) < tau_pole) throw AtPole(rec.k0());
    }
    return s_matrix_unchecked(p, k);
}

namespace detail {

inline bool near_nonneg_integer(double v, int& out) {
    const double r = std::round(v);
    if (r < 0.0 || std::abs(v - r) > tau_int) return false;
    out = static_cast<int>(r);
    return true;
}

} // namespace detail

// Closed-form pole enumeration: candidate sites from the two numerator
// factors, net order from all four factors, full cancellations omitted.
// For integer A the regular point k = 0 is emitted as a SemiBound marker.
inline std::vector<PoleRecord> enumerate_poles(const PotentialParams& p, double im_k_min,
                                               double im_k_max) {
    if (!(im_k_min < im_k_max)) throw InvalidParams("enumerate_poles: empty window");
    const double lo = im_k_min - tau_int, hi = im_k_max + tau_int;

    std::vector<double> sites;
    // k1-sites: y = A - n1
    for (int n1 = 0;; ++n1) {
        const double y = p.A - n1;
        if (y < lo) break;
        if (y <= hi) sites.push_back(y);
    }
    // k2-sites: y = (1 + n2)/2
    for (int n2 = 0;; ++n2) {
        const double y = 0.5 * (1.0 + n2);
        if (y > hi) break;
        if (y >= lo) sites.push_back(y);
    }
    if (p.regime == Regime::Integer && 0.0 >= lo && 0.0 <= hi) sites.push_back(0.0);

    std::sort(sites.begin(), sites.end(), std::greater<>());
    sites.erase(std::unique(sites.begin(), sites.end(),
                            [](double a, double b) { return std::abs(a - b) <= tau_int; }),
                sites.end());

    std::vector<PoleRecord> out;
    for (double y : sites) {
        PoleRecord rec;
        rec.im_k = y;
        rec.energy = -y * y;
        int n1 = -1, n2 = -1, m;
        // Num1 Gamma(-A+y): pole at -A+y = -n1
        if (detail::near_nonneg_integer(p.A - y, m)) {
            n1 = m;
            rec.contributing_factors.emplace_back(GammaFactor::Num1, +1);
        }
        // Num2 Gamma(1-2y): pole at 1-2y = -n2
        if (detail::near_nonneg_integer(2.0 * y - 1.0, m)) {
            n2 = m;
            rec.contributing_factors.emplace_back(GammaFactor::Num2, +1);
        }
        // Den1 Gamma(-A-y): pole at -A-y = -m
        if (detail::near_nonneg_integer(p.A + y, m))
            rec.contributing_factors.emplace_back(GammaFactor::Den1, -1);
        // Den2 Gamma(1+2y): pole at 1+2y = -m
        if (detail::near_nonneg_integer(-2.0 * y - 1.0, m))
            rec.contributing_factors.emplace_back(GammaFactor::Den2, -1);

        rec.net_order = 0;
        for (auto& [f, s] : rec.contributing_factors) rec.net_order += s;

        if (rec.net_order >= 1) {
            if (n1 >= 0 && p.A - n1 > tau_int) {
                rec.cls = PoleClass::Bound;
                rec.series_index = n1;
            } else if (n1 >= 0 && p.A - n1 < -tau_int) {
                rec.cls = PoleClass::Antibound;
                rec.series_index = n1;
            } else if (n2 >= 0) {
                rec.cls = (n2 % 2 == 0) ? PoleClass::RedundantEven : PoleClass::RedundantOdd;
                rec.series_index = n2 / 2;
            } else {
                continue; // not reachable for A > 0
            }
            out.push_back(std::move(rec));
        } else if (rec.net_order == 0 && std::abs(y) <= tau_int &&
                   p.regime == Regime::Integer) {
            rec.cls = PoleClass::SemiBound;
            rec.series_index = p.N;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

// Analytic residue of a simple pole, assembled from Res Gamma(-n) = (-1)^n/n!.
// Each Gamma factor has argument alpha(k) = alpha(k0) + d*(k-k0), so a factor
// at a pole behaves as ResGamma / (d*(k-k0)); cancelling pairs divide out.
inline cplx residue(const PotentialParams& p, const PoleRecord& pole) {
    if (pole.net_order != 1) throw NotSimplePole("residue: pole is not simple");
    static const double log2_ = 0.69314718055994530942;
    const double y = pole.im_k;
    const cplx k0(0.0, y);
    const cplx i(0.0, 1.0);

    struct Factor {
        cplx arg;
        cplx d; // d alpha / dk
    };
    const Factor num[2] = {{cplx(-p.A + y, 0.0), -i}, {cplx(1.0 - 2.0 * y, 0.0), 2.0 * i}};
    const Factor den[2] = {{cplx(-p.A - y, 0.0), i}, {cplx(1.0 + 2.0 * y, 0.0), -2.0 * i}};

    auto pole_coeff = [](const Factor& f) {
        const int n = *gamma_pole_index(f.arg, tau_int);
        double res_gamma = (n % 2 == 0) ? 1.0 : -1.0;
        res_gamma /= std::tgamma(n + 1.0);
        return res_gamma / f.d;
    };

    cplx value = -std::exp(-2.0 * i * k0 * log2_);
    for (const auto& f : num)
        value *= gamma_pole_index(f.arg, tau_int) ? pole_coeff(f) : std::exp(log_gamma(f.arg));
    for (const auto& f : den)
        value /= gamma_pole_index(f.arg, tau_int) ? pole_coeff(f) : std::exp(log_gamma(f.arg));
    return value;
}

// delta'(k), assembled from d/dk log Gamma terms via digamma.
inline double phase_shift_derivative(const PotentialParams& p, double k) {
    if (!(k > 0.0)) throw NonPositiveK("phase_shift_derivative: k must be > 0");
    static const double log2_ = 0.69314718055994530942;
    const cplx i(0.0, 1.0);
    const cplx ik = i * k;
    const cplx sum = -i * digamma(-p.A - ik) - i * digamma(-p.A + ik) +
                     2.0 * i * digamma(1.0 + 2.0 * ik) + 2.0 * i * digamma(1.0 - 2.0 * ik);
    return sum.imag() - 2.0 * log2_;
}

namespace detail {

inline double wrap_to_pi(double x) {
    x = std::fmod(x + pi, 2.0 * pi);
    if (x <= 0.0) x += 2.0 * pi;
    return x - pi;
}

inline double raw_phase(const PotentialParams& p, double k) {
    return log_s_matrix(p, cplx(k, 0.0)).imag();
}

} // namespace detail

inline constexpr double phase_anchor_k = 1e-4;

// Continuous (unwrapped) phase shift along a list of increasing k > 0,
// anchored at k_ref = 1e-4 and refined until adjacent raw samples differ
// by less than pi/2.
inline std::vector<double> phase_shift_curve(const PotentialParams& p,
                                             const std::vector<double>& ks) {
    std::vector<double> out;
    out.reserve(ks.size());
    for (double k : ks)
        if (!(k > 0.0)) throw NonPositiveK("phase_shift_curve: k must be > 0");

    double k_prev = phase_anchor_k;
    double raw_prev = detail::raw_phase(p, k_prev);
    double value = detail::wrap_to_pi(raw_prev);

    auto advance = [&](double k_to) {
        // walk from k_prev to k_to in strides short enough that the true
        // phase change stays below pi/2, bisecting on any larger wrapped jump
        std::vector<double> stack;
        stack.push_back(k_to);
        for (double k = k_to; k - k_prev > 0.05; ) {
            k -= 0.05;
            stack.push_back(k);
        }
        while (!stack.empty()) {
            const double k_next = stack.back();
            const double raw_next = detail::raw_phase(p, k_next);
            const double jump = detail::wrap_to_pi(raw_next - raw_prev);
            if (std::abs(jump) < pi / 2.0 || std::abs(k_next - k_prev) < 1e-12) {
                value += jump;
                k_prev = k_next;
                raw_prev = raw_next;
                stack.pop_back();
            } else {
                stack.push_back(0.5 * (k_prev + k_next));
            }
        }
    };

    for (double k : ks) {
        if (k >= k_prev) {
            advance(k);
            out.push_back(value);
        } else {
            // out-of-order sample: restart the walk from the anchor
            k_prev = phase_anchor_k;
            raw_prev = detail::raw_phase(p, k_prev);
            value = detail::wrap_to_pi(raw_prev);
            advance(k);
            out.push_back(value);
        }
    }
    return out;
}

inline double phase_shift(const PotentialParams& p, double k) {
    if (!(k > 0.0)) throw NonPositiveK("phase_shift: k must be > 0");
    return phase_shift_curve(p, {k}).front();
}

struct GridSpec {
    double re_min, re_max;
    double im_min, im_max;
    double step;
    double cap = 1e6;
};

struct ComplexGrid {
    GridSpec spec;
    std::size_t n_re = 0, n_im = 0;
    std::vector<double> abs_s; // row-major, rows indexed by Im k (ascending)

    double at(std::size_t i_im, std::size_t i_re) const { return abs_s[i_im * n_re + i_re]; }
    double k_re(std::size_t i) const { return spec.re_min + static_cast<double>(i) * spec.step; }
    double k_im(std::size_t i) const { return spec.im_min + static_cast<double>(i) * spec.step; }
};

inline unsigned grid_thread_count() {
    if (const char* env = std::getenv("MORSE_SMATRIX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// |S| on a rectangular grid, capped; rows evaluated independently so that
// parallel evaluation is bitwise identical to sequential.
inline ComplexGrid s_matrix_grid(const PotentialParams& p, const GridSpec& spec) {
    if (!(spec.re_min < spec.re_max) || !(spec.im_min < spec.im_max) || !(spec.step > 0.0))
        throw InvalidParams("s_matrix_grid: degenerate grid spec");
    ComplexGrid g;
    g.spec = spec;
    g.n_re = static_cast<std::size_t>(std::floor((spec.re_max - spec.re_min) / spec.step + 1e-9)) + 1;
    g.n_im = static_cast<std::size_t>(std::floor((spec.im_max - spec.im_min) / spec.step + 1e-9)) + 1;
    g.abs_s.assign(g.n_re * g.n_im, 0.0);

    auto fill_row = [&](std::size_t r) {
        const double y = g.k_im(r);
        for (std::size_t c = 0; c < g.n_re; ++c) {
            double v;
            try {
                v = std::abs(s_matrix_unchecked(p, cplx(g.k_re(c), y)));
            } catch (const PoleOfGamma&) {
                v = spec.cap;
            }
            if (!std::isfinite(v) || v > spec.cap) v = spec.cap;
            g.abs_s[r * g.n_re + c] = v;
        }
    };

    const unsigned threads = std::min<unsigned>(grid_thread_count(),
                                                static_cast<unsigned>(g.n_im));
    if (threads <= 1) {
        for (std::size_t r = 0; r < g.n_im; ++r) fill_row(r);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < g.n_im; r += threads) fill_row(r);
            });
        for (auto& th : pool) th.join();
    }
    return g;
}

} // namespace morse

#endif
