#ifndef MORSE_LADDER_HPP
#define MORSE_LADDER_HPP

// First-order ladder operators A±_eps factorizing the transformed Morse
// Hamiltonian h_eps = -e^{2x} d²/dx² + eps² e^{2x} - 2(A+1/2) e^x, the
// intertwining identities between consecutive eps, and the chain actions
// across the bound-antibound and redundant wavefunction series.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "morse/errors.hpp"
#include "morse/states.hpp"

namespace morse {

enum class LadderSign { Plus, Minus };

struct LadderOperator {
    LadderSign sign;
    double epsilon;
    double beta;    // Plus: 1+eps, Minus: eps
    double gamma;   // -(1+2A)/(2 eps + 1)
    double d_const; // -(1+2A)^2/(1+2 eps)^2
};

inline LadderOperator make_operator(const PotentialParams& p, double epsilon,
                                    LadderSign sign) {
    const double denom = 2.0 * epsilon + 1.0;
    if (std::abs(denom) <= tau_int)
        throw SingularEpsilon("ladder operator undefined at epsilon = -1/2");
    LadderOperator op;
    op.sign = sign;
    op.epsilon = epsilon;
    op.beta = (sign == LadderSign::Plus) ? 1.0 + epsilon : epsilon;
    op.gamma = -(1.0 + 2.0 * p.A) / denom;
    op.d_const = -(1.0 + 2.0 * p.A) * (1.0 + 2.0 * p.A) / (denom * denom);
    return op;
}

// A smooth test function with analytic derivatives (d3 only needed for the
// intertwining residual).
struct SmoothFn {
    std::function<cplx(double)> value;
    std::function<cplx(double)> d1;
    std::function<cplx(double)> d2;
    std::function<cplx(double)> d3;
};

// Eigenfunction specs supply analytic first derivatives; higher ones come
// from the Schrodinger equation itself.
inline SmoothFn smooth_fn(const WaveFunctionSpec& spec) {
    const double A = spec.params.A;
    const cplx E = spec.energy;
    auto value = [spec](double x) { return evaluate(spec, x); };
    auto d1 = [spec](double x) { return evaluate_derivative(spec, x); };
    auto d2 = [spec, A, E](double x) {
        const double u = std::exp(-x);
        return (u * u - 2.0 * (A + 0.5) * u - E) * evaluate(spec, x);
    };
    auto d3 = [spec, A, E](double x) {
        const double u = std::exp(-x);
        const cplx v = u * u - 2.0 * (A + 0.5) * u;
        const cplx dv = -2.0 * u * u + 2.0 * (A + 0.5) * u;
        return dv * evaluate(spec, x) + (v - E) * evaluate_derivative(spec, x);
    };
    return {value, d1, d2, d3};
}

// A±_eps f = ∓ e^x f' + beta e^x f + gamma f
inline cplx apply(const LadderOperator& op, const SmoothFn& f, double x) {
    const double ex = std::exp(x);
    const double s = (op.sign == LadderSign::Plus) ? -1.0 : 1.0;
    return s * ex * f.d1(x) + op.beta * ex * f.value(x) + op.gamma * f.value(x);
}

namespace detail {

inline cplx h_eps(double A, double epsilon, const SmoothFn& f, double x) {
    const double e2x = std::exp(2.0 * x);
    const double ex = std::exp(x);
    return -e2x * f.d2(x) + epsilon * epsilon * e2x * f.value(x) -
           2.0 * (A + 0.5) * ex * f.value(x);
}

// (A±_eps f) as a SmoothFn with derivatives up to second order.
inline SmoothFn apply_fn(const LadderOperator& op, const SmoothFn& f) {
    const double s = (op.sign == LadderSign::Plus) ? -1.0 : 1.0;
    const double beta = op.beta, gamma = op.gamma;
    auto value = [=](double x) {
        const double ex = std::exp(x);
        return s * ex * f.d1(x) + beta * ex * f.value(x) + gamma * f.value(x);
    };
    auto d1 = [=](double x) {
        const double ex = std::exp(x);
        return s * ex * (f.d1(x) + f.d2(x)) + beta * ex * (f.value(x) + f.d1(x)) +
               gamma * f.d1(x);
    };
    auto d2 = [=](double x) {
        const double ex = std::exp(x);
        return s * ex * (f.d1(x) + 2.0 * f.d2(x) + f.d3(x)) +
               beta * ex * (f.value(x) + 2.0 * f.d1(x) + f.d2(x)) + gamma * f.d2(x);
    };
    return {value, d1, d2, nullptr};
}

} // namespace detail

// Max residual of both factorization orderings,
//   (A+_eps A-_eps + D_eps) f = h_eps f  and  (A-_{eps-1} A+_{eps-1} + D_{eps-1}) f = h_eps f,
// relative to the magnitudes of the h_eps terms. Operator identities, so f
// may be an arbitrary smooth function.
inline double factorization_residual(const PotentialParams& p, double epsilon,
                                     const SmoothFn& f, const std::vector<double>& x_samples) {
    const auto plus = make_operator(p, epsilon, LadderSign::Plus);
    const auto minus = make_operator(p, epsilon, LadderSign::Minus);
    const auto plus_dn = make_operator(p, epsilon - 1.0, LadderSign::Plus);
    const auto minus_dn = make_operator(p, epsilon - 1.0, LadderSign::Minus);
    double worst = 0.0;
    for (double x : x_samples) {
        const cplx h = detail::h_eps(p.A, epsilon, f, x);
        const double e2x = std::exp(2.0 * x);
        const double scale = std::abs(e2x * f.d2(x)) +
                             std::abs(epsilon * epsilon * e2x * f.value(x)) +
                             std::abs(2.0 * (p.A + 0.5) * std::exp(x) * f.value(x)) +
                             std::numeric_limits<double>::epsilon();
        const cplx r1 = apply(plus, detail::apply_fn(minus, f), x) + minus.d_const * f.value(x) - h;
        const cplx r2 =
            apply(minus_dn, detail::apply_fn(plus_dn, f), x) + plus_dn.d_const * f.value(x) - h;
        worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)) / scale);
    }
    return worst;
}

// Max residual of the intertwining relations
//   A+_{eps-1} h_eps f = h_{eps-1} A+_{eps-1} f   and
//   h_eps A-_{eps-1} f = A-_{eps-1} h_{eps-1} f.
inline double intertwining_residual(const PotentialParams& p, double epsilon,
                                    const SmoothFn& f, const std::vector<double>& x_samples) {
    const auto plus = make_operator(p, epsilon - 1.0, LadderSign::Plus);
    const auto minus = make_operator(p, epsilon - 1.0, LadderSign::Minus);
    double worst = 0.0;
    for (double x : x_samples) {
        // h_eps f and h_{eps-1} f as SmoothFns (derivatives via f.d3)
        auto h_fn = [&](double eps) {
            auto value = [&f, eps, A = p.A](double xx) { return detail::h_eps(A, eps, f, xx); };
            auto d1 = [&f, eps, A = p.A](double xx) {
                const double e2x = std::exp(2.0 * xx);
                const double ex = std::exp(xx);
                return -e2x * (2.0 * f.d2(xx) + f.d3(xx)) +
                       eps * eps * e2x * (2.0 * f.value(xx) + f.d1(xx)) -
                       2.0 * (A + 0.5) * ex * (f.value(xx) + f.d1(xx));
            };
            return SmoothFn{value, d1, nullptr, nullptr};
        };
        const SmoothFn hf = h_fn(epsilon);
        const SmoothFn hmf = h_fn(epsilon - 1.0);
        const SmoothFn pf = detail::apply_fn(plus, f);
        const SmoothFn mf = detail::apply_fn(minus, f);

        const cplx lhs1 = apply(plus, hf, x);
        const cplx rhs1 = detail::h_eps(p.A, epsilon - 1.0, pf, x);
        const cplx lhs2 = detail::h_eps(p.A, epsilon, mf, x);
        const cplx rhs2 = apply(minus, hmf, x);

        const double scale = std::abs(lhs1) + std::abs(rhs1) + std::abs(lhs2) + std::abs(rhs2) +
                             std::numeric_limits<double>::epsilon();
        worst = std::max(worst,
                         std::max(std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)) / scale);
    }
    return worst;
}

enum class ChainSeries { BoundAntibound, RedundantEven, RedundantOdd };
enum class StepDirection { Up, Down };

struct ChainSpec {
    ChainSeries series;
    PotentialParams params;

    // printed eps maps: bound-antibound eps = A - n; even eps = m + 1/2;
    // odd eps = m + 1
    double epsilon(int index) const {
        switch (series) {
            case ChainSeries::BoundAntibound: return params.A - index;
            case ChainSeries::RedundantEven: return index + 0.5;
            default: return index + 1.0;
        }
    }

    bool index_valid(int index) const {
        if (series != ChainSeries::BoundAntibound) return true; // doubly infinite
        if (index < 0) return false;
        switch (params.regime) {
            case Regime::Integer: return index <= 2 * params.N;
            case Regime::HalfInteger: return index <= 2 * params.N - 1;
            default: return true; // infinite antibound tail
        }
    }
};

// The wavefunction sitting at a chain index (mirror/tilde forms for the
// negative-eps half of a chain).
inline WaveFunctionSpec chain_wavefunction(const ChainSpec& chain, int index) {
    if (!chain.index_valid(index)) throw IndexOutOfChain("no wavefunction at this chain index");
    const PotentialParams& p = chain.params;
    switch (chain.series) {
        case ChainSeries::BoundAntibound: {
            const double eps = chain.epsilon(index);
            if (p.regime == Regime::Integer) {
                if (index < p.N) return make_spec(Family::Bound, p, index);
                if (index == p.N) return make_spec(Family::SemiBound, p);
                return make_spec(Family::TildeBoundInt, p, index);
            }
            if (p.regime == Regime::HalfInteger) {
                if (index <= p.N - 1) return make_spec(Family::Bound, p, index);
                return make_spec(Family::Bound, p, 2 * p.N - 1 - index); // mirror
            }
            if (eps > tau_int) return make_spec(Family::Bound, p, index);
            return make_spec(Family::Psi2, p, index, -eps * eps); // antibound tail
        }
        case ChainSeries::RedundantEven:
            return make_spec(Family::RedundantEvenChain, p, index);
        default:
            return make_spec(Family::RedundantOddChain, p, index);
    }
}

struct ChainStepResult {
    cplx ratio;    // mean of (op psi_src)/psi_tgt over the samples
    double defect; // max |ratio_i / mean - 1|
};

inline std::vector<double> default_chain_samples() {
    std::vector<double> xs;
    for (int i = 0; i < 21; ++i) xs.push_back(-1.0 + 5.0 * i / 20.0);
    return xs;
}

// One ladder step along a chain. Raising eps applies A- at eps_source,
// lowering eps applies A+ at eps_target. At the mirror junction
// eps_target = -1/2 the printed operator degenerates to a diverging
// multiple of the identity; the renormalized limit (source and target
// wavefunctions coincide there) is used instead of failing.
inline ChainStepResult chain_step(const ChainSpec& chain, int from_index,
                                  StepDirection direction,
                                  const std::vector<double>& x_samples = default_chain_samples()) {
    if (!chain.index_valid(from_index)) throw IndexOutOfChain("chain_step: bad source index");
    const int to_index = from_index + ((direction == StepDirection::Up) ? 1 : -1);
    const double eps_src = chain.epsilon(from_index);
    const double eps_tgt = chain.epsilon(to_index);
    const bool raising = eps_tgt > eps_src;

    const WaveFunctionSpec src = chain_wavefunction(chain, from_index);
    const SmoothFn f = smooth_fn(src);

    const bool junction = std::abs(2.0 * (raising ? eps_src : eps_tgt) + 1.0) <= tau_int;

    std::vector<cplx> applied(x_samples.size());
    double out_scale = 0.0, term_scale = 0.0;
    if (junction) {
        // limit of A±/gamma as gamma -> infinity: the identity
        for (std::size_t i = 0; i < x_samples.size(); ++i) {
            applied[i] = f.value(x_samples[i]);
            term_scale = std::max(term_scale, std::abs(applied[i]));
            out_scale = std::max(out_scale, std::abs(applied[i]));
        }
    } else {
        const LadderOperator op = raising ? make_operator(chain.params, eps_src, LadderSign::Minus)
                                          : make_operator(chain.params, eps_tgt, LadderSign::Plus);
        for (std::size_t i = 0; i < x_samples.size(); ++i) {
            const double x = x_samples[i];
            const double ex = std::exp(x);
            applied[i] = apply(op, f, x);
            term_scale = std::max(term_scale, std::abs(ex * f.d1(x)) +
                                                  std::abs(op.beta * ex * f.value(x)) +
                                                  std::abs(op.gamma * f.value(x)));
            out_scale = std::max(out_scale, std::abs(applied[i]));
        }
    }
    if (out_scale <= 1e-9 * term_scale)
        throw AnnihilatedState("chain endpoint: ladder operator annihilates the state");
    if (!chain.index_valid(to_index)) throw IndexOutOfChain("chain_step: bad target index");

    const WaveFunctionSpec tgt = chain_wavefunction(chain, to_index);
    cplx mean = 0.0;
    std::vector<cplx> ratios(x_samples.size());
    for (std::size_t i = 0; i < x_samples.size(); ++i) {
        ratios[i] = applied[i] / evaluate(tgt, x_samples[i]);
        mean += ratios[i];
    }
    mean /= static_cast<double>(x_samples.size());
    double defect = 0.0;
    for (const cplx& r : ratios) defect = std::max(defect, std::abs(r / mean - 1.0));
    return {mean, defect};
}

} // namespace morse

#endif
