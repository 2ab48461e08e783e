#ifndef MORSE_ERRORS_HPP
#define MORSE_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace morse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma(z) evaluated at (or within tolerance of) the pole z = -index.
struct PoleOfGamma : Error {
    int index;
    explicit PoleOfGamma(int n)
        : Error("gamma pole at z = -" + std::to_string(n)), index(n) {}
};

// Kummer c-parameter at a non-positive integer without early truncation.
struct InvalidC : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

// Checked S-matrix evaluation requested within the guard radius of a pole.
struct AtPole : Error {
    std::complex<double> pole;
    explicit AtPole(std::complex<double> k0)
        : Error("S(k) evaluated at a pole, Im k = " + std::to_string(k0.imag())),
          pole(k0) {}
};

struct NonPositiveK : Error {
    using Error::Error;
};

struct NotSimplePole : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct UnsupportedFamily : Error {
    using Error::Error;
};

// Ladder operator requested at epsilon = -1/2 where Eq.-level coefficients blow up.
struct SingularEpsilon : Error {
    using Error::Error;
};

struct IndexOutOfChain : Error {
    using Error::Error;
};

struct AnnihilatedState : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

} // namespace morse

#endif
