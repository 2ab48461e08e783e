#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "morse/scattering.hpp"

using morse::cplx;
using morse::PoleClass;
using morse::PotentialParams;

namespace {

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

std::multimap<PoleClass, double> pole_map(double A, double lo, double hi) {
    std::multimap<PoleClass, double> m;
    for (const auto& rec : morse::enumerate_poles(PotentialParams::make(A), lo, hi))
        m.emplace(rec.cls, rec.im_k);
    return m;
}

void expect_set(const std::multimap<PoleClass, double>& m, PoleClass cls,
                const std::vector<double>& want) {
    std::vector<double> got;
    for (auto [it, end] = m.equal_range(cls); it != end; ++it) got.push_back(it->second);
    REQUIRE(got.size() == want.size());
    std::sort(got.begin(), got.end());
    std::vector<double> w = want;
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(got[i] - w[i]) <= 1e-9);
}

// (1/2 pi i) contour integral of S dk on a small circle
cplx contour_residue(const PotentialParams& p, cplx k0, double radius) {
    const int nodes = 512;
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double t = 2.0 * morse::pi * j / nodes;
        const cplx w = radius * std::exp(cplx(0.0, t));
        sum += morse::s_matrix_unchecked(p, k0 + w) * w;
    }
    return sum / static_cast<double>(nodes);
}

} // namespace

TEST_CASE("regime detection") {
    CHECK(PotentialParams::make(2.3).regime == morse::Regime::Generic);
    CHECK(PotentialParams::make(2.0).regime == morse::Regime::Integer);
    CHECK(PotentialParams::make(2.0).N == 2);
    CHECK(PotentialParams::make(2.5).regime == morse::Regime::HalfInteger);
    CHECK(PotentialParams::make(2.5).N == 3); // A = (2N-1)/2
    CHECK(PotentialParams::make(0.5).regime == morse::Regime::HalfInteger);
    CHECK(PotentialParams::make(0.5).N == 1);
    CHECK_THROWS_AS(PotentialParams::make(-1.0), morse::InvalidParams);
    CHECK_THROWS_AS(PotentialParams::make(0.0), morse::InvalidParams);
}

TEST_CASE("S(k) matches frozen high-precision values") {
    const auto p = PotentialParams::make(2.3);
    CHECK(rel_err(morse::s_matrix(p, {1.0, 0.0}),
                  {0.220965889780664659312134717976, -0.97528153655928458650025518791}) < 1e-12);
    const auto q = PotentialParams::make(0.7);
    CHECK(rel_err(morse::s_matrix(q, {0.5, 0.25}),
                  {-1.20009966330253034261902997073, 0.589187368855314169052247845772}) < 1e-12);
}

TEST_CASE("unitarity and inverse symmetry on the real axis") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> uk(1e-6, 20.0);
    for (double A : {0.5, 1.5, 2.0, 2.3, 2.5, 3.0, 7.25}) {
        const auto p = PotentialParams::make(A);
        for (int i = 0; i < 200; ++i) {
            const double k = uk(rng);
            const cplx s = morse::s_matrix_unchecked(p, {k, 0.0});
            CHECK(std::abs(std::abs(s) - 1.0) <= 1e-10);
            CHECK(std::abs(s * morse::s_matrix_unchecked(p, {-k, 0.0}) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("Schwarz reflection off the real axis") {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    const auto p = PotentialParams::make(2.3);
    int done = 0;
    while (done < 200) {
        const cplx k(ur(rng), ur(rng));
        if (std::abs(k.real()) < 0.05) continue;
        const cplx lhs = morse::s_matrix_unchecked(p, -std::conj(k));
        const cplx rhs = std::conj(morse::s_matrix_unchecked(p, k));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
        ++done;
    }
}

TEST_CASE("pole map A = 2.3 (generic)") {
    const auto m = pole_map(2.3, -3.0, 3.0);
    expect_set(m, PoleClass::Bound, {2.3, 1.3, 0.3});
    expect_set(m, PoleClass::Antibound, {-0.7, -1.7, -2.7});
    expect_set(m, PoleClass::RedundantEven, {0.5, 1.5, 2.5});
    expect_set(m, PoleClass::RedundantOdd, {1.0, 2.0, 3.0});
    expect_set(m, PoleClass::SemiBound, {});
}

TEST_CASE("pole map A = 2 (integer)") {
    const auto m = pole_map(2.0, -3.0, 3.0);
    expect_set(m, PoleClass::Bound, {2.0, 1.0});
    expect_set(m, PoleClass::SemiBound, {0.0});
    expect_set(m, PoleClass::RedundantEven, {0.5, 1.5, 2.5});
    expect_set(m, PoleClass::Antibound, {});
    expect_set(m, PoleClass::RedundantOdd, {});
}

TEST_CASE("pole map A = 2.5 (half-integer)") {
    const auto m = pole_map(2.5, -3.0, 3.0);
    expect_set(m, PoleClass::Bound, {2.5, 1.5, 0.5});
    expect_set(m, PoleClass::RedundantOdd, {1.0, 2.0, 3.0});
    expect_set(m, PoleClass::Antibound, {});
    expect_set(m, PoleClass::RedundantEven, {});
    expect_set(m, PoleClass::SemiBound, {});
}

TEST_CASE("pole records carry energies and orders") {
    for (const auto& rec : morse::enumerate_poles(PotentialParams::make(2.3), -3.0, 3.0)) {
        CHECK(rec.energy == doctest::Approx(-rec.im_k * rec.im_k).epsilon(1e-14));
        CHECK(rec.net_order >= 0);
        if (rec.cls == PoleClass::Bound)
            CHECK(std::abs(rec.energy + (2.3 - rec.series_index) * (2.3 - rec.series_index)) <=
                  1e-12);
    }
    // integer A: the k = 0 record is a regular point marker
    for (const auto& rec : morse::enumerate_poles(PotentialParams::make(2.0), -3.0, 3.0))
        if (rec.cls == PoleClass::SemiBound) {
            CHECK(rec.net_order == 0);
            CHECK(rec.im_k == 0.0);
        }
}

TEST_CASE("checked evaluation refuses pole neighborhoods") {
    const auto p = PotentialParams::make(2.3);
    CHECK_THROWS_AS(morse::s_matrix(p, {0.0, 2.3}), morse::AtPole);
    CHECK_THROWS_AS(morse::s_matrix(p, {0.0, -0.7 + 1e-10}), morse::AtPole);
    // the semi-bound marker is not a pole: S is evaluable at k = 0 for integer A
    const cplx s0 = morse::s_matrix(PotentialParams::make(2.0), {0.0, 0.0});
    CHECK(std::isfinite(s0.real()));
}

TEST_CASE("analytic residues match contour quadrature") {
    for (double A : {2.0, 2.3, 2.5}) {
        const auto p = PotentialParams::make(A);
        for (const auto& rec : morse::enumerate_poles(p, -3.0, 3.0)) {
            if (rec.net_order != 1) {
                if (rec.cls != PoleClass::SemiBound)
                    CHECK_THROWS_AS(morse::residue(p, rec), morse::NotSimplePole);
                continue;
            }
            const cplx analytic = morse::residue(p, rec);
            const cplx numeric = contour_residue(p, rec.k0(), 1e-3);
            CHECK(rel_err(numeric, analytic) <= 1e-8);
        }
    }
}

TEST_CASE("pole simplicity: winding of d log S") {
    const auto p = PotentialParams::make(2.3);
    for (const auto& rec : morse::enumerate_poles(p, -3.0, 3.0)) {
        // trapezoid of S'/S via log differences on a circle: winding = -order
        const int nodes = 512;
        const double radius = 1e-2;
        double winding = 0.0;
        double prev = std::arg(morse::s_matrix_unchecked(p, rec.k0() + radius));
        for (int j = 1; j <= nodes; ++j) {
            const double t = 2.0 * morse::pi * j / nodes;
            const double cur =
                std::arg(morse::s_matrix_unchecked(p, rec.k0() + radius * std::exp(cplx(0.0, t))));
            double d = cur - prev;
            while (d > morse::pi) d -= 2.0 * morse::pi;
            while (d < -morse::pi) d += 2.0 * morse::pi;
            winding += d;
            prev = cur;
        }
        CHECK(std::abs(winding / (2.0 * morse::pi) + rec.net_order) < 1e-6);
    }
}

TEST_CASE("no poles off the imaginary axis") {
    const auto p = PotentialParams::make(2.0);
    const auto g = morse::s_matrix_grid(p, {-1.0, 1.0, -3.0, 3.0, 0.05, 1e6});
    for (std::size_t r = 0; r < g.n_im; ++r)
        for (std::size_t c = 0; c < g.n_re; ++c)
            if (std::abs(g.k_re(c)) > 0.07) CHECK(g.at(r, c) < 1e5);
}

TEST_CASE("phase shift derivative matches the frozen value and the curve slope") {
    const auto p = PotentialParams::make(0.5);
    CHECK(std::abs(morse::phase_shift_derivative(p, 1.0) - 0.77559500236484457337822120836) <
          1e-12);
    CHECK_THROWS_AS(morse::phase_shift_derivative(p, 0.0), morse::NonPositiveK);
    CHECK_THROWS_AS(morse::phase_shift_derivative(p, -1.0), morse::NonPositiveK);

    // delta' by central differences of the unwrapped curve
    for (double k : {0.3, 1.0, 2.7}) {
        const double h = 1e-5;
        const auto curve = morse::phase_shift_curve(p, {k - h, k + h});
        const double slope = (curve[1] - curve[0]) / (2.0 * h);
        CHECK(std::abs(slope - morse::phase_shift_derivative(p, k)) < 1e-6);
    }
}

TEST_CASE("phase shift curve is continuous") {
    for (double A : {0.5, 1.5, 2.5}) {
        const auto p = PotentialParams::make(A);
        std::vector<double> ks;
        for (int i = 1; i <= 5000; ++i) ks.push_back(i * 1e-3);
        const auto curve = morse::phase_shift_curve(p, ks);
        for (std::size_t i = 1; i < curve.size(); ++i)
            CHECK(std::abs(curve[i] - curve[i - 1]) < morse::pi / 2.0);
        // large-k behavior of the derivative: Delta ~ 2 ln(2k)
        CHECK(std::abs(morse::phase_shift_derivative(p, 50.0) - 2.0 * std::log(100.0)) < 0.05);
    }
}

TEST_CASE("grid evaluation is deterministic across thread counts") {
    const auto p = PotentialParams::make(2.3);
    const morse::GridSpec spec{-0.5, 0.5, -1.0, 1.0, 0.05, 1e6};
    setenv("MORSE_SMATRIX_THREADS", "1", 1);
    const auto g1 = morse::s_matrix_grid(p, spec);
    setenv("MORSE_SMATRIX_THREADS", "7", 1);
    const auto g7 = morse::s_matrix_grid(p, spec);
    unsetenv("MORSE_SMATRIX_THREADS");
    REQUIRE(g1.abs_s.size() == g7.abs_s.size());
    for (std::size_t i = 0; i < g1.abs_s.size(); ++i) CHECK(g1.abs_s[i] == g7.abs_s[i]);
    // real-axis row is all ones
    for (std::size_t c = 0; c < g1.n_re; ++c) {
        const std::size_t r0 = static_cast<std::size_t>(std::round((0.0 - spec.im_min) / spec.step));
        CHECK(g1.at(r0, c) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(morse::s_matrix_grid(p, {0.5, 0.5, -1.0, 1.0, 0.05, 1e6}),
                    morse::InvalidParams);
}
