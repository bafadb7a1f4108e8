#include <cmath>
#include <complex>
#include <random>

#include "cavlase/crow.hpp"
#include "doctest.h"

using namespace cavlase;

namespace {

ReservoirSpectrum quad_only(const ReservoirSpectrum& s,
                            bool keep_continuation = false) {
    ReservoirSpectrum out = s;
    out.lamb_shift_exact = nullptr;
    out.self_energy_exact = nullptr;
    out.self_energy_cut_exact = nullptr;
    if (!keep_continuation) out.density_continuation = nullptr;
    return out;
}

CrowParams make(double kappa0, double omega_a = 0.0) {
    CrowParams p;
    p.kappa = 1.0;
    p.kappa0 = kappa0;
    p.omega_a = omega_a;
    return p;
}

}  // namespace

TEST_SUITE("crow") {

TEST_CASE("dispersion endpoints and center") {
    CrowParams p = make(0.3);
    p.omega0 = 5.0;
    CHECK(dispersion(p, 0.0) == doctest::Approx(3.0));
    CHECK(dispersion(p, M_PI / 2.0) == doctest::Approx(5.0));
    CHECK(dispersion(p, M_PI) == doctest::Approx(7.0));
}

TEST_CASE("structure function values and total weight") {
    auto spec = crow_spectrum(make(0.8));
    CHECK(spec.density(0.0) ==
          doctest::Approx(2.0 * 0.64 / M_PI).epsilon(1e-12));
    CHECK(spec.density(2.0) == 0.0);
    CHECK(spec.density(-2.0) == 0.0);
    auto mass = integrate([&](double w) { return Complex(spec.density(w)); },
                          -2.0, 2.0, 1e-9);
    CHECK(mass.value.real() == doctest::Approx(2.0 * 0.64).epsilon(1e-7));
}

TEST_CASE("closed-form self-energy limits") {
    CrowParams p = make(1.0);
    // Band-center boundary value from the right: Δ(0) − iπD(0) = −2iκ.
    const Complex sig0 = crow_self_energy_cut(p, 0.0, CutSide::right);
    CHECK(std::abs(sig0 - Complex(0.0, -2.0)) < 1e-13);
    // Far-field decay along the real axis.
    const Complex far = crow_self_energy(p, Complex(1e5, 0.0));
    CHECK(std::abs(far - Complex(0.0, -2.0 / 1e5)) < 1e-9);
    // On-cut evaluation must be rejected without a side.
    CHECK_THROWS_AS(crow_self_energy(p, Complex(0.0, 0.0)), RegimeError);
    CHECK_THROWS_AS(crow_self_energy(p, Complex(0.0, 1.3)), RegimeError);
}

TEST_CASE("second sheet has no spurious zeros at unit coupling") {
    // At κ0=κ, ω_a=0, g′=0: is − Σ^II(s) = −i(κ0/κ)²... reduces to −iR(s),
    // which vanishes only at the branch points s = ±2iκ.
    CrowParams p = make(1.0);
    for (double re : {-2.0, -1.0, -0.3, 0.3, 1.5}) {
        for (double im : {-2.5, -1.2, 0.0, 0.8, 2.5}) {
            const Complex s(re, im);
            const Complex v =
                Complex(0.0, 1.0) * s - crow_self_energy(p, s, Sheet::second);
            CHECK(std::abs(v) > 1e-6);
        }
    }
}

TEST_CASE("piecewise lamb shift branches") {
    CrowParams half = make(0.5);
    CHECK(crow_lamb_shift(half, 1.0) == doctest::Approx(0.25));
    CrowParams unit = make(1.0);
    CHECK(crow_lamb_shift(unit, 3.0) ==
          doctest::Approx(3.0 - std::sqrt(5.0)).epsilon(1e-14));
    CHECK(crow_lamb_shift(unit, -3.0) ==
          doctest::Approx(-(3.0 - std::sqrt(5.0))).epsilon(1e-14));
    // Continuity at the band edges.
    CHECK(crow_lamb_shift(unit, 2.0 + 1e-12) ==
          doctest::Approx(crow_lamb_shift(unit, 2.0 - 1e-12)).epsilon(1e-6));
}

TEST_CASE("closed form agrees with quadrature at 100 first-sheet points") {
    auto params = make(0.6, 0.0);
    auto exact = crow_spectrum(params);
    auto quad = quad_only(exact);
    std::mt19937 rng(77023);
    std::uniform_real_distribution<double> ure(0.05, 3.0);
    std::uniform_real_distribution<double> uim(-3.0, 3.0);
    std::bernoulli_distribution flip(0.5);
    for (int i = 0; i < 100; ++i) {
        const Complex s(ure(rng) * (flip(rng) ? 1.0 : -1.0), uim(rng));
        const Complex a = crow_self_energy(params, s);
        const Complex b = self_energy(quad, s, Sheet::first, 1e-11);
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("lamb shift closed form agrees with quadrature at 100 points") {
    auto params = make(0.45);
    auto quad = quad_only(crow_spectrum(params));
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> u(-3.5, 3.5);
    for (int i = 0; i < 100; ++i) {
        double w = u(rng);
        if (std::abs(std::abs(w) - 2.0) < 1e-3) w += 0.01;
        CHECK(std::abs(crow_lamb_shift(params, w) - lamb_shift(quad, w)) <
              1e-6);
    }
}

TEST_CASE("sheet consistency along the left cut edge") {
    auto params = make(0.7, 0.2);
    auto cont = quad_only(crow_spectrum(params), true);
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(-1.95, 1.95);
    for (int i = 0; i < 50; ++i) {
        const double w = u(rng);
        const double delta = crow_lamb_shift(params, w);
        const double pid = M_PI * crow_spectrum(params).density(w);
        const Complex expect(delta, -pid);
        CHECK(std::abs(crow_self_energy_cut(params, w, CutSide::left,
                                            Sheet::second) -
                       expect) < 1e-12);
        CHECK(std::abs(self_energy_cut(cont, w, CutSide::left, Sheet::second) -
                       expect) < 1e-8);
    }
}

TEST_CASE("second-sheet continuation formula in the left half-plane") {
    auto params = make(0.7, 0.0);
    auto cont = quad_only(crow_spectrum(params), true);
    for (double re : {-2.0, -0.8, -0.1}) {
        for (double im : {-1.5, 0.0, 1.5}) {
            const Complex s(re, im);
            CHECK(std::abs(crow_self_energy(params, s, Sheet::second) -
                           self_energy(cont, s, Sheet::second, 1e-11)) < 1e-8);
        }
    }
}

TEST_CASE("bound-mode region and critical coupling") {
    CHECK(no_bound_mode_region(make(0.9, 0.0)));
    CHECK(no_bound_mode_region(make(std::sqrt(0.8), 0.4)));  // marginal
    CHECK(!no_bound_mode_region(make(std::sqrt(0.6), 1.0)));
    CHECK(critical_coupling(make(0.3, 0.0)) == doctest::Approx(1.0));
    CHECK(critical_coupling(make(0.3, 0.4)) ==
          doctest::Approx(std::sqrt(0.8)).epsilon(1e-14));
    CHECK(critical_coupling(make(0.3, 2.0)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(critical_coupling(make(0.3, 2.5)), RegimeError);
}

TEST_CASE("region test agrees with bound-mode emptiness on a coarse grid") {
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double wa = -1.1 + 2.2 * i / 7.0;  // ω_a/(2κ) in ±1.1
            const double r = 1.25 * j / 7.0;
            CrowParams p = make(r, 2.0 * wa);
            const bool empty = bound_modes(crow_spectrum(p), p.omega_a).empty();
            CHECK(empty == no_bound_mode_region(p));
        }
    }
}

TEST_CASE("continuum map: single-term shape") {
    CrowParams p = make(0.5);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    a(0) = 1.0;
    Eigen::VectorXd grid(3);
    grid << -1.2, 0.0, 1.7;
    auto c = lattice_to_continuum(p, a, a, grid);
    for (int i = 0; i < 3; ++i) {
        const double u = grid(i) / 2.0;
        const Complex expect =
            -std::sqrt(2.0 / M_PI) * std::pow(1.0 - u * u, 0.25);
        CHECK(std::abs(c(i) - expect) < 1e-12);
    }
}

TEST_CASE("continuum map round trip and Parseval") {
    std::mt19937 rng(31337);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd a(50);
    for (int n = 0; n < 50; ++n) a(n) = Complex(g(rng), g(rng));
    auto phi = [&](double q) { return sine_sum(a, q); };
    auto back = sine_coeffs(phi, 50);
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-10);
    auto norm = integrate([&](double q) { return Complex(std::norm(phi(q))); },
                          0.0, M_PI, 1e-10);
    CHECK(norm.value.real() * 2.0 / M_PI ==
          doctest::Approx(a.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("continuum map input validation") {
    CrowParams p = make(0.5);
    Eigen::VectorXcd a = Eigen::VectorXcd::Ones(3);
    Eigen::VectorXcd b = a;
    b(1) = 2.0;
    Eigen::VectorXd grid(1);
    grid << 0.3;
    CHECK_THROWS_AS(lattice_to_continuum(p, b, a, grid), RegimeError);
    Eigen::VectorXd bad(1);
    bad << 2.0;
    CHECK_THROWS_AS(lattice_to_continuum(p, a, a, bad), RegimeError);
}

}  // TEST_SUITE
