#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cavlase/fitting.hpp"
#include "cavlase/rootfind.hpp"
#include "doctest.h"

using cavlase::find_root_complex;
using C = std::complex<double>;

TEST_SUITE("rootfind") {

TEST_CASE("quadratic root from a nearby seed") {
    auto F = [](C z) { return z * z - C(2.0, 3.0); };
    auto r = find_root_complex(F, C(1.5, 1.0), 1e-12);
    CHECK(std::abs(F(r.root)) <= 1e-12);
    CHECK(std::abs(r.root * r.root - C(2.0, 3.0)) < 1e-11);
}

TEST_CASE("transcendental root with branch cut nearby") {
    // sqrt(z^2+4) = 2.5 has roots z = ±1.5; seed in the right half-plane.
    auto F = [](C z) { return std::sqrt(z * z + 4.0) - 2.5; };
    auto r = find_root_complex(F, C(1.0, 0.3), 1e-13);
    CHECK(std::abs(r.root - C(1.5, 0.0)) < 1e-10);
}

TEST_CASE("residual is verified, failure carries the last iterate") {
    auto F = [](C z) { return std::exp(z) + 1e3; };  // no root near 0
    bool threw = false;
    try {
        find_root_complex(F, C(0.0, 0.0), 1e-14, 8);
    } catch (const cavlase::RootFailure& e) {
        threw = true;
        CHECK(e.last.residual > 0.0);
        CHECK(e.last.iterations > 0);
    }
    CHECK(threw);
}

TEST_CASE("random polynomial roots, residual always below tolerance") {
    std::mt19937 rng(99101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const C w(u(rng), u(rng));
        auto F = [&](C z) { return (z - w) * (z + 2.0 - 0.5 * w); };
        auto r = find_root_complex(F, w + C(0.1 * u(rng), 0.1 * u(rng)), 1e-12);
        CHECK(std::abs(F(r.root)) <= 1e-12);
    }
}

}  // TEST_SUITE

TEST_SUITE("fitting") {

TEST_CASE("recovers a clean power law") {
    std::vector<double> t, y;
    for (int i = 0; i < 40; ++i) {
        const double ti = 2.0 + 0.7 * i;
        t.push_back(ti);
        y.push_back(3.4 * std::pow(ti, -1.5));
    }
    auto f = cavlase::fit_power_law(t, y);
    CHECK(f.exponent == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(std::exp(f.log_amplitude) == doctest::Approx(3.4).epsilon(1e-10));
    CHECK(f.rms_residual < 1e-12);
}

TEST_CASE("log-linear rate fit") {
    std::vector<double> t, y;
    for (int i = 0; i < 30; ++i) {
        t.push_back(0.5 * i);
        y.push_back(2.0 * std::exp(-0.37 * 0.5 * i));
    }
    auto f = cavlase::fit_log_linear(t, y);
    CHECK(f.rate == doctest::Approx(-0.37).epsilon(1e-10));
}

TEST_CASE("preconditions are enforced") {
    std::vector<double> t{1, 2, 3}, y{1, 2, 3};
    CHECK_THROWS_AS(cavlase::fit_power_law(t, y), cavlase::RegimeError);
    std::vector<double> t2(12, 1.0), y2(12, -1.0);
    CHECK_THROWS_AS(cavlase::fit_power_law(t2, y2), cavlase::RegimeError);
}

TEST_CASE("envelope peaks of a damped oscillation") {
    std::vector<double> t, y;
    for (int i = 0; i <= 2000; ++i) {
        const double ti = 0.05 * i;
        t.push_back(ti);
        y.push_back(std::abs(std::cos(3.0 * ti)) * std::exp(-0.1 * ti));
    }
    auto idx = cavlase::envelope_peaks(t, y, 10.0, 90.0);
    CHECK(idx.size() > 10);
    // Peak spacing of |cos| is π/3.
    const double spacing =
        (t[idx.back()] - t[idx.front()]) / double(idx.size() - 1);
    CHECK(spacing == doctest::Approx(M_PI / 3.0).epsilon(0.02));
    // Fitting the peak heights recovers the decay rate.
    std::vector<double> tp, yp;
    for (auto i : idx) {
        tp.push_back(t[i]);
        yp.push_back(y[i]);
    }
    auto f = cavlase::fit_log_linear(tp, yp);
    CHECK(f.rate == doctest::Approx(-0.1).epsilon(0.01));
}

}  // TEST_SUITE
