#include <cmath>
#include <initializer_list>
#include <random>

#include "cavlase/bessel.hpp"
#include "doctest.h"

using cavlase::bessel_j;

TEST_SUITE("bessel") {

TEST_CASE("reference values across both evaluation branches") {
    // High-precision references, series branch:
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(std::abs(bessel_j(0, 3.7) - (-0.3992302033711911)) < 1e-13);
    CHECK(std::abs(bessel_j(1, 7.1) - 0.02515327425391044) < 1e-13);
    // First zero of J0:
    CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-13);
    // Asymptotic branch:
    CHECK(std::abs(bessel_j(0, 17.3) - (-0.1337006470757643)) < 1e-12);
    CHECK(std::abs(bessel_j(1, 29.7) - (-0.08895863791303945)) < 1e-12);
    CHECK(std::abs(bessel_j(1, 64.5) - 0.07711419701138437) < 1e-12);
    CHECK(std::abs(bessel_j(0, 100.0) - 0.01998585030422312) < 1e-12);
}

TEST_CASE("branch crossover is seamless") {
    // Reference values straddling the series/asymptotic switch.
    CHECK(std::abs(bessel_j(0, 14.999999) - (-0.014224267722728211)) < 1e-12);
    CHECK(std::abs(bessel_j(0, 15.000001) - (-0.014224677930805438)) < 1e-12);
    CHECK(std::abs(bessel_j(1, 14.999999) - 0.205104066511497) < 1e-12);
    CHECK(std::abs(bessel_j(1, 15.000001) - 0.205104010715346) < 1e-12);
}

TEST_CASE("derivative identity J0' = -J1 at random arguments") {
    std::mt19937 rng(20260822);
    std::uniform_real_distribution<double> u(0.05, 80.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        const double h = 1e-5;
        const double d = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h);
        CHECK(std::abs(d + bessel_j(1, x)) < 1e-6);
    }
}

TEST_CASE("parity") {
    CHECK(bessel_j(0, -5.3) == bessel_j(0, 5.3));
    CHECK(bessel_j(1, -5.3) == -bessel_j(1, 5.3));
}

}  // TEST_SUITE
