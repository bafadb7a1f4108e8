#include <cmath>
#include <complex>

#include "cavlase/bessel.hpp"
#include "cavlase/fitting.hpp"
#include "cavlase/lattice_sim.hpp"
#include "cavlase/quadrature.hpp"
#include "doctest.h"

using namespace cavlase;

namespace {

CrowParams rings(double kappa0, double omega_a = 0.0, double gamma_loss = 0.0) {
    CrowParams p;
    p.kappa = 1.0;
    p.kappa0 = kappa0;
    p.omega_a = omega_a;
    p.gamma_loss = gamma_loss;
    return p;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("matched resonant decay reproduces bessel amplitudes") {
    SimConfig cfg;
    cfg.n_sites = 120;
    cfg.dt = 0.02;
    cfg.t_max = 40.0;
    cfg.record_stride = 5;
    auto ts = evolve(rings(1.0), 0.0, 0.0, cfg);
    double worst_c = 0.0;
    double worst_a = 0.0;
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        const double x = 2.0 * ts.t[k];
        worst_c = std::max(worst_c, std::abs(ts.c_a[k] - bessel_j(0, x)));
        worst_a = std::max(
            worst_a, std::abs(ts.a_first[k] - Complex(0.0, bessel_j(1, x))));
    }
    CHECK(worst_c < 1e-3);
    CHECK(worst_a < 1e-3);
}

TEST_CASE("conservative run keeps unit power and mirror symmetry") {
    SimConfig cfg;
    cfg.dt = 0.005;
    cfg.t_max = 30.0;
    cfg.record_stride = 10;
    auto ts = evolve(rings(0.7, 0.3), 0.0, 0.0, cfg);
    double worst = 0.0;
    for (double p : ts.total_power) worst = std::max(worst, std::abs(p - 1.0));
    CHECK(worst < 1e-8);
    CHECK(ts.max_asymmetry < 1e-12);
    CHECK(!ts.boundary_contact);
    CHECK(!ts.overflow_truncated);
    CHECK(ts.n_sites == default_sites(1.0, 30.0));
}

TEST_CASE("step halving gains a factor near sixteen") {
    CrowParams p = rings(0.6, 0.3, 0.01);
    SimConfig cfg;
    cfg.n_sites = 40;
    cfg.t_max = 8.0;
    cfg.dt = 0.005;
    const Complex ref = evolve(p, 0.02, 0.005, cfg).c_a.back();
    cfg.dt = 0.08;
    const double e1 = std::abs(evolve(p, 0.02, 0.005, cfg).c_a.back() - ref);
    cfg.dt = 0.04;
    const double e2 = std::abs(evolve(p, 0.02, 0.005, cfg).c_a.back() - ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("uniform loss factorizes out of the dynamics") {
    SimConfig cfg;
    cfg.n_sites = 60;
    cfg.dt = 0.005;
    cfg.t_max = 10.0;
    cfg.record_stride = 10;
    auto lossy =
        evolve(rings(0.5, 0.2, 0.05), 0.0, 0.0, cfg, LossPlacement::global);
    auto free = evolve(rings(0.5, 0.2, 0.0), 0.0, 0.0, cfg);
    for (std::size_t k = 0; k < free.t.size(); ++k) {
        const double grow = std::exp(0.05 * free.t[k]);
        CHECK(std::abs(lossy.c_a[k] * grow - free.c_a[k]) < 1e-8);
        CHECK(std::abs(lossy.total_power[k] * grow * grow -
                       free.total_power[k]) < 1e-8);
    }
}

TEST_CASE("power bookkeeping closes for both loss placements") {
    CrowParams p = rings(0.6, 0.25, 0.02);
    SimConfig cfg;
    cfg.dt = 0.005;
    cfg.t_max = 25.0;
    for (auto place : {LossPlacement::crow_only, LossPlacement::global}) {
        auto ts = evolve(p, 0.08, 0.03, cfg, place);
        CHECK(power_balance_residual(ts) < 1e-5);
    }
}

TEST_CASE("weak coupling decays at the golden-rule rate") {
    SimConfig cfg;
    cfg.dt = 0.05;
    cfg.t_max = 150.0;
    cfg.record_stride = 20;
    auto ts = evolve(rings(0.1), 0.0, 0.0, cfg);
    std::vector<double> t, y;
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        if (ts.t[k] < 25.0) continue;
        t.push_back(ts.t[k]);
        y.push_back(std::abs(ts.c_a[k]));
    }
    auto fit = fit_log_linear(t, y);
    CHECK(std::abs(-fit.rate - 0.02) < 0.05 * 0.02);
}

TEST_CASE("final state maps onto the band with matching weight") {
    SimConfig cfg;
    cfg.n_sites = 120;
    cfg.dt = 0.02;
    cfg.t_max = 40.0;
    cfg.record_stride = 100;
    auto ts = evolve(rings(1.0), 0.0, 0.0, cfg);
    REQUIRE(ts.final_state.size() == 241);
    CHECK(std::abs(ts.final_state(0) - ts.c_a.back()) == 0.0);
    const Eigen::VectorXcd arm = ts.final_state.segment(1, 120);
    auto weight = integrate(
        [&](double q) { return Complex(std::norm(sine_sum(arm, q))); }, 0.0,
        M_PI, 1e-10);
    CHECK(std::abs(weight.value.real() * 4.0 / M_PI - ts.crow_power.back()) <
          1e-8);
}

TEST_CASE("configuration guards") {
    SimConfig cfg;
    cfg.t_max = 100.0;
    cfg.n_sites = 40;
    CHECK_THROWS_AS(evolve(rings(0.5), 0.0, 0.0, cfg), ConfigError);
    cfg.guard_enabled = false;
    auto ts = evolve(rings(0.5), 0.0, 0.0, cfg);
    CHECK(ts.boundary_contact);
    CHECK(ts.first_contact_time < 40.0);

    SimConfig bad;
    bad.dt = -0.01;
    CHECK_THROWS_AS(evolve(rings(0.5), 0.0, 0.0, bad), ConfigError);
    bad = SimConfig{};
    bad.dt = 1.0;
    CHECK_THROWS_AS(evolve(rings(0.5), 0.0, 0.0, bad), ConfigError);
    bad = SimConfig{};
    bad.record_stride = 0;
    CHECK_THROWS_AS(evolve(rings(0.5), 0.0, 0.0, bad), ConfigError);
    bad = SimConfig{};
    bad.n_sites = 4;
    bad.t_max = 0.5;
    CHECK_THROWS_AS(evolve(rings(0.5), 0.0, 0.0, bad), ConfigError);
    CHECK(default_sites(1.0, 100.0) == 250);
}

}  // TEST_SUITE
