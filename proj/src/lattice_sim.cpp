#include "cavlase/lattice_sim.hpp"

#include <algorithm>
#include <cmath>

#include "cavlase/errors.hpp"

namespace cavlase {

namespace {

// State layout: y(0)=c_a, y(1..N)=a_1..a_N, y(N+1..2N)=a_{-1}..a_{-N}.
struct Generator {
    int n = 0;
    double kappa = 0.0;
    double kappa0 = 0.0;
    double omega_a = 0.0;
    double cavity_rate = 0.0;
    double site_loss = 0.0;

    void operator()(const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const {
        const Complex ik(0.0, kappa);
        const Complex ik0(0.0, kappa0);
        dy(0) = Complex(cavity_rate, -omega_a) * y(0) + ik0 * (y(1) + y(n + 1));
        for (int arm = 0; arm < 2; ++arm) {
            const int base = 1 + arm * n;
            dy(base) = ik * y(base + 1) + ik0 * y(0) - site_loss * y(base);
            for (int j = 1; j + 1 < n; ++j)
                dy(base + j) = ik * (y(base + j + 1) + y(base + j - 1)) -
                               site_loss * y(base + j);
            dy(base + n - 1) =
                ik * y(base + n - 2) - site_loss * y(base + n - 1);
        }
    }
};

void rk4_step(const Generator& f, double dt, Eigen::VectorXcd& y,
              Eigen::VectorXcd& k1, Eigen::VectorXcd& k2, Eigen::VectorXcd& k3,
              Eigen::VectorXcd& k4, Eigen::VectorXcd& tmp) {
    f(y, k1);
    tmp = y + (0.5 * dt) * k1;
    f(tmp, k2);
    tmp = y + (0.5 * dt) * k2;
    f(tmp, k3);
    tmp = y + dt * k3;
    f(tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

int default_sites(double kappa, double t_max) {
    return 2 * static_cast<int>(std::ceil(kappa * t_max)) + 50;
}

TimeSeries evolve(const CrowParams& rings, double gain, double intrinsic_loss,
                  const SimConfig& cfg, LossPlacement placement) {
    validate(rings);
    if (cfg.dt <= 0.0 || cfg.t_max <= 0.0)
        throw ConfigError("time step and horizon must be positive");
    if (cfg.record_stride < 1)
        throw ConfigError("record stride must be at least 1");
    const int n =
        cfg.n_sites > 0 ? cfg.n_sites : default_sites(rings.kappa, cfg.t_max);
    if (n < 8) throw ConfigError("needs at least 8 sites per arm");
    if (cfg.guard_enabled && cfg.t_max > 0.45 * n / rings.kappa)
        throw ConfigError(
            "horizon reaches the lattice wall; add sites, shorten the run, or "
            "disable the guard");
    const double fastest = std::abs(rings.omega_a) +
                           std::abs(gain - intrinsic_loss) + rings.gamma_loss +
                           2.0 * rings.kappa + 2.0 * rings.kappa0;
    if (cfg.dt * fastest > 1.5)
        throw ConfigError("time step too coarse for the fastest rate");
    const long n_steps = std::lround(cfg.t_max / cfg.dt);
    if (n_steps < 1) throw ConfigError("horizon shorter than one step");

    Generator f;
    f.n = n;
    f.kappa = rings.kappa;
    f.kappa0 = rings.kappa0;
    f.omega_a = rings.omega_a;
    f.site_loss = rings.gamma_loss;
    f.cavity_rate =
        gain - intrinsic_loss -
        (placement == LossPlacement::global ? rings.gamma_loss : 0.0);

    TimeSeries out;
    out.gain = gain;
    out.intrinsic_loss = intrinsic_loss;
    out.gamma_loss = rings.gamma_loss;
    out.placement = placement;
    out.n_sites = n;
    out.dt = cfg.dt;

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(2 * n + 1);
    y(0) = 1.0;
    Eigen::VectorXcd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
        tmp(y.size());

    auto record = [&](long step) {
        const double t = step * cfg.dt;
        const double total = y.squaredNorm();
        const double edge = std::norm(y(n)) + std::norm(y(2 * n));
        out.t.push_back(t);
        out.c_a.push_back(y(0));
        out.a_first.push_back(y(1));
        out.total_power.push_back(total);
        out.crow_power.push_back(total - std::norm(y(0)));
        out.edge_power.push_back(edge);
        double asym = 0.0;
        for (int j = 1; j <= n; ++j)
            asym = std::max(asym, std::abs(y(j) - y(n + j)));
        out.max_asymmetry = std::max(out.max_asymmetry, asym);
        if (!out.boundary_contact && edge > 1e-8 * total) {
            out.boundary_contact = true;
            out.first_contact_time = t;
        }
    };

    record(0);
    for (long step = 1; step <= n_steps; ++step) {
        rk4_step(f, cfg.dt, y, k1, k2, k3, k4, tmp);
        const double total = y.squaredNorm();
        if (!std::isfinite(total) || total > 1e250) {
            out.overflow_truncated = true;
            break;
        }
        if (step % cfg.record_stride == 0 || step == n_steps) record(step);
    }
    out.final_state = y;
    return out;
}

double power_balance_residual(const TimeSeries& series) {
    const std::size_t m = series.t.size();
    if (m < 3) throw ConfigError("needs at least three recorded points");
    double peak = 1.0;
    for (double p : series.total_power) peak = std::max(peak, p);
    const bool cavity_lossy = series.placement == LossPlacement::global;
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) {
        const double dpdt =
            (series.total_power[k + 1] - series.total_power[k - 1]) /
            (series.t[k + 1] - series.t[k - 1]);
        const double cavity = std::norm(series.c_a[k]);
        const double model =
            2.0 * (series.gain - series.intrinsic_loss) * cavity -
            2.0 * series.gamma_loss *
                (series.crow_power[k] + (cavity_lossy ? cavity : 0.0));
        worst = std::max(worst, std::abs(dpdt - model));
    }
    return worst / peak;
}

}  // namespace cavlase
