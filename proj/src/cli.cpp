#include "cavlase/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "cavlase/bessel.hpp"
#include "cavlase/errors.hpp"
#include "cavlase/fitting.hpp"
#include "cavlase/lasing.hpp"
#include "cavlase/spectral.hpp"
#include "cavlase/version.hpp"

namespace cavlase::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(Complex z) {
    return "(" + num(z.real()) + "," + num(z.imag()) + ")";
}

std::string placement_name(LossPlacement placement) {
    return placement == LossPlacement::global ? "global" : "crow_only";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(val, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + val +
                          "' as a number");
    }
    if (pos != val.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + val +
                          "'");
    return v;
}

int to_int(const std::string& key, const std::string& val) {
    const double v = to_double(key, val);
    const double r = std::round(v);
    if (std::abs(v - r) > 0.0 || std::abs(r) > 1e9)
        throw ConfigError("key '" + key + "': expected an integer, got '" +
                          val + "'");
    return static_cast<int>(r);
}

SimConfig merged_sim(const RunConfig& cfg, const Overrides& ov) {
    SimConfig sim = cfg.sim;
    if (ov.dt) sim.dt = *ov.dt;
    if (ov.t_max) sim.t_max = *ov.t_max;
    if (ov.n_sites) sim.n_sites = *ov.n_sites;
    if (ov.no_guard) sim.guard_enabled = false;
    return sim;
}

std::string csv_path(const Overrides& ov, const std::string& stem) {
    std::string dir = ov.out_dir.empty() ? "." : ov.out_dir;
    if (dir.back() != '/') dir += '/';
    return dir + stem + ".csv";
}

std::string sim_comment(const CrowParams& rings, double gain, double gamma_i,
                        const SimConfig& sim, LossPlacement placement,
                        int n_sites_used) {
    std::ostringstream os;
    os << "kappa=" << num(rings.kappa) << " kappa0=" << num(rings.kappa0)
       << " omega_a=" << num(rings.omega_a) << " gain=" << num(gain)
       << " gamma_i=" << num(gamma_i)
       << " gamma_loss=" << num(rings.gamma_loss)
       << " placement=" << placement_name(placement)
       << " n_sites=" << n_sites_used << " dt=" << num(sim.dt)
       << " t_max=" << num(sim.t_max)
       << " record_stride=" << sim.record_stride
       << " guard=" << (sim.guard_enabled ? "on" : "off");
    return os.str();
}

std::vector<std::vector<double>> series_rows(const CrowParams& rings,
                                             const TimeSeries& ts) {
    std::vector<std::vector<double>> rows;
    rows.reserve(ts.t.size());
    for (std::size_t i = 0; i < ts.t.size(); ++i)
        rows.push_back({2.0 * rings.kappa * ts.t[i], std::abs(ts.c_a[i])});
    return rows;
}

// Envelope rate of |c_a| over [t_lo, t_hi]: fit the oscillation peaks when
// there are enough of them, otherwise fit the magnitude pointwise (a single
// dominant pole leaves it monotone, with no peaks to pick).
double envelope_rate(const TimeSeries& ts, double t_lo, double t_hi) {
    std::vector<double> mag(ts.c_a.size());
    for (std::size_t i = 0; i < ts.c_a.size(); ++i)
        mag[i] = std::abs(ts.c_a[i]);
    const auto idx = envelope_peaks(ts.t, mag, t_lo, t_hi);
    std::vector<double> pt, py;
    if (idx.size() >= 6) {
        for (const auto i : idx) {
            pt.push_back(ts.t[i]);
            py.push_back(mag[i]);
        }
    } else {
        for (std::size_t i = 0; i < ts.t.size(); ++i)
            if (ts.t[i] >= t_lo && ts.t[i] <= t_hi && mag[i] > 0.0) {
                pt.push_back(ts.t[i]);
                py.push_back(mag[i]);
            }
    }
    return fit_log_linear(pt, py).rate;
}

void print_regime_line(std::ostream& out, const CrowParams& rings) {
    const double r = rings.ratio();
    try {
        const double rc = critical_coupling(rings);
        const GainRegime regime = classify_regime(rings);
        const char* label =
            regime == GainRegime::below_critical      ? "below critical coupling"
            : regime == GainRegime::critical_detuned  ? "critically coupled, detuned"
                                                      : "critically coupled, resonant";
        out << "regime: " << label << " (r=" << num(r) << ", r_crit=" << num(rc)
            << ", margin=" << num(rc - r) << ")\n";
    } catch (const RegimeError& e) {
        out << "regime: " << e.what() << "\n";
    }
}

void print_sim_diagnostics(std::ostream& out, const TimeSeries& ts) {
    out << "power balance residual: " << num(power_balance_residual(ts))
        << "\n";
    if (ts.boundary_contact)
        out << "boundary guard: edge contact at t=" << num(ts.first_contact_time)
            << "; later samples include wall reflections\n";
    else
        out << "boundary guard: no contact\n";
    if (ts.overflow_truncated)
        out << "note: run truncated early, amplitudes overflowed\n";
}

void run_decay(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
    if (cfg.gain != 0.0)
        throw ConfigError("decay runs take no gain; use kind=gain_dynamics");
    CrowParams rings{cfg.kappa, cfg.kappa0, cfg.omega_a, cfg.gamma_loss,
                     0.0, 1.0};
    const SimConfig sim = merged_sim(cfg, ov);
    const TimeSeries ts = evolve(rings, 0.0, cfg.gamma_i, sim, cfg.placement);

    const std::string stem = cfg.out_stem.empty() ? "decay" : cfg.out_stem;
    const std::string path = csv_path(ov, stem);
    write_csv(path, {"two_kappa_t", "abs_c_a"},
              sim_comment(rings, 0.0, cfg.gamma_i, sim, cfg.placement,
                          ts.n_sites),
              series_rows(rings, ts));

    out << "run kind: decay\n";
    out << "parameters: kappa=" << num(cfg.kappa)
        << " kappa0=" << num(cfg.kappa0) << " omega_a=" << num(cfg.omega_a)
        << " gamma_i=" << num(cfg.gamma_i)
        << " gamma_loss=" << num(cfg.gamma_loss)
        << " placement=" << placement_name(cfg.placement) << "\n";
    out << "lattice: n_sites=" << ts.n_sites << " dt=" << num(sim.dt)
        << " t_max=" << num(sim.t_max) << " record_stride=" << sim.record_stride
        << "\n";
    print_regime_line(out, rings);

    const ReservoirSpectrum spec = crow_spectrum(rings);
    const auto modes = bound_modes(spec, cfg.omega_a);
    if (modes.empty()) {
        out << "bound modes: none\n";
    } else {
        out << "bound modes:";
        for (const double w : modes) out << " omega=" << num(w);
        out << " (nondecaying remainder expected)\n";
    }

    const MarkovRates mr = markov_rates(spec, cfg.omega_a);
    out << "golden-rule rate gamma_R=" << num(mr.gamma_R)
        << " shift delta_R=" << num(mr.delta_R) << "\n";
    if (modes.empty() && ts.t.size() >= 8) {
        const double fitted =
            envelope_rate(ts, 0.25 * sim.t_max, sim.t_max);
        out << "fitted decay rate: " << num(-fitted) << "\n";
        if (mr.gamma_R > 0.0 &&
            std::abs(-fitted - mr.gamma_R) <= 0.15 * mr.gamma_R)
            out << "note: near-Markovian decay, fitted rate within 15 percent "
                   "of the golden-rule rate\n";
    }

    if (cfg.gamma_i == 0.0 && cfg.gamma_loss == 0.0 && modes.empty()) {
        const std::size_t n = ts.t.size();
        const std::size_t stride = std::max<std::size_t>(1, n / 81);
        double worst = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < n; i += stride) {
            const Complex ref = decay_integral(spec, cfg.omega_a, ts.t[i]);
            worst = std::max(worst, std::abs(ts.c_a[i] - ref));
            ++used;
        }
        out << "route agreement (lattice vs spectral, " << used
            << " samples): max deviation=" << num(worst) << "\n";
    } else {
        out << "route agreement: skipped (needs gamma_i=0, gamma_loss=0 and "
               "no bound modes)\n";
    }
    print_sim_diagnostics(out, ts);
    out << "csv: " << path << " (" << ts.t.size() << " rows)\n";
}

void run_gain_dynamics(const RunConfig& cfg, const Overrides& ov,
                       std::ostream& out) {
    CrowParams rings{cfg.kappa, cfg.kappa0, cfg.omega_a, cfg.gamma_loss,
                     0.0, 1.0};
    validate(rings);
    const GainRegime regime = classify_regime(rings);
    const SimConfig sim = merged_sim(cfg, ov);
    const TimeSeries ts =
        evolve(rings, cfg.gain, cfg.gamma_i, sim, cfg.placement);

    const std::string stem = cfg.out_stem.empty() ? "dynamics" : cfg.out_stem;
    const std::string path = csv_path(ov, stem);
    write_csv(path, {"two_kappa_t", "abs_c_a"},
              sim_comment(rings, cfg.gain, cfg.gamma_i, sim, cfg.placement,
                          ts.n_sites),
              series_rows(rings, ts));

    out << "run kind: gain_dynamics\n";
    out << "parameters: kappa=" << num(cfg.kappa)
        << " kappa0=" << num(cfg.kappa0) << " omega_a=" << num(cfg.omega_a)
        << " gain=" << num(cfg.gain) << " gamma_i=" << num(cfg.gamma_i)
        << " gamma_loss=" << num(cfg.gamma_loss)
        << " placement=" << placement_name(cfg.placement) << "\n";
    out << "lattice: n_sites=" << ts.n_sites << " dt=" << num(sim.dt)
        << " t_max=" << num(sim.t_max) << " record_stride=" << sim.record_stride
        << "\n";
    print_regime_line(out, rings);

    const double two_k = 2.0 * cfg.kappa;
    if (regime == GainRegime::below_critical) {
        const ThresholdResult th = threshold_crow(rings, cfg.gamma_i);
        out << "threshold: g_th=" << num(th.g_th)
            << " omega_osc=" << num(th.omega_osc)
            << " (g/g_th=" << num(cfg.gain / th.g_th) << ")\n";
    } else if (regime == GainRegime::critical_detuned) {
        out << "threshold: none; any positive gain grows (sigma > 0 for "
               "g > 0)\n";
    } else {
        out << "threshold: no single value; neutral oscillation for 0 < g < "
            << num(two_k) << ", secular growth at g=" << num(two_k)
            << ", exponential growth above\n";
    }

    bool have_pole = false;
    ComplexPole pole;
    if (ov.seed_pole) {
        pole = resonance_pole(crow_spectrum(rings), cfg.omega_a,
                              cfg.gain - cfg.gamma_i, *ov.seed_pole);
        have_pole = true;
    } else {
        try {
            pole = gain_pole(rings, cfg.gamma_i, cfg.gain);
            have_pole = true;
        } catch (const RegimeError& e) {
            out << "pole: " << e.what() << "\n";
        }
    }
    if (have_pole) {
        out << "pole: s_p=" << num(pole.s_p) << " sheet="
            << (pole.sheet == Sheet::first ? "first" : "second")
            << " sigma=" << num(pole.s_p.real())
            << " residue=" << num(pole.residue) << "\n";
        if (ts.t.size() >= 8 && !ts.overflow_truncated) {
            const double fitted =
                envelope_rate(ts, sim.t_max * 2.0 / 3.0, sim.t_max);
            out << "envelope rate: predicted sigma=" << num(pole.s_p.real())
                << " fitted=" << num(fitted) << "\n";
        }
    }
    print_sim_diagnostics(out, ts);
    out << "csv: " << path << " (" << ts.t.size() << " rows)\n";
}

void run_threshold_sweep(const RunConfig& cfg, const Overrides& ov,
                         std::ostream& out) {
    if (cfg.kappa <= 0.0) throw ConfigError("kappa must be positive");
    if (cfg.grid_points < 2)
        throw ConfigError("threshold_sweep needs grid_points >= 2");
    const double w = cfg.omega_a / (2.0 * cfg.kappa);
    std::vector<double> grid(cfg.grid_points);
    for (int i = 0; i < cfg.grid_points; ++i)
        grid[i] = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i /
                                     (cfg.grid_points - 1);
    const ThresholdCurve curve = threshold_sweep(w, grid);

    std::vector<std::vector<double>> rows;
    rows.reserve(curve.points.size());
    for (const auto& p : curve.points)
        rows.push_back({p.r_squared, p.g_over_2k});

    std::ostringstream comment;
    comment << "kappa=" << num(cfg.kappa) << " omega_a=" << num(cfg.omega_a)
            << " omega_a_over_2k=" << num(w) << " grid_min=" << num(cfg.grid_min)
            << " grid_max=" << num(cfg.grid_max)
            << " grid_points=" << cfg.grid_points;

    const std::string stem = cfg.out_stem.empty() ? "sweep" : cfg.out_stem;
    const std::string path = csv_path(ov, stem);
    write_csv(path, {"r_squared", "g_th_over_2k"}, comment.str(), rows);

    out << "run kind: threshold_sweep\n";
    out << "parameters: " << comment.str() << "\n";
    out << "no-bound-mode window: r_squared <= " << num(1.0 - std::abs(w))
        << "\n";
    out << "peak: r_squared=" << num(curve.peak_r_squared)
        << " g_th_over_2k=" << num(curve.peak_g_over_2k) << "\n";
    out << "csv: " << path << " (" << rows.size() << " rows)\n";
}

void run_growth_rate_track(const RunConfig& cfg, const Overrides& ov,
                           std::ostream& out) {
    CrowParams rings{cfg.kappa, cfg.kappa0, cfg.omega_a, 0.0, 0.0, 1.0};
    validate(rings);
    const GainRegime regime = classify_regime(rings);
    if (cfg.grid_points < 2)
        throw ConfigError("growth_rate_track needs grid_points >= 2");

    const double two_k = 2.0 * cfg.kappa;
    std::vector<std::vector<double>> rows;
    int skipped = 0;
    for (int i = 0; i < cfg.grid_points; ++i) {
        const double g = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i /
                                            (cfg.grid_points - 1);
        try {
            const double sigma = growth_rate(rings, cfg.gamma_i, g);
            rows.push_back({g / two_k, sigma / two_k});
        } catch (const RegimeError&) {
            ++skipped;  // no resonance pole at this gain
        }
    }
    if (rows.empty())
        throw NumericError(
            "growth rate track: no resonance pole anywhere on the grid");

    std::ostringstream comment;
    comment << "kappa=" << num(cfg.kappa) << " kappa0=" << num(cfg.kappa0)
            << " omega_a=" << num(cfg.omega_a)
            << " gamma_i=" << num(cfg.gamma_i)
            << " grid_min=" << num(cfg.grid_min)
            << " grid_max=" << num(cfg.grid_max)
            << " grid_points=" << cfg.grid_points;

    const std::string stem = cfg.out_stem.empty() ? "track" : cfg.out_stem;
    const std::string path = csv_path(ov, stem);
    write_csv(path, {"g_over_2k", "sigma_over_2k"}, comment.str(), rows);

    out << "run kind: growth_rate_track\n";
    out << "parameters: " << comment.str() << "\n";
    print_regime_line(out, rings);
    if (skipped > 0)
        out << "note: " << skipped
            << " grid points skipped, no resonance pole there\n";

    double g_cross = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double s0 = rows[i - 1][1], s1 = rows[i][1];
        if (s0 < 0.0 && s1 >= 0.0) {
            g_cross = rows[i - 1][0] +
                      (rows[i][0] - rows[i - 1][0]) * (-s0) / (s1 - s0);
            break;
        }
    }
    if (g_cross >= 0.0) {
        out << "sign change: estimated g_th_over_2k=" << num(g_cross);
        if (regime == GainRegime::below_critical) {
            const ThresholdResult th = threshold_crow(rings, cfg.gamma_i);
            out << " closed-form=" << num(th.g_th / two_k);
        }
        out << "\n";
    } else if (!rows.empty() && rows.front()[1] > 0.0) {
        out << "sign change: none, sigma > 0 over the whole grid\n";
    }
    out << "csv: " << path << " (" << rows.size() << " rows)\n";
}

void run_regime_report(const RunConfig& cfg, const Overrides&,
                       std::ostream& out) {
    CrowParams rings{cfg.kappa, cfg.kappa0, cfg.omega_a, cfg.gamma_loss,
                     0.0, 1.0};
    validate(rings);
    const double two_k = 2.0 * cfg.kappa;
    const double w = cfg.omega_a / two_k;
    const double r = rings.ratio();

    out << "run kind: regime_report\n";
    out << "parameters: kappa=" << num(cfg.kappa)
        << " kappa0=" << num(cfg.kappa0) << " omega_a=" << num(cfg.omega_a)
        << " gamma_i=" << num(cfg.gamma_i)
        << " gamma_loss=" << num(cfg.gamma_loss) << "\n";
    out << "band: (" << num(-two_k) << ", " << num(two_k)
        << ") omega_a_over_2k=" << num(w) << "\n";
    print_regime_line(out, rings);
    out << "no-bound-mode window: omega_a_over_2k in [" << num(r * r - 1.0)
        << ", " << num(1.0 - r * r) << "]\n";

    const ReservoirSpectrum spec = crow_spectrum(rings);
    const auto modes = bound_modes(spec, cfg.omega_a);
    if (modes.empty()) {
        out << "bound modes: none\n";
    } else {
        out << "bound modes:";
        for (const double m : modes) out << " omega=" << num(m);
        out << "\n";
    }
    if (std::abs(w) < 1.0) {
        const CriticalCouplings cc = critical_couplings(spec, cfg.omega_a);
        out << "critical coupling scales: lower-edge lambda="
            << num(cc.lambda_lower) << " upper-edge lambda="
            << num(cc.lambda_upper) << "\n";
    }
    const MarkovRates mr = markov_rates(spec, cfg.omega_a);
    out << "golden-rule rate gamma_R=" << num(mr.gamma_R)
        << " shift delta_R=" << num(mr.delta_R) << "\n";
    if (mr.inside_band)
        out << "memory time: " << num(memory_time(spec, cfg.omega_a)) << "\n";

    try {
        const GainRegime regime = classify_regime(rings);
        if (regime == GainRegime::below_critical) {
            const ThresholdResult th = threshold_crow(rings, cfg.gamma_i);
            out << "threshold: g_th=" << num(th.g_th)
                << " omega_osc=" << num(th.omega_osc) << "\n";
        } else if (regime == GainRegime::critical_detuned) {
            out << "threshold: none; any positive gain grows\n";
        } else {
            out << "threshold: no single value; neutral oscillation for 0 < g "
                   "< "
                << num(two_k) << ", secular growth at g=" << num(two_k)
                << ", exponential growth above\n";
        }
    } catch (const RegimeError&) {
        out << "threshold: not defined beyond critical coupling; bound modes "
               "dominate the dynamics\n";
    }
}

// --- figure presets -------------------------------------------------------

struct FigureContext {
    const Overrides& ov;
    std::ostream& out;
};

void figure_series(const FigureContext& fc, const std::string& stem,
                   const CrowParams& rings, double gain, double gamma_i,
                   const SimConfig& base, LossPlacement placement) {
    SimConfig sim = base;
    if (fc.ov.dt) sim.dt = *fc.ov.dt;
    if (fc.ov.t_max) sim.t_max = *fc.ov.t_max;
    if (fc.ov.n_sites) sim.n_sites = *fc.ov.n_sites;
    if (fc.ov.no_guard) sim.guard_enabled = false;
    const TimeSeries ts = evolve(rings, gain, gamma_i, sim, placement);
    const std::string path = csv_path(fc.ov, stem);
    write_csv(path, {"two_kappa_t", "abs_c_a"},
              sim_comment(rings, gain, gamma_i, sim, placement, ts.n_sites),
              series_rows(rings, ts));
    fc.out << "wrote " << path << " (" << ts.t.size() << " rows)\n";
}

void figure6(const FigureContext& fc) {
    fc.out << "preset fig6: passive decay at kappa0/kappa = 0.2, 0.707, 1\n";
    const SimConfig sim{0, 0.01, 20.0, 5, true};
    const double roots[] = {0.2, 1.0 / std::sqrt(2.0), 1.0};
    const char* tags[] = {"0.2", "0.707", "1.0"};
    for (int i = 0; i < 3; ++i)
        figure_series(fc, std::string("fig6_r") + tags[i],
                      CrowParams{1.0, roots[i], 0.0, 0.0, 0.0, 1.0}, 0.0, 0.0,
                      sim, LossPlacement::global);
}

void figure7(const FigureContext& fc) {
    fc.out << "preset fig7: lasing threshold vs coupling at "
              "omega_a/2kappa = 0, 0.2, 0.5\n";
    const double ws[] = {0.0, 0.2, 0.5};
    const char* tags[] = {"0.0", "0.2", "0.5"};
    for (int i = 0; i < 3; ++i) {
        const double crit2 = 1.0 - ws[i];
        std::vector<double> grid(161);
        for (int k = 0; k < 161; ++k)
            grid[k] = (crit2 - 1e-13) * k / 160.0;
        const ThresholdCurve curve = threshold_sweep(ws[i], grid);
        std::vector<std::vector<double>> rows;
        for (const auto& p : curve.points)
            rows.push_back({p.r_squared, p.g_over_2k});
        std::ostringstream comment;
        comment << "kappa=1 omega_a_over_2k=" << num(ws[i])
                << " grid_min=0 grid_max=" << num(crit2 - 1e-13)
                << " grid_points=161";
        const std::string path =
            csv_path(fc.ov, std::string("fig7_w") + tags[i]);
        write_csv(path, {"r_squared", "g_th_over_2k"}, comment.str(), rows);
        fc.out << "wrote " << path << " (" << rows.size()
               << " rows, peak g_th_over_2k=" << num(curve.peak_g_over_2k)
               << " at r_squared=" << num(curve.peak_r_squared) << ")\n";
    }
}

CrowParams fig8_rings() {
    return {1.0, std::sqrt(0.8), 0.36, 0.0, 0.0, 1.0};
}

void figure8a(const FigureContext& fc) {
    const CrowParams rings = fig8_rings();
    const double g_th = threshold_crow(rings, 0.0).g_th;
    fc.out << "preset fig8a: envelopes around threshold, g_th=" << num(g_th)
           << "\n";
    const SimConfig sim{700, 0.01, 300.0, 40, true};
    const double mult[] = {0.95, 1.0, 1.05};
    const char* tags[] = {"0.95", "1.00", "1.05"};
    for (int i = 0; i < 3; ++i)
        figure_series(fc, std::string("fig8a_m") + tags[i], rings,
                      mult[i] * g_th, 0.0, sim, LossPlacement::global);
}

void figure8b(const FigureContext& fc) {
    const CrowParams rings = fig8_rings();
    const double g_th = threshold_crow(rings, 0.0).g_th;
    fc.out << "preset fig8b: growth rate vs gain through threshold\n";
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 45; ++i) {
        const double g = g_th / 30.0 + (1.5 * g_th - g_th / 30.0) * i / 44.0;
        try {
            rows.push_back({g / 2.0, growth_rate(rings, 0.0, g) / 2.0});
        } catch (const RegimeError&) {
        }
    }
    std::ostringstream comment;
    comment << "kappa=1 kappa0=" << num(rings.kappa0)
            << " omega_a=" << num(rings.omega_a) << " gamma_i=0"
            << " grid_min=" << num(g_th / 30.0)
            << " grid_max=" << num(1.5 * g_th) << " grid_points=45";
    const std::string path = csv_path(fc.ov, "fig8b");
    write_csv(path, {"g_over_2k", "sigma_over_2k"}, comment.str(), rows);
    fc.out << "wrote " << path << " (" << rows.size() << " rows)\n";
}

CrowParams fig9_rings() {
    return {1.0, std::sqrt(0.8), 0.4, 0.0, 0.0, 1.0};
}

void figure9a(const FigureContext& fc) {
    const CrowParams rings = fig9_rings();
    fc.out << "preset fig9a: critically coupled detuned cavity, growth at "
              "small gain\n";
    const SimConfig sim{350, 0.01, 150.0, 20, true};
    const double gains[] = {0.04, 0.2, 0.5};
    const char* tags[] = {"0.02", "0.1", "0.25"};
    for (int i = 0; i < 3; ++i)
        figure_series(fc, std::string("fig9a_g") + tags[i], rings, gains[i],
                      0.0, sim, LossPlacement::global);
}

void figure9b(const FigureContext& fc) {
    const CrowParams rings = fig9_rings();
    fc.out << "preset fig9b: growth rate vs gain, critical detuned\n";
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 49; ++i) {
        const double g = 0.04 + (1.0 - 0.04) * i / 48.0;
        try {
            rows.push_back({g / 2.0, growth_rate(rings, 0.0, g) / 2.0});
        } catch (const RegimeError&) {
        }
    }
    std::ostringstream comment;
    comment << "kappa=1 kappa0=" << num(rings.kappa0)
            << " omega_a=" << num(rings.omega_a)
            << " gamma_i=0 grid_min=0.04 grid_max=1 grid_points=49";
    const std::string path = csv_path(fc.ov, "fig9b");
    write_csv(path, {"g_over_2k", "sigma_over_2k"}, comment.str(), rows);
    fc.out << "wrote " << path << " (" << rows.size() << " rows)\n";
}

void figure11(const FigureContext& fc) {
    fc.out << "preset fig11: resonant critical coupling across the gain "
              "ladder\n";
    const CrowParams rings{1.0, 1.0, 0.0, 0.0, 0.0, 1.0};
    const SimConfig sim{0, 0.01, 30.0, 10, true};
    const double gains[] = {0.0, 0.4, 1.9, 2.0, 2.2};
    const char* tags[] = {"0", "0.2", "0.95", "1", "1.1"};
    for (int i = 0; i < 5; ++i)
        figure_series(fc, std::string("fig11_g") + tags[i], rings, gains[i],
                      0.0, sim, LossPlacement::global);
}

void figure12(const FigureContext& fc) {
    fc.out << "preset fig12: gain ladder with uniform propagation loss "
              "gamma_loss=0.01\n";
    const CrowParams rings{1.0, 1.0, 0.0, 0.01, 0.0, 1.0};
    const SimConfig sim{500, 0.01, 200.0, 40, true};
    const double gains[] = {0.0, 0.4, 1.9, 2.0, 2.2};
    const char* tags[] = {"0", "0.2", "0.95", "1", "1.1"};
    for (int i = 0; i < 5; ++i)
        figure_series(fc, std::string("fig12_g") + tags[i], rings, gains[i],
                      0.0, sim, LossPlacement::global);
    const LossyEnvelope env = lossy_envelope(1.0, 2.0, 0.01, 100.0);
    fc.out << "reference envelope at g=2kappa: max=" << num(env.max_value)
           << " at t=" << num(env.t_star) << "\n";
}

}  // namespace

bool is_sweep_kind(RunKind kind) {
    return kind == RunKind::threshold_sweep ||
           kind == RunKind::growth_rate_track;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    bool have_kind = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": empty key or value");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        if (key == "kind") {
            static const std::map<std::string, RunKind> kinds = {
                {"decay", RunKind::decay},
                {"gain_dynamics", RunKind::gain_dynamics},
                {"threshold_sweep", RunKind::threshold_sweep},
                {"growth_rate_track", RunKind::growth_rate_track},
                {"regime_report", RunKind::regime_report}};
            const auto it = kinds.find(val);
            if (it == kinds.end())
                throw ConfigError("unknown run kind '" + val + "'");
            cfg.kind = it->second;
            have_kind = true;
        } else if (key == "kappa") {
            cfg.kappa = to_double(key, val);
        } else if (key == "kappa0") {
            cfg.kappa0 = to_double(key, val);
        } else if (key == "omega_a") {
            cfg.omega_a = to_double(key, val);
        } else if (key == "gain") {
            cfg.gain = to_double(key, val);
        } else if (key == "gamma_i") {
            cfg.gamma_i = to_double(key, val);
        } else if (key == "gamma_loss") {
            cfg.gamma_loss = to_double(key, val);
        } else if (key == "placement") {
            if (val == "global")
                cfg.placement = LossPlacement::global;
            else if (val == "crow_only")
                cfg.placement = LossPlacement::crow_only;
            else
                throw ConfigError(
                    "placement must be 'global' or 'crow_only', got '" + val +
                    "'");
        } else if (key == "dt") {
            cfg.sim.dt = to_double(key, val);
        } else if (key == "t_max") {
            cfg.sim.t_max = to_double(key, val);
        } else if (key == "n_sites") {
            cfg.sim.n_sites = to_int(key, val);
        } else if (key == "record_stride") {
            cfg.sim.record_stride = to_int(key, val);
        } else if (key == "grid_min") {
            cfg.grid_min = to_double(key, val);
        } else if (key == "grid_max") {
            cfg.grid_max = to_double(key, val);
        } else if (key == "grid_points") {
            cfg.grid_points = to_int(key, val);
        } else if (key == "out") {
            cfg.out_stem = val;
        } else {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    if (!have_kind) throw ConfigError("missing required key 'kind'");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::string& params_comment,
               const std::vector<std::vector<double>>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::error_code ec;
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot open '" + tmp + "' for writing");
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n# cavlase " << kVersion << " " << params_comment << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << num(row[i]);
            os << "\n";
        }
        os.flush();
        if (!os) throw ConfigError("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ConfigError("cannot move '" + tmp + "' to '" + path + "'");
    }
}

void run_scenario(const RunConfig& cfg, const Overrides& ov,
                  std::ostream& out) {
    switch (cfg.kind) {
        case RunKind::decay: run_decay(cfg, ov, out); return;
        case RunKind::gain_dynamics: run_gain_dynamics(cfg, ov, out); return;
        case RunKind::threshold_sweep:
            run_threshold_sweep(cfg, ov, out);
            return;
        case RunKind::growth_rate_track:
            run_growth_rate_track(cfg, ov, out);
            return;
        case RunKind::regime_report: run_regime_report(cfg, ov, out); return;
    }
}

void run_figure(const std::string& preset, const Overrides& ov,
                std::ostream& out) {
    const FigureContext fc{ov, out};
    if (preset == "fig6") figure6(fc);
    else if (preset == "fig7") figure7(fc);
    else if (preset == "fig8a") figure8a(fc);
    else if (preset == "fig8b") figure8b(fc);
    else if (preset == "fig9a") figure9a(fc);
    else if (preset == "fig9b") figure9b(fc);
    else if (preset == "fig11") figure11(fc);
    else if (preset == "fig12") figure12(fc);
    else
        throw ConfigError(
            "unknown preset '" + preset +
            "'; available: fig6 fig7 fig8a fig8b fig9a fig9b fig11 fig12");
}

bool run_check(std::ostream& out) {
    bool all = true;
    const auto report = [&](int k, const char* name, bool pass,
                            const std::string& detail) {
        all = all && pass;
        out << "check " << k << "/5 " << name << ": "
            << (pass ? "PASS" : "FAIL") << " (" << detail << ")\n";
    };

    {
        // Jump of the self-energy across the band cut vs the structure
        // function, closed form at 40 points, quadrature route at 5.
        const CrowParams rings{1.0, 0.65, 0.0, 0.0, 0.0, 1.0};
        const ReservoirSpectrum spec = crow_spectrum(rings);
        double worst = 0.0;
        for (int j = 0; j < 40; ++j) {
            const double w = -2.0 + 4.0 * (j + 0.5) / 40.0;
            const Complex jump =
                crow_self_energy_cut(rings, w, CutSide::right) -
                crow_self_energy_cut(rings, w, CutSide::left);
            worst = std::max(
                worst, std::abs(jump + 2.0 * kPi * kI * spec.density(w)));
        }
        ReservoirSpectrum bare = spec;
        bare.lamb_shift_exact = nullptr;
        bare.self_energy_exact = nullptr;
        bare.self_energy_cut_exact = nullptr;
        for (int j = 0; j < 5; ++j) {
            const double w = -1.6 + 3.2 * j / 4.0;
            const double dq =
                std::abs(lamb_shift(bare, w) - crow_lamb_shift(rings, w));
            worst = std::max(worst, dq);
        }
        report(1, "band-cut discontinuity", worst <= 1e-8,
               "max err=" + num(worst));
    }
    {
        // Bound-mode search agrees with the closed coupling window.
        bool ok = true;
        for (int i = 0; i < 10 && ok; ++i)
            for (int j = 0; j < 10 && ok; ++j) {
                const double w = -1.1 + 2.2 * i / 9.0;
                const double r = 0.05 + 1.2 * j / 9.0;
                const CrowParams rings{1.0, r, 2.0 * w, 0.0, 0.0, 1.0};
                const bool empty =
                    bound_modes(crow_spectrum(rings), rings.omega_a).empty();
                ok = empty == no_bound_mode_region(rings);
            }
        report(2, "bound-mode region", ok, "10x10 parameter grid");
    }
    {
        // Fixed-point threshold scan vs the closed form.
        const CrowParams rings = fig8_rings();
        const ThresholdResult closed = threshold_crow(rings, 0.0);
        const ThresholdResult scanned =
            threshold_generic(crow_spectrum(rings), rings.omega_a, 0.0);
        const double err = std::max(std::abs(closed.g_th - scanned.g_th),
                                    std::abs(closed.omega_osc -
                                             scanned.omega_osc));
        report(3, "threshold route agreement", err <= 1e-8,
               "err=" + num(err));
    }
    {
        // Lattice evolution vs the spectral integral for one passive set.
        const CrowParams rings{1.0, 0.5, 0.2, 0.0, 0.0, 1.0};
        const SimConfig sim{0, 0.01, 20.0, 50, true};
        const TimeSeries ts = evolve(rings, 0.0, 0.0, sim);
        const ReservoirSpectrum spec = crow_spectrum(rings);
        double worst = 0.0;
        for (std::size_t i = 0; i < ts.t.size(); ++i)
            worst = std::max(
                worst, std::abs(ts.c_a[i] -
                                decay_integral(spec, rings.omega_a, ts.t[i])));
        report(4, "lattice vs spectral", worst <= 2e-3,
               "max deviation=" + num(worst));
    }
    {
        // Critically coupled resonant decay vs the Bessel closed form.
        const CrowParams rings{1.0, 1.0, 0.0, 0.0, 0.0, 1.0};
        const double err =
            std::abs(decay_integral(crow_spectrum(rings), 0.0, 3.75) -
                     bessel_j(0, 7.5));
        report(5, "semicircle decay closed form", err <= 1e-6,
               "err=" + num(err));
    }
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all;
}

}  // namespace cavlase::cli
