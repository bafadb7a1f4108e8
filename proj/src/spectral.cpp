#include "cavlase/spectral.hpp"

#include <cmath>

#include "cavlase/fitting.hpp"
#include "cavlase/quadrature.hpp"
#include "cavlase/rootfind.hpp"

namespace cavlase {

namespace {

constexpr Complex kI{0.0, 1.0};

double pole_f_tol(const ReservoirSpectrum& spec) {
    return 1e-11 * 0.5 * spec.band_width();
}

}  // namespace

Complex tracked_self_energy(const ReservoirSpectrum& spec, Complex s,
                            double abs_tol) {
    if (s.real() < 0.0) return self_energy(spec, s, Sheet::second, abs_tol);
    if (s.real() > 0.0) return self_energy(spec, s, Sheet::first, abs_tol);
    const double omega = -s.imag();
    if (omega > spec.omega1 && omega < spec.omega2) {
        // Both half-plane limits coincide here, so the continuation stays
        // analytic across the band segment of the axis.
        return self_energy_cut(spec, omega, CutSide::right, Sheet::first,
                               abs_tol);
    }
    return self_energy(spec, s, Sheet::first, abs_tol);
}

Complex pole_tracking_function(const ReservoirSpectrum& spec, double omega_a,
                               double g_prime, Complex s, double abs_tol) {
    return kI * s - omega_a - kI * g_prime -
           tracked_self_energy(spec, s, abs_tol);
}

Complex decay_integral(const ReservoirSpectrum& spec, double omega_a, double t,
                       double abs_tol) {
    if (t < 0.0) throw ConfigError("decay_integral: time must be nonnegative");
    if (!bound_modes(spec, omega_a).empty())
        throw RegimeError(
            "decay_integral: bound modes present; the band integral alone "
            "does not reproduce the amplitude");
    const double c = spec.band_center();
    const double h = 0.5 * spec.band_width();
    // Substitution w = c - h cos(Q) flattens the band-edge behavior of the
    // spectrum, so square-root edges need no special panels.
    auto f = [&](double q) {
        const double w = c - h * std::cos(q);
        const double dens = spec.density(w);
        const double det = w - omega_a - lamb_shift(spec, w);
        const double pi_d = M_PI * dens;
        const double denom = det * det + pi_d * pi_d;
        const Complex phase = std::exp(Complex(0.0, -w * t));
        return phase * (dens / denom) * h * std::sin(q);
    };
    return integrate(f, 0.0, M_PI, abs_tol).value;
}

ComplexPole resonance_pole(const ReservoirSpectrum& spec, double omega_a,
                           double g_prime, Complex seed) {
    auto F = [&](Complex s) {
        return pole_tracking_function(spec, omega_a, g_prime, s);
    };
    const RootResult r = find_root_complex(F, seed, pole_f_tol(spec));
    ComplexPole p;
    p.s_p = r.root;
    p.sheet = r.root.real() < 0.0 ? Sheet::second : Sheet::first;
    p.gamma_p = -r.root.real();
    p.delta_p = -r.root.imag() - omega_a;
    const double h = 1e-6 * std::max(1.0, std::abs(r.root));
    const Complex dF = (F(r.root + h) - F(r.root - h)) / (2.0 * h);
    p.residue = kI / dF;
    return p;
}

Complex markov_seed(const ReservoirSpectrum& spec, double omega_a,
                    double g_prime) {
    const MarkovRates mr = markov_rates(spec, omega_a);
    return Complex(g_prime - mr.gamma_R, -(omega_a + mr.delta_R));
}

std::vector<ComplexPole> pole_track(const ReservoirSpectrum& spec,
                                    double omega_a,
                                    const std::vector<double>& g_prime_grid,
                                    Complex seed) {
    const double max_step = 0.025 * spec.band_width();
    for (std::size_t i = 1; i < g_prime_grid.size(); ++i) {
        if (std::abs(g_prime_grid[i] - g_prime_grid[i - 1]) >
            max_step * (1.0 + 1e-12))
            throw ConfigError(
                "pole_track: gain steps exceed 2.5 percent of the band "
                "width; the continuation may hop branches");
    }
    std::vector<ComplexPole> out;
    out.reserve(g_prime_grid.size());
    Complex s = seed;
    for (double gp : g_prime_grid) {
        const ComplexPole p = resonance_pole(spec, omega_a, gp, s);
        out.push_back(p);
        s = p.s_p;
    }
    return out;
}

DecaySplit pole_plus_cut(const ReservoirSpectrum& spec, double omega_a,
                         double t) {
    const ComplexPole p =
        resonance_pole(spec, omega_a, 0.0, markov_seed(spec, omega_a, 0.0));
    const Complex full = decay_integral(spec, omega_a, t);
    DecaySplit split;
    split.pole_term = p.residue * std::exp(p.s_p * t);
    split.cut_term = full - split.pole_term;
    return split;
}

TailFit classify_tail(const std::vector<double>& t,
                      const std::vector<double>& abs_c, double t_lo,
                      double t_hi) {
    if (t.size() != abs_c.size())
        throw ConfigError("classify_tail: time and amplitude sizes differ");
    if (!(t_hi > t_lo))
        throw ConfigError("classify_tail: window must have positive length");
    const std::vector<std::size_t> peaks = envelope_peaks(t, abs_c, t_lo, t_hi);
    std::vector<double> ft, fy;
    if (peaks.size() >= 10) {
        for (std::size_t i : peaks) {
            ft.push_back(t[i]);
            fy.push_back(abs_c[i]);
        }
    } else {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= t_lo && t[i] <= t_hi && abs_c[i] > 0.0) {
                ft.push_back(t[i]);
                fy.push_back(abs_c[i]);
            }
        }
    }
    const PowerLawFit fit = fit_power_law(ft, fy);
    TailFit out;
    out.exponent = fit.exponent;
    if (std::abs(fit.exponent + 0.5) <= 0.25)
        out.regime = TailRegime::critical;
    else if (std::abs(fit.exponent + 1.5) <= 0.25)
        out.regime = TailRegime::below_critical;
    else
        out.regime = TailRegime::unclassified;
    return out;
}

}  // namespace cavlase
