#include "cavlase/lasing.hpp"

#include <algorithm>
#include <cmath>

#include "cavlase/bessel.hpp"

namespace cavlase {

namespace {

double fixed_point_residual(const ReservoirSpectrum& spec, double omega_a,
                            double omega) {
    return omega - omega_a - lamb_shift(spec, omega);
}

// Stable complex quadratic a s^2 + b s + c = 0.
std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
    std::vector<Complex> roots;
    if (std::abs(a) < 1e-12) {
        if (std::abs(b) > 0.0) roots.push_back(-c / b);
        return roots;
    }
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex q = std::real(std::conj(b) * disc) >= 0.0
                          ? -0.5 * (b + disc)
                          : -0.5 * (b - disc);
    if (std::abs(q) > 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
    } else {
        roots.push_back(Complex(0.0, 0.0));
    }
    return roots;
}

// Candidate pole locations from squaring the pole equation; squaring adds
// spurious roots, so each candidate is checked against the unsquared
// tracking function before use.
std::vector<Complex> genuine_pole_candidates(const CrowParams& params,
                                             const ReservoirSpectrum& spec,
                                             double g_prime) {
    const double r2 = params.ratio() * params.ratio();
    const double k = params.kappa;
    const Complex mu(-g_prime, params.omega_a);
    const auto roots =
        quadratic_roots(Complex(1.0 - 2.0 * r2, 0.0), 2.0 * (1.0 - r2) * mu,
                        mu * mu - 4.0 * k * k * r2 * r2);
    std::vector<Complex> genuine;
    for (const Complex& s : roots) {
        // A decaying candidate is reached by deforming the inversion contour
        // through the band window, so its frequency must lie inside the
        // window; zeros beyond the edges are virtual states the contour
        // never sweeps.
        if (s.real() <= 0.0 && std::abs(s.imag()) >= 2.0 * k) continue;
        const Complex f =
            pole_tracking_function(spec, params.omega_a, g_prime, s);
        if (std::abs(f) < 1e-9 * std::max(2.0 * k, std::abs(s))) {
            bool dup = false;
            for (const Complex& t : genuine)
                if (std::abs(t - s) < 1e-12 * std::max(1.0, std::abs(s)))
                    dup = true;
            if (!dup) genuine.push_back(s);
        }
    }
    return genuine;
}

}  // namespace

ThresholdResult threshold_generic(const ReservoirSpectrum& spec,
                                  double omega_a, double gamma_i) {
    if (gamma_i < 0.0)
        throw ConfigError("threshold: intrinsic loss must be nonnegative");
    if (!bound_modes(spec, omega_a).empty())
        throw RegimeError(
            "threshold: bound modes present; the oscillation condition "
            "changes character beyond critical coupling");
    const double width = spec.band_width();
    const double inset = 1e-9 * width;
    const double lo = spec.omega1 + inset;
    const double hi = spec.omega2 - inset;
    const int n = 2000;
    auto h = [&](double om) { return fixed_point_residual(spec, omega_a, om); };

    ThresholdResult out;
    double prev_om = lo;
    double prev_h = h(prev_om);
    for (int i = 1; i <= n; ++i) {
        const double om = lo + (hi - lo) * static_cast<double>(i) / n;
        const double cur = h(om);
        double root = 0.0;
        bool found = false;
        if (prev_h == 0.0) {
            root = prev_om;
            found = true;
        } else if ((prev_h < 0.0) != (cur < 0.0)) {
            double a = prev_om, b = om, fa = prev_h;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = h(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            root = 0.5 * (a + b);
            found = true;
        }
        if (found) {
            const bool dup =
                !out.all_fixed_points.empty() &&
                std::abs(out.all_fixed_points.back().omega - root) <
                    1e-9 * width;
            if (!dup)
                out.all_fixed_points.push_back(
                    {root, gamma_i + M_PI * spec.density(root)});
        }
        prev_om = om;
        prev_h = cur;
    }
    if (out.all_fixed_points.empty())
        throw NumericError(
            "threshold: no fixed point in the band; the spectrum violates "
            "the structure the threshold equation assumes");
    const auto best = std::min_element(
        out.all_fixed_points.begin(), out.all_fixed_points.end(),
        [](const FixedPoint& x, const FixedPoint& y) {
            return x.g_candidate < y.g_candidate;
        });
    out.g_th = best->g_candidate;
    out.omega_osc = best->omega;
    out.regime = GainRegime::below_critical;
    return out;
}

ThresholdResult threshold_crow(const CrowParams& params, double gamma_i) {
    validate(params);
    if (gamma_i < 0.0)
        throw ConfigError("threshold: intrinsic loss must be nonnegative");
    const GainRegime regime = classify_regime(params);
    if (regime != GainRegime::below_critical)
        throw RegimeError(
            "threshold: at critical coupling there is no conventional "
            "threshold; see the regime report");
    const double r2 = params.ratio() * params.ratio();
    const double two_k = 2.0 * params.kappa;
    ThresholdResult out;
    out.regime = regime;
    out.omega_osc = params.omega_a / (1.0 - r2);
    const double u = out.omega_osc / two_k;
    out.g_th = gamma_i + two_k * r2 * std::sqrt(1.0 - u * u);
    out.all_fixed_points = {{out.omega_osc, out.g_th}};
    return out;
}

ThresholdCurve threshold_sweep(double omega_a_over_2k,
                               const std::vector<double>& r_squared_grid) {
    const double w = omega_a_over_2k;
    if (std::abs(w) > 1.0)
        throw RegimeError("threshold sweep: cavity frequency outside the band");
    const double crit2 = 1.0 - std::abs(w);
    auto value = [&](double rho) {
        const double rem = 1.0 - rho;
        const double u = rem > 0.0 ? w / rem : (w == 0.0 ? 0.0 : 1.0);
        return rho * std::sqrt(std::max(0.0, 1.0 - u * u));
    };
    ThresholdCurve out;
    out.points.reserve(r_squared_grid.size());
    for (double rho : r_squared_grid) {
        if (rho < 0.0 || rho > crit2 * (1.0 + 1e-12))
            throw ConfigError(
                "threshold sweep: grid point outside [0, critical^2]");
        out.points.push_back({rho, value(rho)});
    }
    double a = 0.0, b = crit2;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value(x1);
        }
    }
    out.peak_r_squared = 0.5 * (a + b);
    out.peak_g_over_2k = value(out.peak_r_squared);
    return out;
}

ComplexPole gain_pole(const CrowParams& params, double gamma_i, double g) {
    validate(params);
    if (g < 0.0) throw ConfigError("growth rate: gain must be nonnegative");
    if (gamma_i < 0.0)
        throw ConfigError("growth rate: intrinsic loss must be nonnegative");
    classify_regime(params);  // rejects beyond-critical coupling
    const auto spec = crow_spectrum(params);
    const double gp = g - gamma_i;
    const auto cands = genuine_pole_candidates(params, spec, gp);
    if (cands.empty())
        throw RegimeError(
            "growth rate: no resonance pole at this gain; the amplitude is "
            "governed by the band cut alone");
    Complex best = cands.front();
    for (const Complex& s : cands)
        if (s.real() > best.real() ||
            (s.real() == best.real() && s.imag() > best.imag()))
            best = s;
    return resonance_pole(spec, params.omega_a, gp, best);
}

double growth_rate(const CrowParams& params, double gamma_i, double g) {
    return gain_pole(params, gamma_i, g).s_p.real();
}

GainRegime classify_regime(const CrowParams& params) {
    validate(params);
    const double r = params.ratio();
    const double rc = critical_coupling(params);
    const double tol = 1e-12 * std::max(1.0, rc);
    if (r < rc - tol) return GainRegime::below_critical;
    if (r <= rc + tol)
        return params.omega_a == 0.0 ? GainRegime::critical_resonant
                                     : GainRegime::critical_detuned;
    throw RegimeError(
        "coupling beyond critical: bound modes dominate the dynamics and no "
        "growth-rate analysis applies");
}

ResonantCriticalTerm resonant_critical_solution(double kappa, double g,
                                                double t) {
    if (kappa <= 0.0)
        throw ConfigError("resonant critical solution: kappa must be positive");
    if (g < 0.0)
        throw ConfigError("resonant critical solution: gain must be "
                          "nonnegative");
    if (t < 0.0)
        throw ConfigError("resonant critical solution: time must be "
                          "nonnegative");
    const double two_k = 2.0 * kappa;
    ResonantCriticalTerm out;
    if (g == 0.0) {
        out.label = ResonantCase::decay_J0;
        out.value = bessel_j(0, two_k * t);
    } else if (g < two_k * (1.0 - 1e-12)) {
        out.label = ResonantCase::oscillation;
        const double om = std::sqrt(two_k * two_k - g * g);
        out.value = (2.0 * g / om) * std::sin(om * t);
    } else if (g <= two_k * (1.0 + 1e-12)) {
        out.label = ResonantCase::secular;
        out.value = 2.0 * two_k * t;
    } else {
        out.label = ResonantCase::exponential;
        const double rate = std::sqrt(g * g - two_k * two_k);
        out.value = (g / rate) * std::exp(rate * t);
    }
    return out;
}

LossyEnvelope lossy_envelope(double kappa, double g, double gamma_loss,
                             double t) {
    if (kappa <= 0.0)
        throw ConfigError("lossy envelope: kappa must be positive");
    if (t < 0.0)
        throw ConfigError("lossy envelope: time must be nonnegative");
    if (std::abs(g - 2.0 * kappa) > 1e-12 * 2.0 * kappa)
        throw RegimeError(
            "lossy envelope: the secular transient needs g = 2 kappa");
    if (gamma_loss <= 0.0)
        throw RegimeError("lossy envelope: no maximum without loss");
    LossyEnvelope out;
    out.value = 4.0 * kappa * t * std::exp(-gamma_loss * t);
    out.max_value = 4.0 * kappa / (std::exp(1.0) * gamma_loss);
    out.t_star = 1.0 / gamma_loss;
    out.rough_scale = 2.0 * kappa / gamma_loss;
    return out;
}

}  // namespace cavlase
