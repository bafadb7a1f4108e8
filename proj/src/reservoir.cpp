#include "cavlase/reservoir.hpp"

#include <algorithm>
#include <cmath>

namespace cavlase {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_density(const ReservoirSpectrum& spec) {
    if (!spec.density) throw RegimeError("spectrum has no density function");
    if (!(spec.omega1 < spec.omega2))
        throw RegimeError("spectrum band is empty");
}

// ∫ D(ω) f(ω) dω written in the band angle ω(Q) = c − h·cos Q, Q ∈ (0, π).
// The sin Q Jacobian tames the edge behavior of square-root-edged spectra,
// so integrands with a denominator vanishing at an edge stay benign.
QuadratureResult band_integral(const ReservoirSpectrum& spec,
                               const std::function<Complex(double)>& f,
                               double tol) {
    const double c = spec.band_center();
    const double h = 0.5 * spec.band_width();
    auto g = [&](double q) -> Complex {
        const double w = c - h * std::cos(q);
        return spec.density(w) * f(w) * h * std::sin(q);
    };
    return integrate(g, 0.0, kPi, tol);
}

bool on_cut(const ReservoirSpectrum& spec, Complex s) {
    return s.real() == 0.0 && -spec.omega2 < s.imag() &&
           s.imag() < -spec.omega1;
}

}  // namespace

double lamb_shift(const ReservoirSpectrum& spec, double omega, double tol) {
    if (spec.lamb_shift_exact) return spec.lamb_shift_exact(omega);
    require_density(spec);
    if (spec.in_band(omega)) {
        auto d = [&](double w) { return Complex(spec.density(w)); };
        return principal_value(d, omega, spec.omega1, spec.omega2, tol)
            .value.real();
    }
    // Outside or exactly at an edge the integral is ordinary; the band-angle
    // Jacobian removes the edge singularity for square-root-edged spectra.
    auto f = [&](double w) { return Complex(1.0 / (omega - w)); };
    return band_integral(spec, f, tol).value.real();
}

Complex self_energy(const ReservoirSpectrum& spec, Complex s, Sheet sheet,
                    double tol) {
    if (spec.self_energy_exact) {
        if (sheet == Sheet::first && on_cut(spec, s))
            throw RegimeError(
                "self_energy: s lies on the cut; use self_energy_cut with a "
                "side indicator");
        return spec.self_energy_exact(s, sheet);
    }
    require_density(spec);
    if (on_cut(spec, s))
        throw RegimeError(
            "self_energy: s lies on the cut; use self_energy_cut with a side "
            "indicator");
    const Complex is = Complex(0.0, 1.0) * s;
    auto f = [&](double w) -> Complex { return 1.0 / (is - w); };
    const Complex first = band_integral(spec, f, tol).value;
    if (sheet == Sheet::first) return first;
    if (!spec.density_continuation)
        throw RegimeError(
            "self_energy: second sheet requires an analytic continuation of "
            "the density, which this spectrum does not provide");
    return first - 2.0 * kPi * Complex(0.0, 1.0) * spec.density_continuation(is);
}

Complex self_energy_cut(const ReservoirSpectrum& spec, double omega,
                        CutSide side, Sheet sheet, double tol) {
    if (spec.self_energy_cut_exact)
        return spec.self_energy_cut_exact(omega, side, sheet);
    require_density(spec);
    if (!spec.in_band(omega))
        throw RegimeError("self_energy_cut: omega must lie in the open band");
    const double delta = lamb_shift(spec, omega, tol);
    const double pid = kPi * spec.density(omega);
    if (sheet == Sheet::first)
        return {delta, side == CutSide::right ? -pid : pid};
    if (side != CutSide::left)
        throw RegimeError(
            "self_energy_cut: the second sheet is the continuation through "
            "the cut; only its left edge is a boundary value");
    return {delta, -pid};
}

Complex memory_kernel(const ReservoirSpectrum& spec, double omega_a,
                      double tau, double tol) {
    if (tau < 0.0) throw RegimeError("memory_kernel: tau must be >= 0");
    require_density(spec);
    auto f = [&](double w) -> Complex {
        return std::exp(Complex(0.0, -(w - omega_a) * tau));
    };
    return band_integral(spec, f, tol).value;
}

double memory_time(const ReservoirSpectrum& spec, double omega_a) {
    const double g0 = std::abs(memory_kernel(spec, omega_a, 0.0));
    if (g0 == 0.0) throw RegimeError("memory_time: spectrum carries no weight");
    const double target = g0 / std::exp(1.0);
    const double step = 0.2 / spec.band_width();
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 1; i <= 4000; ++i) {
        hi = i * step;
        if (std::abs(memory_kernel(spec, omega_a, hi)) < target) break;
        lo = hi;
        if (i == 4000)
            throw NumericError("memory_time: kernel never fell below 1/e");
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(memory_kernel(spec, omega_a, mid)) < target ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

MarkovRates markov_rates(const ReservoirSpectrum& spec, double omega_a) {
    require_density(spec);
    MarkovRates r;
    r.inside_band = spec.in_band(omega_a);
    r.gamma_R = r.inside_band ? kPi * spec.density(omega_a) : 0.0;
    r.delta_R = lamb_shift(spec, omega_a);
    return r;
}

double markov_threshold(const ReservoirSpectrum& spec,
                        const CavityParams& cavity) {
    return cavity.intrinsic_loss + markov_rates(spec, cavity.omega_a).gamma_R;
}

std::vector<double> bound_modes(const ReservoirSpectrum& spec,
                                double omega_a) {
    const double W = spec.band_width();
    const double inset = 1e-9 * W;
    auto h = [&](double w) { return w - omega_a - lamb_shift(spec, w); };
    std::vector<double> roots;

    // h is strictly increasing outside the band (Δ decreasing there), so
    // each side holds at most one root; the sign right at the edge decides
    // existence, with marginal touching counting as no root.
    auto bisect = [&](double a, double b) {
        double fa = h(a);
        for (int i = 0; i < 200 && b - a > 1e-13 * W; ++i) {
            const double m = 0.5 * (a + b);
            const double fm = h(m);
            if (std::abs(fm) < 1e-10 * W) return m;
            if ((fa < 0) == (fm < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    // Below the band: root iff h(ω1⁻) > 0.
    if (h(spec.omega1 - inset) > 0.0) {
        double lo = spec.omega1 - W;
        double span = W;
        int k = 0;
        while (h(lo) > 0.0) {
            span *= 2.0;
            lo = spec.omega1 - span;
            if (++k > 60)
                throw NumericError("bound_modes: lower bracket never closed");
        }
        roots.push_back(bisect(lo, spec.omega1 - inset));
    }
    // Above the band: root iff h(ω2⁺) < 0.
    if (h(spec.omega2 + inset) < 0.0) {
        double hi = spec.omega2 + W;
        double span = W;
        int k = 0;
        while (h(hi) < 0.0) {
            span *= 2.0;
            hi = spec.omega2 + span;
            if (++k > 60)
                throw NumericError("bound_modes: upper bracket never closed");
        }
        roots.push_back(bisect(spec.omega2 + inset, hi));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

CriticalCouplings critical_couplings(const ReservoirSpectrum& spec,
                                     double omega_a) {
    if (!spec.in_band(omega_a))
        throw RegimeError("critical_couplings: omega_a must lie in the band");
    const double l2 = spec.coupling_scale * spec.coupling_scale;
    if (!(l2 > 0.0))
        throw RegimeError("critical_couplings: spectrum has zero coupling");
    CriticalCouplings out;
    for (int side = 0; side < 2; ++side) {
        const double edge = side == 0 ? spec.omega1 : spec.omega2;
        const double shape_shift = lamb_shift(spec, edge) / l2;
        const double lam2 = (edge - omega_a) / shape_shift;
        if (!(lam2 > 0.0))
            throw NumericError(
                "critical_couplings: nonpositive critical coupling; spectrum "
                "violates the stated edge assumptions");
        (side == 0 ? out.lambda_lower : out.lambda_upper) = std::sqrt(lam2);
    }
    return out;
}

}  // namespace cavlase
