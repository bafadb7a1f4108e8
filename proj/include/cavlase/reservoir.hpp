#pragma once

#include <functional>
#include <vector>

#include "cavlase/quadrature.hpp"

namespace cavlase {

enum class Sheet { first, second };

// Side from which an on-cut value is taken: right = Re s → 0⁺, left = 0⁻.
enum class CutSide { right, left };

// A band-limited continuum described by its structure function D(ω) on
// (omega1, omega2), vanishing at the edges with power-law exponents.
// The optional closed-form members are installed by lattice-specific
// builders; generic operations fall back to quadrature when they are absent.
struct ReservoirSpectrum {
    double omega1 = -1.0;
    double omega2 = 1.0;
    std::function<double(double)> density;  // D(ω), coupling_scale² included
    double edge_exp_lower = 0.5;
    double edge_exp_upper = 0.5;
    double coupling_scale = 1.0;

    // Exact capabilities (all optional):
    std::function<Complex(Complex)> density_continuation;  // D(z), principal
    std::function<double(double)> lamb_shift_exact;
    std::function<Complex(Complex, Sheet)> self_energy_exact;
    std::function<Complex(double, CutSide, Sheet)> self_energy_cut_exact;

    double band_width() const { return omega2 - omega1; }
    double band_center() const { return 0.5 * (omega1 + omega2); }
    bool in_band(double w) const { return omega1 < w && w < omega2; }
};

struct CavityParams {
    double omega_a = 0.0;
    double gain = 0.0;           // g
    double intrinsic_loss = 0.0; // γ_i
    double effective_gain() const { return gain - intrinsic_loss; }
};

struct MarkovRates {
    double gamma_R = 0.0;
    double delta_R = 0.0;
    bool inside_band = true;  // false: no resonant decay channel
};

struct CriticalCouplings {
    double lambda_lower = 0.0;  // associated with the lower band edge
    double lambda_upper = 0.0;  // associated with the upper band edge
    double min() const { return lambda_lower < lambda_upper ? lambda_lower
                                                            : lambda_upper; }
    double max() const { return lambda_lower < lambda_upper ? lambda_upper
                                                            : lambda_lower; }
};

// Δ(ω) = P∫ D(ω′)/(ω−ω′) dω′; principal value inside the band, an ordinary
// integral outside.
double lamb_shift(const ReservoirSpectrum& spec, double omega,
                  double tol = 1e-10);

// Σ(s) = ∫ D(ω)/(is−ω) dω on the first sheet; Σ(s) − 2πi·D(is) on the
// second (requires a density continuation; this is the continuation through
// the cut, meaningful for Re s ≤ 0 where resonance poles live). Values
// exactly on the cut segment {Re s = 0, −ω2 < Im s < −ω1} must go through
// self_energy_cut instead.
Complex self_energy(const ReservoirSpectrum& spec, Complex s,
                    Sheet sheet = Sheet::first, double tol = 1e-10);

// Boundary values on the cut: first sheet Σ(−iω ± 0⁺) = Δ(ω) ∓ iπD(ω);
// second sheet supports the left edge, Σ^II(−iω−0⁺) = Δ(ω) − iπD(ω).
Complex self_energy_cut(const ReservoirSpectrum& spec, double omega,
                        CutSide side, Sheet sheet = Sheet::first,
                        double tol = 1e-10);

// G(τ) = ∫ D(ω) exp[−i(ω−ω_a)τ] dω.
Complex memory_kernel(const ReservoirSpectrum& spec, double omega_a,
                      double tau, double tol = 1e-10);

// Diagnostic: first τ at which |G(τ)| drops below |G(0)|/e.
double memory_time(const ReservoirSpectrum& spec, double omega_a);

// Weisskopf-Wigner rates γ_R = πD(ω_a), Δ_R = Δ(ω_a). Outside the band
// γ_R = 0 and inside_band is cleared.
MarkovRates markov_rates(const ReservoirSpectrum& spec, double omega_a);

// Markovian lasing threshold γ_i + πD(ω_a).
double markov_threshold(const ReservoirSpectrum& spec,
                        const CavityParams& cavity);

// All real solutions of Ω − ω_a = Δ(Ω) strictly outside the band, at most
// one per side (Δ is monotone outside and → 0 at ±∞). Sorted ascending;
// empty when no bound modes exist (marginal edge touching included).
std::vector<double> bound_modes(const ReservoirSpectrum& spec, double omega_a);

// Coupling scales at which a bound mode detaches from each band edge:
// λ² = (ω_edge − ω_a) / [Δ(ω_edge)/λ_spec²]. Independent of the λ the
// spectrum was built with.
CriticalCouplings critical_couplings(const ReservoirSpectrum& spec,
                                     double omega_a);

}  // namespace cavlase
