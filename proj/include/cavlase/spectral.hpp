#pragma once

#include <complex>
#include <vector>

#include "cavlase/reservoir.hpp"

namespace cavlase {

// Resonance pole of the cavity amplitude transform, located on the sheet that
// is reached by analytic continuation through the band cut.
struct ComplexPole {
    Complex s_p{0.0, 0.0};  // pole location in the s plane
    Sheet sheet = Sheet::first;
    double gamma_p = 0.0;   // decay rate, -Re s_p
    double delta_p = 0.0;   // frequency shift, -Im s_p - omega_a
    Complex residue{0.0, 0.0};
};

// Self-energy on the sheet a decaying (Re s < 0) or growing (Re s > 0) pole
// lives on, continued so the tracking function stays analytic across the
// band segment of the imaginary axis. On the axis inside the band this is
// the shared limit of both half planes.
Complex tracked_self_energy(const ReservoirSpectrum& spec, Complex s,
                            double abs_tol = 1e-10);

// Tracking function F(s) = i s - omega_a - i g' - Sigma_tracked(s). Poles of
// the amplitude transform are its zeros.
Complex pole_tracking_function(const ReservoirSpectrum& spec, double omega_a,
                               double g_prime, Complex s,
                               double abs_tol = 1e-10);

// Cavity amplitude c_a(t) for a passive cavity (no gain, no intrinsic loss)
// with no bound modes, by direct quadrature of the spectral representation.
// Normalized so that the value at t = 0 is 1.
Complex decay_integral(const ReservoirSpectrum& spec, double omega_a, double t,
                       double abs_tol = 1e-8);

// Newton refinement of a resonance pole from a seed, with residue.
ComplexPole resonance_pole(const ReservoirSpectrum& spec, double omega_a,
                           double g_prime, Complex seed);

// Markovian estimate of the pole location, used to seed the refinement at
// weak coupling: s = g' - gamma_R - i (omega_a + delta_R).
Complex markov_seed(const ReservoirSpectrum& spec, double omega_a,
                    double g_prime);

// Continue a pole along a grid of effective gain values. Steps must not
// exceed 2.5 percent of the band width; each solution seeds the next.
std::vector<ComplexPole> pole_track(const ReservoirSpectrum& spec,
                                    double omega_a,
                                    const std::vector<double>& g_prime_grid,
                                    Complex seed);

// Split of the passive decay amplitude into the resonance-pole contribution
// and the band-cut remainder (computed by subtraction from the full
// integral).
struct DecaySplit {
    Complex pole_term{0.0, 0.0};
    Complex cut_term{0.0, 0.0};
};

DecaySplit pole_plus_cut(const ReservoirSpectrum& spec, double omega_a,
                         double t);

// Long-time tail classification from the power-law exponent of the envelope:
// band-interior poles give exponent near -3/2, band-edge (critically coupled)
// decay gives near -1/2.
enum class TailRegime { below_critical, critical, unclassified };

struct TailFit {
    double exponent = 0.0;
    TailRegime regime = TailRegime::unclassified;
};

TailFit classify_tail(const std::vector<double>& t,
                      const std::vector<double>& abs_c, double t_lo,
                      double t_hi);

}  // namespace cavlase
