#pragma once

#include <vector>

#include "cavlase/crow.hpp"
#include "cavlase/spectral.hpp"

namespace cavlase {

enum class GainRegime { below_critical, critical_detuned, critical_resonant };

// One root of the oscillation-frequency fixed point Omega - omega_a =
// Delta(Omega), with the gain that would start oscillation there.
struct FixedPoint {
    double omega = 0.0;
    double g_candidate = 0.0;
};

struct ThresholdResult {
    double g_th = 0.0;
    double omega_osc = 0.0;  // omega_a plus the pole shift at threshold
    GainRegime regime = GainRegime::below_critical;
    std::vector<FixedPoint> all_fixed_points;
};

struct SweepPoint {
    double r_squared = 0.0;
    double g_over_2k = 0.0;
};

struct ThresholdCurve {
    std::vector<SweepPoint> points;
    double peak_r_squared = 0.0;
    double peak_g_over_2k = 0.0;
};

enum class ResonantCase { decay_J0, oscillation, secular, exponential };

// Dominant analytic term of the critically coupled resonant cavity. For the
// oscillation and secular cases a decaying remainder is dropped, so the value
// is accurate only after the transient.
struct ResonantCriticalTerm {
    Complex value{0.0, 0.0};
    ResonantCase label = ResonantCase::decay_J0;
};

struct LossyEnvelope {
    double value = 0.0;        // 4 kappa t exp(-gamma_loss t)
    double max_value = 0.0;    // 4 kappa / (e gamma_loss)
    double t_star = 0.0;       // 1 / gamma_loss
    double rough_scale = 0.0;  // 2 kappa / gamma_loss, order-of-magnitude
};

// Oscillation threshold from the fixed points of the pole equation on a
// general band spectrum: dense sign scan plus bisection, minimum gain
// candidate wins.
ThresholdResult threshold_generic(const ReservoirSpectrum& spec,
                                  double omega_a, double gamma_i);

// Closed-form threshold for the ring-lattice reservoir, strictly below
// critical coupling.
ThresholdResult threshold_crow(const CrowParams& params, double gamma_i);

// Normalized threshold gain versus (kappa0/kappa)^2 at fixed omega_a/(2
// kappa), with the maximum located by golden-section search.
ThresholdCurve threshold_sweep(double omega_a_over_2k,
                               const std::vector<double>& r_squared_grid);

// Growth rate sigma = Re s_p of the resonance pole at modal gain g.
double growth_rate(const CrowParams& params, double gamma_i, double g);

// Full pole behind growth_rate, for reporting.
ComplexPole gain_pole(const CrowParams& params, double gamma_i, double g);

GainRegime classify_regime(const CrowParams& params);

ResonantCriticalTerm resonant_critical_solution(double kappa, double g,
                                                double t);

LossyEnvelope lossy_envelope(double kappa, double g, double gamma_loss,
                             double t);

}  // namespace cavlase
