#pragma once

#include <Eigen/Dense>

#include "cavlase/reservoir.hpp"

namespace cavlase {

// Microcavity side-coupled to a coupled-resonator optical waveguide:
// tight-binding chain with hopping κ, local coupling κ0 into sites ±1,
// cavity detuning ω_a from the band center. ω0 and d are bookkeeping.
struct CrowParams {
    double kappa = 1.0;
    double kappa0 = 0.0;
    double omega_a = 0.0;
    double gamma_loss = 0.0;
    double omega0 = 0.0;
    double d = 1.0;
    double ratio() const { return kappa0 / kappa; }
};

void validate(const CrowParams& params);

// ω(k) = ω0 − 2κ cos(kd).
double dispersion(const CrowParams& params, double k);

// Semicircular structure function D(ω) = (2κ0²/πκ)·√(1 − (ω/2κ)²) on
// (−2κ, 2κ), with exact continuation, Lamb-shift, and self-energy
// capabilities installed.
ReservoirSpectrum crow_spectrum(const CrowParams& params);

// Closed-form self-energy. First sheet: i·(κ0/κ)²·[s − R(s)] with
// R(s) = s·√(1+(2κ/s)²) (principal root), cut on (−2iκ, 2iκ), R ~ s at
// +∞. Second sheet: i·(κ0/κ)²·[s + R(s)].
Complex crow_self_energy(const CrowParams& params, Complex s,
                         Sheet sheet = Sheet::first);

// Cut-edge limits of the closed form; side picks Re s → 0⁺ or 0⁻.
Complex crow_self_energy_cut(const CrowParams& params, double omega,
                             CutSide side, Sheet sheet = Sheet::first);

// Piecewise closed-form Lamb shift: (κ0/κ)²·ω inside the band,
// (κ0/κ)²·[ω ∓ √(ω²−4κ²)] above/below it.
double crow_lamb_shift(const CrowParams& params, double omega);

// True iff (κ0/κ)² − 1 ≤ ω_a/(2κ) ≤ 1 − (κ0/κ)², the closed region with
// no bound modes outside the band.
bool no_bound_mode_region(const CrowParams& params);

// (κ0/κ)_crit = √(1 − |ω_a|/(2κ)); requires |ω_a| ≤ 2κ.
double critical_coupling(const CrowParams& params);

// Appendix map from inversion-symmetric lattice amplitudes to continuum
// mode amplitudes: φ(Q) = Σ_{n≥1} a_n sin(nQ), ω = −2κ cos Q,
// c(ω) = −√(2/πκ)·φ·[1−(ω/2κ)²]^{−1/4}. The grid must lie strictly
// inside the band.
Eigen::VectorXcd lattice_to_continuum(const CrowParams& params,
                                      const Eigen::VectorXcd& a_neg,
                                      const Eigen::VectorXcd& a_pos,
                                      const Eigen::VectorXd& omega_grid);

// Sine-series helpers behind the map (Q ∈ (0, π)).
Complex sine_sum(const Eigen::VectorXcd& a_pos, double Q);
Eigen::VectorXcd sine_coeffs(const std::function<Complex(double)>& phi,
                             int n_max, double tol = 1e-12);

}  // namespace cavlase
