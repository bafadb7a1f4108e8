#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cavlase/crow.hpp"

namespace cavlase {

// Where the propagation loss acts: rings only, or rings and cavity alike.
enum class LossPlacement { crow_only, global };

struct SimConfig {
    int n_sites = 0;        // per arm; 0 selects default_sites()
    double dt = 0.01;
    double t_max = 50.0;
    int record_stride = 1;  // keep every k-th step
    bool guard_enabled = true;
};

struct TimeSeries {
    std::vector<double> t;
    std::vector<Complex> c_a;
    std::vector<Complex> a_first;     // amplitude of the ring next to the cavity
    std::vector<double> total_power;  // |c_a|^2 + sum |a_n|^2
    std::vector<double> crow_power;   // sum |a_n|^2
    std::vector<double> edge_power;   // |a_N|^2 + |a_{-N}|^2
    Eigen::VectorXcd final_state;     // (c_a, a_1..a_N, a_{-1}..a_{-N}) at the end
    double max_asymmetry = 0.0;       // worst |a_n - a_{-n}| over record points
    bool overflow_truncated = false;
    bool boundary_contact = false;    // edge power ever above 1e-8 of the total
    double first_contact_time = -1.0;
    // run parameters echoed for post-processing
    double gain = 0.0;
    double intrinsic_loss = 0.0;
    double gamma_loss = 0.0;
    LossPlacement placement = LossPlacement::global;
    int n_sites = 0;
    double dt = 0.0;
};

// Sites per arm that keep the ballistic front away from the hard wall.
int default_sites(double kappa, double t_max);

// Integrates the cavity and chain amplitudes with fixed-step RK4, starting
// from c_a(0)=1 and an empty chain, in the frame rotating at the ring
// resonance. Rejects configurations whose front would reach the wall unless
// the guard is disabled; truncates the run if amplitudes overflow.
TimeSeries evolve(const CrowParams& rings, double gain, double intrinsic_loss,
                  const SimConfig& cfg,
                  LossPlacement placement = LossPlacement::global);

// Largest deviation of dP/dt from the gain and loss bookkeeping across the
// recorded points, relative to max(1, peak power).
double power_balance_residual(const TimeSeries& series);

}  // namespace cavlase
