#pragma once

#include <vector>

#include "cavlase/errors.hpp"

namespace cavlase {

struct PowerLawFit {
    double exponent = 0.0;       // p in y = A t^p
    double log_amplitude = 0.0;  // ln A
    double rms_residual = 0.0;   // in log space
};

struct RateFit {
    double rate = 0.0;       // r in y = A exp(r t)
    double log_amplitude = 0.0;
    double rms_residual = 0.0;
};

// Least-squares fit of ln y against ln t. Requires at least 10 samples with
// t > 0 and y > 0.
PowerLawFit fit_power_law(const std::vector<double>& t,
                          const std::vector<double>& y);

// Least-squares fit of ln y against t (exponential growth or decay rate).
// Requires at least 4 samples with y > 0.
RateFit fit_log_linear(const std::vector<double>& t,
                       const std::vector<double>& y);

// Indices of strict three-point local maxima of y, restricted to samples
// with t inside [t_lo, t_hi].
std::vector<std::size_t> envelope_peaks(const std::vector<double>& t,
                                        const std::vector<double>& y,
                                        double t_lo, double t_hi);

}  // namespace cavlase
