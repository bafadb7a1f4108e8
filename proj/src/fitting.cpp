#include "cavlase/fitting.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace cavlase {

namespace {

// Straight-line least squares y = c0 + c1 x; returns {c0, c1, rms}.
std::array<double, 3> line_fit(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y) {
    Eigen::MatrixXd A(x.size(), 2);
    A.col(0).setOnes();
    A.col(1) = x;
    Eigen::Vector2d c = (A.transpose() * A).ldlt().solve(A.transpose() * y);
    const double rms = std::sqrt((A * c - y).squaredNorm() / x.size());
    return {c(0), c(1), rms};
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& t,
                          const std::vector<double>& y) {
    if (t.size() != y.size())
        throw RegimeError("fit_power_law: size mismatch");
    if (t.size() < 10)
        throw RegimeError("fit_power_law: need at least 10 samples");
    Eigen::VectorXd lx(t.size()), ly(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0 && y[i] > 0.0))
            throw RegimeError("fit_power_law: samples must be positive");
        lx(i) = std::log(t[i]);
        ly(i) = std::log(y[i]);
    }
    auto [c0, c1, rms] = line_fit(lx, ly);
    return {c1, c0, rms};
}

RateFit fit_log_linear(const std::vector<double>& t,
                       const std::vector<double>& y) {
    if (t.size() != y.size())
        throw RegimeError("fit_log_linear: size mismatch");
    if (t.size() < 4)
        throw RegimeError("fit_log_linear: need at least 4 samples");
    Eigen::VectorXd lx(t.size()), ly(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > 0.0))
            throw RegimeError("fit_log_linear: samples must be positive");
        lx(i) = t[i];
        ly(i) = std::log(y[i]);
    }
    auto [c0, c1, rms] = line_fit(lx, ly);
    return {c1, c0, rms};
}

std::vector<std::size_t> envelope_peaks(const std::vector<double>& t,
                                        const std::vector<double>& y,
                                        double t_lo, double t_hi) {
    if (t.size() != y.size())
        throw RegimeError("envelope_peaks: size mismatch");
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (y[i] > y[i - 1] && y[i] > y[i + 1]) idx.push_back(i);
    }
    return idx;
}

}  // namespace cavlase
