#include "cavlase/crow.hpp"

#include <cmath>

namespace cavlase {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex crow_R(const CrowParams& p, Complex s) {
    const Complex q = 2.0 * p.kappa / s;
    return s * std::sqrt(1.0 + q * q);
}

bool on_crow_cut(const CrowParams& p, Complex s) {
    return s.real() == 0.0 && std::abs(s.imag()) < 2.0 * p.kappa;
}

}  // namespace

void validate(const CrowParams& p) {
    if (!(p.kappa > 0.0)) throw RegimeError("crow: kappa must be > 0");
    if (!(p.kappa0 >= 0.0)) throw RegimeError("crow: kappa0 must be >= 0");
    if (!(p.gamma_loss >= 0.0))
        throw RegimeError("crow: gamma_loss must be >= 0");
    if (!(p.d > 0.0)) throw RegimeError("crow: d must be > 0");
}

double dispersion(const CrowParams& p, double k) {
    validate(p);
    return p.omega0 - 2.0 * p.kappa * std::cos(k * p.d);
}

double crow_lamb_shift(const CrowParams& p, double omega) {
    validate(p);
    const double r2 = p.ratio() * p.ratio();
    const double two_k = 2.0 * p.kappa;
    if (std::abs(omega) <= two_k) return r2 * omega;
    const double root = std::sqrt(omega * omega - two_k * two_k);
    return omega > 0.0 ? r2 * (omega - root) : r2 * (omega + root);
}

Complex crow_self_energy(const CrowParams& p, Complex s, Sheet sheet) {
    validate(p);
    if (on_crow_cut(p, s))
        throw RegimeError(
            "crow_self_energy: s lies on the cut; use crow_self_energy_cut "
            "with a side indicator");
    const double r2 = p.ratio() * p.ratio();
    const Complex R = crow_R(p, s);
    return Complex(0.0, r2) * (sheet == Sheet::first ? s - R : s + R);
}

Complex crow_self_energy_cut(const CrowParams& p, double omega, CutSide side,
                             Sheet sheet) {
    validate(p);
    const double two_k = 2.0 * p.kappa;
    if (!(std::abs(omega) < two_k))
        throw RegimeError("crow_self_energy_cut: omega must lie in the band");
    const double r2 = p.ratio() * p.ratio();
    const double root = std::sqrt(two_k * two_k - omega * omega);
    const double R = side == CutSide::right ? root : -root;
    const Complex s(0.0, -omega);
    return Complex(0.0, r2) * (sheet == Sheet::first ? s - R : s + R);
}

ReservoirSpectrum crow_spectrum(const CrowParams& p) {
    validate(p);
    const double two_k = 2.0 * p.kappa;
    const double pref = 2.0 * p.kappa0 * p.kappa0 / (kPi * p.kappa);
    ReservoirSpectrum spec;
    spec.omega1 = -two_k;
    spec.omega2 = two_k;
    spec.edge_exp_lower = 0.5;
    spec.edge_exp_upper = 0.5;
    spec.coupling_scale = p.ratio();
    spec.density = [pref, two_k](double w) {
        const double u = w / two_k;
        const double arg = 1.0 - u * u;
        return arg > 0.0 ? pref * std::sqrt(arg) : 0.0;
    };
    spec.density_continuation = [pref, two_k](Complex z) {
        const Complex u = z / two_k;
        return pref * std::sqrt(1.0 - u * u);
    };
    spec.lamb_shift_exact = [p](double w) { return crow_lamb_shift(p, w); };
    spec.self_energy_exact = [p](Complex s, Sheet sheet) {
        return crow_self_energy(p, s, sheet);
    };
    spec.self_energy_cut_exact = [p](double w, CutSide side, Sheet sheet) {
        return crow_self_energy_cut(p, w, side, sheet);
    };
    return spec;
}

bool no_bound_mode_region(const CrowParams& p) {
    validate(p);
    const double r2 = p.ratio() * p.ratio();
    const double x = p.omega_a / (2.0 * p.kappa);
    return r2 - 1.0 <= x && x <= 1.0 - r2;
}

double critical_coupling(const CrowParams& p) {
    validate(p);
    const double x = std::abs(p.omega_a) / (2.0 * p.kappa);
    if (x > 1.0)
        throw RegimeError(
            "critical_coupling: cavity resonance lies outside the band");
    return std::sqrt(1.0 - x);
}

Complex sine_sum(const Eigen::VectorXcd& a_pos, double Q) {
    Complex phi{0.0, 0.0};
    for (Eigen::Index n = 0; n < a_pos.size(); ++n)
        phi += a_pos(n) * std::sin((n + 1) * Q);
    return phi;
}

Eigen::VectorXcd sine_coeffs(const std::function<Complex(double)>& phi,
                             int n_max, double tol) {
    if (n_max < 1) throw RegimeError("sine_coeffs: n_max must be >= 1");
    Eigen::VectorXcd a(n_max);
    for (int n = 1; n <= n_max; ++n) {
        auto f = [&](double q) { return phi(q) * std::sin(n * q); };
        a(n - 1) = (2.0 / kPi) * integrate(f, 0.0, kPi, tol).value;
    }
    return a;
}

Eigen::VectorXcd lattice_to_continuum(const CrowParams& p,
                                      const Eigen::VectorXcd& a_neg,
                                      const Eigen::VectorXcd& a_pos,
                                      const Eigen::VectorXd& omega_grid) {
    validate(p);
    if (a_neg.size() != a_pos.size())
        throw RegimeError("lattice_to_continuum: side lengths differ");
    const double scale = std::max(a_pos.norm(), 1e-300);
    if ((a_neg - a_pos).norm() > 1e-10 * scale)
        throw RegimeError(
            "lattice_to_continuum: input must be inversion-symmetric");
    const double two_k = 2.0 * p.kappa;
    Eigen::VectorXcd c(omega_grid.size());
    for (Eigen::Index i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid(i);
        if (!(std::abs(w) < two_k))
            throw RegimeError(
                "lattice_to_continuum: grid must lie strictly inside the band");
        const double Q = std::acos(-w / two_k);
        const double edge = 1.0 - (w / two_k) * (w / two_k);
        c(i) = -std::sqrt(2.0 / (kPi * p.kappa)) * sine_sum(a_pos, Q) *
               std::pow(edge, -0.25);
    }
    return c;
}

}  // namespace cavlase
