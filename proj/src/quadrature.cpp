#include "cavlase/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cavlase {

namespace {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
    double a, b;
    Complex val;
    double err;
};

// One Gauss-Kronrod pass over [a, b]; error is |K15 - G7|.
Panel gk15(const Integrand& f, double a, double b, long* evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex ik{0.0, 0.0};
    Complex ig{0.0, 0.0};
    for (int j = 0; j < 8; ++j) {
        Complex fsum;
        if (j == 7) {
            fsum = f(c);
            *evals += 1;
        } else {
            fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
            *evals += 2;
        }
        ik += kWgk[j] * fsum;
        if (j % 2 == 1) ig += kWg[j / 2] * fsum;
    }
    ik *= h;
    ig *= h;
    return {a, b, ik, std::abs(ik - ig)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           double abs_tol, int max_intervals) {
    QuadratureResult res;
    if (a == b) return res;
    if (!(abs_tol > 0.0)) throw RegimeError("integrate: abs_tol must be > 0");

    // Globally adaptive: always bisect the panel with the largest error
    // until the summed estimate meets the tolerance.
    std::vector<Panel> panels{gk15(f, a, b, &res.evaluations)};
    const double min_len = 1e-14 * std::abs(b - a);
    while (true) {
        double total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        res.error_estimate = total_err;
        if (total_err <= abs_tol) break;
        const Panel& w = panels[worst];
        if (static_cast<int>(panels.size()) >= max_intervals ||
            std::abs(w.b - w.a) <= min_len) {
            for (const Panel& p : panels) res.value += p.val;
            throw QuadratureFailure("integrate: tolerance not reached", res);
        }
        const double mid = 0.5 * (w.a + w.b);
        const Panel left = gk15(f, w.a, mid, &res.evaluations);
        const Panel right = gk15(f, mid, w.b, &res.evaluations);
        panels[worst] = left;
        panels.push_back(right);
    }
    for (const Panel& p : panels) res.value += p.val;
    return res;
}

QuadratureResult principal_value(const Integrand& f, double x0, double a,
                                 double b, double abs_tol, int max_intervals) {
    if (!(a < x0 && x0 < b))
        throw RegimeError("principal_value: x0 must lie strictly inside (a, b)");
    const Complex f0 = f(x0);
    auto reg = [&](double w) -> Complex { return (f(w) - f0) / (x0 - w); };
    QuadratureResult left =
        integrate(reg, a, x0, 0.5 * abs_tol, max_intervals / 2);
    QuadratureResult right =
        integrate(reg, x0, b, 0.5 * abs_tol, max_intervals / 2);
    QuadratureResult res;
    res.value = left.value + right.value + f0 * std::log((x0 - a) / (b - x0));
    res.error_estimate = left.error_estimate + right.error_estimate;
    res.evaluations = left.evaluations + right.evaluations + 1;
    return res;
}

}  // namespace cavlase
