#include "nemfilm/catenary.hpp"

#include <algorithm>
#include <stdexcept>

#include "nemfilm/rootfind.hpp"

namespace nemfilm {

double phi(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("phi: requires x > 0");
    return std::cosh(x) / x;
}

double mu(double xi) { return 1.0 / (xi * std::cosh(1.0 / xi)); }

double catenary_energy_ratio(double s) {
    double sech = 1.0 / std::cosh(1.0 / s);
    return sech * sech / s + std::tanh(1.0 / s);
}

double slope_gain(double x) { return x * x / std::sqrt(1.0 + x * x); }

double slope_gain_deriv(double x) {
    double q = 1.0 + x * x;
    return x * (x * x + 2.0) / (q * std::sqrt(q));
}

ModelConstants compute_constants(double tolerance) {
    if (!(tolerance > 0.0 && tolerance <= 1e-6))
        throw std::invalid_argument("compute_constants: tolerance must be in (0, 1e-6]");
    ModelConstants k;
    k.xi_star = bisect([](double s) { return catenary_energy_ratio(s) - 1.0; },
                       0.1, 10.0, tolerance);
    k.omega = mu(k.xi_star);
    k.phi_argmin = bisect([](double x) { return x * std::tanh(x) - 1.0; },
                          0.5, 2.0, tolerance);
    k.phi_min = phi(k.phi_argmin);
    k.z0 = std::sqrt(0.5 * (std::sqrt(5.0) - 1.0));
    k.beta = std::acosh(std::sqrt(0.5 * (std::sqrt(17.0) - 1.0)));
    return k;
}

const ModelConstants& model_constants() {
    static const ModelConstants cached = compute_constants(1e-12);
    return cached;
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::UniqueCatenoid: return "UniqueCatenoid";
        case Regime::Crossover: return "Crossover";
        case Regime::LocalCatenoid: return "LocalCatenoid";
        case Regime::GoldschmidtOnly: return "GoldschmidtOnly";
    }
    return "?";
}

CatenarySolution solve_pi(double h, double r, double tolerance) {
    if (!(h > 0.0) || !(r > 0.0))
        throw std::invalid_argument("solve_pi: requires h > 0 and r > 0");
    const ModelConstants& k = model_constants();

    CatenarySolution sol;
    sol.h = h;
    sol.r = r;
    sol.ratio = h / r;

    const double inv_m = 1.0 / k.phi_min;
    if (std::abs(sol.ratio - k.omega) <= 1e-9)
        sol.regime = Regime::Crossover;
    else if (sol.ratio < k.omega)
        sol.regime = Regime::UniqueCatenoid;
    else if (sol.ratio <= inv_m)
        sol.regime = Regime::LocalCatenoid;
    else
        sol.regime = Regime::GoldschmidtOnly;

    if (sol.regime == Regime::GoldschmidtOnly) return sol;

    const double xi_peak = 1.0 / k.phi_argmin;  // argmax of mu
    if (std::abs(sol.ratio - inv_m) <= 1e-12) {
        // tangency: mu peaks exactly at the requested ratio
        sol.pi0 = sol.pi1 = h * xi_peak;
        return sol;
    }

    auto g = [&](double xi) { return mu(xi) - sol.ratio; };
    // increasing branch: expand left until mu < ratio
    double lo = 0.5 * xi_peak;
    while (mu(lo) > sol.ratio) lo *= 0.5;
    double xi1 = bisect(g, lo, xi_peak, 1e-15);
    // decreasing branch: expand right until mu < ratio (mu(xi) < 1/xi)
    double hi = 2.0 * xi_peak;
    while (mu(hi) > sol.ratio) hi *= 2.0;
    double xi0 = bisect(g, xi_peak, hi, 1e-15);

    sol.pi0 = h * xi0;
    sol.pi1 = h * xi1;

    for (double pi : {*sol.pi0, *sol.pi1}) {
        if (std::abs(pi * std::cosh(h / pi) - r) > tolerance * r)
            throw std::runtime_error("solve_pi: root certificate violated");
    }
    return sol;
}

CatenaryProfile catenary_profile(const CatenarySolution& sol, Branch which) {
    const std::optional<double>& root = (which == Branch::stable) ? sol.pi0 : sol.pi1;
    if (!root)
        throw std::runtime_error("catenary_profile: requested root is absent (regime " +
                                 std::string(to_string(sol.regime)) + ")");
    return CatenaryProfile{*root, 0.0};
}

double e0_closed_form(double h, double r, double pi) {
    if (!(pi > 0.0) || pi > r)
        throw std::invalid_argument("e0_closed_form: requires 0 < pi <= r");
    return pi * h + r * std::sqrt(r * r - pi * pi);
}

CatenaryComparison compare_catenaries(double h, double r) {
    CatenarySolution sol = solve_pi(h, r);
    if (!sol.pi0 || !sol.pi1)
        throw std::runtime_error("compare_catenaries: need both catenary roots (h/r < 1/m)");
    CatenaryComparison cmp;
    cmp.e0_stable = e0_closed_form(h, r, *sol.pi0);
    cmp.e0_unstable = e0_closed_form(h, r, *sol.pi1);
    cmp.goldschmidt = r * r;
    cmp.stable_below_unstable = cmp.e0_stable < cmp.e0_unstable;
    cmp.stable_below_goldschmidt = cmp.e0_stable < cmp.goldschmidt;
    return cmp;
}

double f_and_tangent_bound(double x, double y) {
    const ModelConstants& k = model_constants();
    if (!(x >= 0.0)) throw std::invalid_argument("f_and_tangent_bound: requires x >= 0");
    if (!(y >= 0.0) || y > k.z0)
        throw std::invalid_argument("f_and_tangent_bound: requires y in [0, z0]");
    return slope_gain(x) - slope_gain(y) - slope_gain_deriv(y) * (x - y);
}

namespace {

// d/dt of v(t) = sinh(t)(1 + cosh^2 t)/cosh^4 t, simplified to
// (4 - cosh^2 t - cosh^4 t)/cosh^5 t; zero exactly at t = beta.
double v_deriv(double t) {
    double ch = std::cosh(t);
    double ch2 = ch * ch;
    return (4.0 - ch2 - ch2 * ch2) / (ch2 * ch2 * ch);
}

}  // namespace

KeyInequalityReport key_inequality_check(double pi0, double h, int n_samples) {
    if (!(pi0 > 0.0) || !(h > 0.0))
        throw std::invalid_argument("key_inequality_check: requires pi0 > 0, h > 0");
    if (n_samples < 2) throw std::invalid_argument("key_inequality_check: n_samples >= 2");
    KeyInequalityReport rep;
    rep.hypothesis_ok = (h / pi0) <= model_constants().beta;
    double min_d = v_deriv(0.0) / (pi0 * pi0);
    for (int i = 0; i < n_samples; ++i) {
        double x = h * static_cast<double>(i) / (n_samples - 1);
        min_d = std::min(min_d, v_deriv(x / pi0) / (pi0 * pi0));
    }
    rep.min_derivative = min_d;
    return rep;
}

}  // namespace nemfilm
