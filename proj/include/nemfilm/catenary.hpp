#pragma once

#include <cmath>
#include <optional>

namespace nemfilm {

// Dimensionless constants of the axisymmetric film model. All of them are
// roots of explicit scalar equations; see compute_constants().
struct ModelConstants {
    double xi_star;     // unique s > 0 with catenary_energy_ratio(s) = 1
    double omega;       // critical aspect ratio 1/(xi_star*cosh(1/xi_star))
    double phi_min;     // m = min of cosh(x)/x
    double phi_argmin;  // root of x*tanh(x) = 1, argmin of cosh(x)/x
    double z0;          // sqrt((sqrt(5)-1)/2); slope bound, slope_gain'(z0) = 1
    double beta;        // acosh(sqrt((sqrt(17)-1)/2)); monotonicity bound of v
};

// cosh(x)/x for x > 0. Diverges at both ends, minimum phi_min at phi_argmin.
double phi(double x);

// mu(xi) = 1/(xi*cosh(1/xi)): aspect ratio h/r produced by a catenary with
// scale Pi = xi*h. Increasing on (0, 1/phi_argmin), decreasing afterwards,
// peak value 1/phi_min.
double mu(double xi);

// sech^2(1/s)/s + tanh(1/s): the relaxed energy of the catenary with scale
// Pi = s*h in units of r^2 (the Goldschmidt value). Equals 1 at s = xi_star.
double catenary_energy_ratio(double s);

// Slope penalty x^2/sqrt(1+x^2) and its derivative.
double slope_gain(double x);
double slope_gain_deriv(double x);

// Computes all model constants by bracketed bisection (brackets: xi_star in
// (0.1, 10), phi_argmin in (0.5, 2)). tolerance must lie in (0, 1e-6].
ModelConstants compute_constants(double tolerance);

// Constants at the default tolerance 1e-12, computed once and cached.
const ModelConstants& model_constants();

enum class Regime {
    UniqueCatenoid,   // h/r < omega: stable catenoid is the global minimizer
    Crossover,        // h/r = omega: catenoid and Goldschmidt disks tie
    LocalCatenoid,    // omega < h/r <= 1/m: catenoid exists but only locally minimal
    GoldschmidtOnly,  // h/r > 1/m: no catenary spans the rings
};
const char* to_string(Regime regime);

// A catenary rho(x) = pi*cosh((x - x0)/pi). The symmetric solutions have
// x0 = 0.
struct CatenaryProfile {
    double pi = 1.0;
    double x0 = 0.0;

    double operator()(double x) const { return pi * std::cosh((x - x0) / pi); }
    double slope(double x) const { return std::sinh((x - x0) / pi); }
};

// Roots of Pi*cosh(h/Pi) = r together with the regime classification.
// Both roots are absent exactly in the GoldschmidtOnly regime; at the
// tangency h/r = 1/m they coincide.
struct CatenarySolution {
    double h = 0.0;
    double r = 0.0;
    double ratio = 0.0;          // h/r
    std::optional<double> pi0;   // largest root
    std::optional<double> pi1;   // smallest root
    Regime regime = Regime::GoldschmidtOnly;

    bool has_roots() const { return pi0.has_value(); }
};

// Solves Pi*cosh(h/Pi) = r by bisecting mu(xi) = h/r on each monotone
// branch. Every returned root Pi satisfies |Pi*cosh(h/Pi) - r| <= tolerance*r.
CatenarySolution solve_pi(double h, double r, double tolerance = 1e-12);

enum class Branch { stable, unstable };

// The catenary profile for the requested root (stable -> Pi0, unstable ->
// Pi1); throws if that root is absent.
CatenaryProfile catenary_profile(const CatenarySolution& sol, Branch which);

// Closed-form relaxed energy Pi*h + r*sqrt(r^2 - Pi^2) of a catenary root.
// Requires 0 < pi <= r.
double e0_closed_form(double h, double r, double pi);

// Energies of the two catenaries and the Goldschmidt disks (r^2), plus the
// induced ordering. Requires both roots to exist.
struct CatenaryComparison {
    double e0_stable = 0.0;
    double e0_unstable = 0.0;
    double goldschmidt = 0.0;
    bool stable_below_unstable = false;
    bool stable_below_goldschmidt = false;
};
CatenaryComparison compare_catenaries(double h, double r);

// Residual of the tangent-line bound slope_gain(x) >= slope_gain(y) +
// slope_gain'(y)*(x - y), valid for x >= 0 and y in [0, z0]. Nonnegative on
// that domain; throws outside it.
double f_and_tangent_bound(double x, double y);

// Minimum over x in [0, h] of d/dx[(1/rho0)*slope_gain'(rho0')] along the
// catenary of scale pi0, evaluated through the closed form
// v(t) = sinh(t)(1 + cosh^2 t)/cosh^4 t. Nonnegative whenever h/pi0 <= beta.
struct KeyInequalityReport {
    double min_derivative = 0.0;
    bool hypothesis_ok = false;  // h/pi0 <= beta
};
KeyInequalityReport key_inequality_check(double pi0, double h, int n_samples = 10001);

}  // namespace nemfilm
