#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nemfilm/profile.hpp"

namespace nemfilm {

// Problem instance (h, r, c). The existence theory assumes h/r <= omega;
// outside that band solvers run best-effort and flag the result.
struct Parameters {
    Parameters(double h, double r, double c);
    double h = 1.0;
    double r = 1.0;
    double c = 0.0;
    double ratio() const { return h / r; }
    bool outside_standing_assumption() const;
};

struct no_solution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct certification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rho'' from the Euler-Lagrange equation:
// (1+rho'^2)((c+rho^2)rho'^2 + rho^2) / (rho*(rho^2 rho'^2 + c(2-rho'^2) + rho^2)).
// Positive on its domain; throws when rho <= 0 or the denominator loses
// positivity (|rho'| >= sqrt(2) with large c).
double el_rhs(double rho, double rho_prime, double c);

// c*rho'^2/(rho*(1+rho'^2)^{3/2}) - rho/sqrt(1+rho'^2) + apex; identically
// zero along a solution whose minimum value is apex.
double first_integral_residual(double rho, double rho_prime, double c, double apex);

struct TrajectorySample {
    double x = 0.0;
    double rho = 0.0;
    double rho_prime = 0.0;
};

enum class StopReason { none, slope_band, range };

// Fixed-step RK4 trajectory of (rho, rho') from (apex, 0) at x = 0 up to
// x = h. Stops early (flagged, not an error) if rho' reaches z0 or rho
// leaves (0, 2r).
struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool completed = false;
    StopReason stop = StopReason::none;
};
Trajectory integrate_from_apex(double apex, const Parameters& params, double step);

// A certified solution of the boundary-value problem rho(0) = apex,
// rho'(0) = 0, rho(h) = r, stored on [0, h] (the full profile is the even
// extension).
struct ShootingSolution {
    explicit ShootingSolution(Parameters p) : params(p) {}

    Parameters params;
    double apex = 0.0;
    std::vector<TrajectorySample> samples;  // on [0, h]
    double boundary_residual = 0.0;         // |rho(h) - r|
    double max_slope = 0.0;
    double drift = 0.0;                     // max |first integral residual|
    std::vector<double> all_apexes;         // every bracketed root, ascending

    // Even extension sampled on a grid of n_cells cells over [-h, h] by
    // cubic Hermite interpolation of the trajectory.
    ProfileCurve to_profile(int n_cells) const;
    // Even extension on the trajectory's own step grid.
    ProfileCurve to_profile() const;
    // rho(x) for x in [0, h] by cubic Hermite interpolation.
    double eval(double x) const;
};

// Finds apex values a in (max(Pi1, eps), r) with rho(h; a) = r by a
// 256-point scan for sign changes of rho(h; a) - r followed by bisection;
// returns the solution with the largest apex, certified: boundary residual
// <= tolerance*r, first-integral drift <= 1e-8*r, max |rho'| < z0, rho'
// strictly increasing. Throws no_solution_error if the scan brackets no
// root and certification_error if a certificate fails. step = 0 selects the
// default 2h/8000.
ShootingSolution shoot(const Parameters& params, double tolerance = 1e-12, double step = 0.0);

// Max over interior nodes of the Euler-Lagrange defect
// (1+rho'^2)((c+rho^2)rho'^2 + rho^2) - rho*rho''*(rho^2 rho'^2 + c(2-rho'^2) + rho^2)
// with central differences, normalized by r^2 (r = boundary value).
// Requires at least 5 nodes.
double el_residual(const ProfileCurve& p, double c);

}  // namespace nemfilm
