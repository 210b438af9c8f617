#pragma once

#include <optional>
#include <vector>

#include "nemfilm/elsolver.hpp"
#include "nemfilm/energy.hpp"
#include "nemfilm/profile.hpp"

namespace nemfilm {

enum class InitProfile { catenary, chord, custom };

struct MinimizeOptions {
    int n_cells = 400;
    int max_iters = 20000;
    // Convergence: sup-norm of the discrete gradient. 0 selects the
    // scale-aware default 1e-6*max(1, c/r^2); the rounding floor of the
    // energy grows with c, so a fixed tolerance is unreachable at large c.
    double grad_tol = 0.0;
    int envelope_every = 25;     // convex-envelope projection cadence
    InitProfile init = InitProfile::catenary;  // falls back to chord if no catenary
    std::optional<ProfileCurve> custom_init;   // required for init == custom
    // Solve a halved-grid problem first and prolong, repeatedly (only for
    // catenary/chord init). Cuts fine-grid iterations by orders of magnitude.
    bool coarse_to_fine = true;
};

struct MinimizeResult {
    explicit MinimizeResult(ProfileCurve p) : profile(std::move(p)) {}

    ProfileCurve profile;
    EnergyBreakdown energy;
    int iterations = 0;
    bool converged = false;
    ShapeReport shape;
    double grad_sup = 0.0;
    std::vector<double> energy_history;  // nonincreasing
};

// Projected gradient descent on the interior nodal values: monotone Armijo
// backtracking (shrink factor 0.5; trial step r/|g| on the first iteration,
// Barzilai-Borwein afterwards), positivity clamp at 1e-9*r, convex-envelope
// projection every envelope_every iterations, symmetrization to the
// lower-energy half at the end.
MinimizeResult minimize(const Parameters& params, const MinimizeOptions& opts = {});

struct SweepEntry {
    double c = 0.0;
    double apex = 0.0;      // rho(0)
    double sup_dist = 0.0;  // max |rho - r|
    EnergyBreakdown energy;
    bool ok = false;
};

// minimize() per c (ascending), warm-starting each run from the previous
// profile. Failures are recorded per entry instead of aborting the sweep.
std::vector<SweepEntry> sweep_c(const Parameters& base, const std::vector<double>& c_values,
                                const MinimizeOptions& opts = {});

// Checks of the minimizer properties: evenness, convexity, the strict
// barrier rho0 < rho < r, and the Euler-Lagrange certificates. Failed checks
// are reported, never thrown.
struct TheoremChecklist {
    bool evenness_ok = false;
    double evenness_sup = 0.0;   // <= 1e-6 required
    bool convexity_ok = false;
    double min_second_diff = 0.0;  // > -1e-10 required
    bool barrier_applicable = false;  // catenary exists
    bool barrier_ok = false;
    double barrier_margin_low = 0.0;   // min over interior of rho - rho0
    double barrier_margin_high = 0.0;  // min over interior of r - rho
    bool el_ok = false;
    double el_res = 0.0;   // <= 1e-3 required
    double drift = 0.0;    // <= 1e-3*r required, apex = rho(0)
    bool all_ok() const {
        return evenness_ok && convexity_ok && (!barrier_applicable || barrier_ok) && el_ok;
    }
};
TheoremChecklist verify_theorem_properties(const MinimizeResult& result, const Parameters& params);

}  // namespace nemfilm
