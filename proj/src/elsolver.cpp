#include "nemfilm/elsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nemfilm/catenary.hpp"

namespace nemfilm {

Parameters::Parameters(double h_, double r_, double c_) : h(h_), r(r_), c(c_) {
    if (!(h > 0.0) || !(r > 0.0))
        throw std::invalid_argument("Parameters: requires h > 0 and r > 0");
    if (!(c >= 0.0)) throw std::invalid_argument("Parameters: requires c >= 0");
}

bool Parameters::outside_standing_assumption() const {
    return ratio() > model_constants().omega;
}

double el_rhs(double rho, double rho_prime, double c) {
    if (!(rho > 0.0)) throw std::domain_error("el_rhs: requires rho > 0");
    double p2 = rho_prime * rho_prime;
    double r2 = rho * rho;
    double den = r2 * p2 + c * (2.0 - p2) + r2;
    if (!(den > 0.0)) throw std::domain_error("el_rhs: denominator lost positivity");
    return (1.0 + p2) * ((c + r2) * p2 + r2) / (rho * den);
}

double first_integral_residual(double rho, double rho_prime, double c, double apex) {
    if (!(rho > 0.0)) throw std::domain_error("first_integral_residual: requires rho > 0");
    double q = 1.0 + rho_prime * rho_prime;
    double sq = std::sqrt(q);
    return c * rho_prime * rho_prime / (rho * q * sq) - rho / sq + apex;
}

namespace {

struct State {
    double rho, rp;
};

// Non-throwing variant for trial trajectories: RK4 stage states can leave
// the el_rhs domain one step before the band guard sees them.
bool rhs(const State& s, double c, State& out) {
    if (!(s.rho > 0.0)) return false;
    double p2 = s.rp * s.rp;
    double r2 = s.rho * s.rho;
    double den = r2 * p2 + c * (2.0 - p2) + r2;
    if (!(den > 0.0)) return false;
    out = {s.rp, (1.0 + p2) * ((c + r2) * p2 + r2) / (s.rho * den)};
    return true;
}

int default_steps(double h, double step) {
    if (step <= 0.0) return 4000;  // 2h/8000 over the half interval [0, h]
    return std::max(1, static_cast<int>(std::ceil(h / step - 1e-12)));
}

}  // namespace

Trajectory integrate_from_apex(double apex, const Parameters& params, double step) {
    if (!(apex > 0.0) || apex > params.r)
        throw std::invalid_argument("integrate_from_apex: requires 0 < apex <= r");
    const double z0 = model_constants().z0;
    const int n = default_steps(params.h, step);
    const double dt = params.h / n;

    Trajectory traj;
    traj.samples.reserve(n + 1);
    State s{apex, 0.0};
    traj.samples.push_back({0.0, s.rho, s.rp});
    for (int i = 0; i < n; ++i) {
        State k1, k2, k3, k4;
        bool ok = rhs(s, params.c, k1) &&
                  rhs({s.rho + 0.5 * dt * k1.rho, s.rp + 0.5 * dt * k1.rp}, params.c, k2) &&
                  rhs({s.rho + 0.5 * dt * k2.rho, s.rp + 0.5 * dt * k2.rp}, params.c, k3) &&
                  rhs({s.rho + dt * k3.rho, s.rp + dt * k3.rp}, params.c, k4);
        if (!ok) {
            traj.stop = (s.rp >= 0.5 * z0) ? StopReason::slope_band : StopReason::range;
            return traj;
        }
        s.rho += dt / 6.0 * (k1.rho + 2.0 * (k2.rho + k3.rho) + k4.rho);
        s.rp += dt / 6.0 * (k1.rp + 2.0 * (k2.rp + k3.rp) + k4.rp);
        double x = (i + 1) * dt;
        if (s.rp >= z0) {
            traj.stop = StopReason::slope_band;
            return traj;
        }
        if (!(s.rho > 0.0) || s.rho >= 2.0 * params.r) {
            traj.stop = StopReason::range;
            return traj;
        }
        traj.samples.push_back({x, s.rho, s.rp});
    }
    traj.completed = true;
    return traj;
}

namespace {

double hermite(const std::vector<TrajectorySample>& tr, double x) {
    double dt = tr[1].x - tr[0].x;
    int k = std::min(static_cast<int>(x / dt), static_cast<int>(tr.size()) - 2);
    k = std::max(k, 0);
    double t = (x - tr[k].x) / dt;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * tr[k].rho + h10 * dt * tr[k].rho_prime + h01 * tr[k + 1].rho +
           h11 * dt * tr[k + 1].rho_prime;
}

}  // namespace

double ShootingSolution::eval(double x) const { return hermite(samples, x); }

ProfileCurve ShootingSolution::to_profile(int n_cells) const {
    Grid g(params.h, n_cells);
    std::vector<double> v(g.n_nodes());
    for (int i = 0; i <= n_cells / 2; ++i) {
        double val = hermite(samples, std::abs(g.node(i)));
        v[i] = val;
        v[n_cells - i] = val;
    }
    return ProfileCurve(g, std::move(v));
}

ProfileCurve ShootingSolution::to_profile() const {
    int half = static_cast<int>(samples.size()) - 1;
    Grid g(params.h, 2 * half);
    std::vector<double> v(g.n_nodes());
    for (int i = 0; i <= half; ++i) {
        v[half + i] = samples[i].rho;
        v[half - i] = samples[i].rho;
    }
    return ProfileCurve(g, std::move(v));
}

ShootingSolution shoot(const Parameters& params, double tolerance, double step) {
    const double r = params.r;
    // boundary miss; early-stopped trajectories count as +inf (minimizers
    // stay strictly inside the slope band)
    auto g_of = [&](double apex) {
        Trajectory t = integrate_from_apex(apex, params, step);
        if (!t.completed) return std::numeric_limits<double>::infinity();
        return t.samples.back().rho - r;
    };

    double lo = 1e-6 * r;
    CatenarySolution cat = solve_pi(params.h, r);
    if (cat.pi1) lo = std::max(lo, *cat.pi1);

    constexpr int kScan = 256;
    std::vector<double> apexes(kScan), gvals(kScan);
    for (int i = 0; i < kScan; ++i) {
        apexes[i] = std::min(lo + (r - lo) * i / (kScan - 1), r);
        gvals[i] = g_of(apexes[i]);
    }

    std::vector<double> roots;
    for (int i = 0; i + 1 < kScan; ++i) {
        double ga = gvals[i], gb = gvals[i + 1];
        bool sa = ga > 0.0;  // +inf counts as positive
        bool sb = gb > 0.0;
        if (ga == 0.0) {
            roots.push_back(apexes[i]);
            continue;
        }
        if (sa == sb) continue;
        double a = apexes[i], b = apexes[i + 1];
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            double gm = g_of(mid);
            if (gm == 0.0) {
                a = b = mid;
                break;
            }
            if ((gm > 0.0) == sa)
                a = mid;
            else
                b = mid;
            if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * mid) break;
        }
        roots.push_back(0.5 * (a + b));
    }

    if (roots.empty()) {
        std::ostringstream msg;
        msg << "shoot: no sign change over apex scan [" << lo << ", " << r << "] for h="
            << params.h << " r=" << r << " c=" << params.c
            << " (h/r=" << params.ratio() << ")";
        throw no_solution_error(msg.str());
    }
    std::sort(roots.begin(), roots.end());

    ShootingSolution sol(params);
    sol.all_apexes = roots;
    sol.apex = roots.back();
    Trajectory traj = integrate_from_apex(sol.apex, params, step);
    if (!traj.completed)
        throw certification_error("shoot: selected trajectory left the admissible band");
    sol.samples = std::move(traj.samples);
    sol.boundary_residual = std::abs(sol.samples.back().rho - r);

    sol.max_slope = 0.0;
    sol.drift = 0.0;
    bool slopes_increasing = true;
    for (size_t i = 0; i < sol.samples.size(); ++i) {
        const TrajectorySample& s = sol.samples[i];
        sol.max_slope = std::max(sol.max_slope, std::abs(s.rho_prime));
        sol.drift = std::max(sol.drift,
                             std::abs(first_integral_residual(s.rho, s.rho_prime, params.c, sol.apex)));
        if (i > 0 && !(s.rho_prime > sol.samples[i - 1].rho_prime)) slopes_increasing = false;
    }

    std::ostringstream why;
    if (sol.boundary_residual > tolerance * r)
        why << "boundary residual " << sol.boundary_residual << " > " << tolerance * r << "; ";
    if (sol.drift > 1e-8 * r) why << "first-integral drift " << sol.drift << " > " << 1e-8 * r << "; ";
    if (!(sol.max_slope < model_constants().z0)) why << "slope band |rho'| < z0 violated; ";
    if (!slopes_increasing) why << "rho' not strictly increasing; ";
    // 800 cells keeps the rho'' difference quotient clear of rounding noise
    // while the O(dx^2) truncation stays below the certificate
    double res = el_residual(sol.to_profile(800), params.c);
    if (res > 1e-5) why << "EL residual " << res << " > 1e-5; ";
    if (!why.str().empty()) throw certification_error("shoot: " + why.str());
    return sol;
}

double el_residual(const ProfileCurve& p, double c) {
    const Grid& g = p.grid();
    if (g.n_nodes() < 5) throw std::invalid_argument("el_residual: needs at least 5 nodes");
    const double dx = g.dx();
    const double r = p.values().back();
    double worst = 0.0;
    for (int i = 1; i < g.n_cells; ++i) {
        double rho = p.value(i);
        double rp = (p.value(i + 1) - p.value(i - 1)) / (2.0 * dx);
        double rpp = (p.value(i + 1) - 2.0 * p.value(i) + p.value(i - 1)) / (dx * dx);
        double p2 = rp * rp;
        double r2 = rho * rho;
        double lhs = (1.0 + p2) * ((c + r2) * p2 + r2);
        double rhs_ = rho * rpp * (r2 * p2 + c * (2.0 - p2) + r2);
        worst = std::max(worst, std::abs(lhs - rhs_));
    }
    return worst / (r * r);
}

}  // namespace nemfilm
