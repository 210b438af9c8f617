// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nemfilm/catenary.hpp"
#include "nemfilm/elsolver.hpp"
#include "nemfilm/energy.hpp"
#include "nemfilm/geometry.hpp"
#include "nemfilm/minimizer.hpp"
#include "nemfilm/profile.hpp"
#include "test_util.hpp"

using namespace nemfilm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    if (!ok) ++g_failures;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

const std::vector<std::pair<double, double>> kInstances{{1.0, 3.5}, {1.0, 5.0}, {0.5, 1.0}};
const std::vector<double> kCFactors{0.01, 0.1, 1.0, 10.0, 100.0};

void criterion_1() {
    Clock::time_point t0 = Clock::now();
    ModelConstants k = compute_constants(1e-12);
    double ms = ms_since(t0);
    bool ok = k.omega > 0.52 && k.omega < 0.53 &&
              std::round(k.omega * 1000.0) == 528.0 &&
              std::round(1000.0 / k.phi_min) == 663.0 && ms < 1.0;
    report(1, ok,
           fmt("constants: omega=%.6f in (0.52,0.53) rounds 0.528; 1/m=%.6f rounds 0.663; "
               "%.3f ms < 1 ms",
               k.omega, 1.0 / k.phi_min, ms));
}

void criterion_2() {
    CatenarySolution sol = solve_pi(1.0, 3.5);
    ProfileCurve p = sample_catenary(Grid(1.0, 4000), catenary_profile(sol, Branch::stable));
    Clock::time_point t0 = Clock::now();
    double quad = evaluate(p, 0.0).total;
    double ms = ms_since(t0);
    double closed = e0_closed_form(1.0, 3.5, *sol.pi0);
    double rel = std::abs(quad - closed) / closed;
    bool ok = rel <= 1e-6 && ms < 10.0;
    report(2, ok,
           fmt("catenary closed form: |quad-closed|/closed = %.2e <= 1e-6; %.3f ms < 10 ms",
               rel, ms));
}

void criterion_3() {
    double omega = model_constants().omega;
    double r = 1.0 / omega;  // h = 1, so h/r = omega
    CatenarySolution sol = solve_pi(1.0, r);
    double e0 = e0_closed_form(1.0, r, *sol.pi0);
    double gap = std::abs(e0 - r * r);
    bool ok = gap <= 1e-8 * r * r;
    report(3, ok, fmt("Goldschmidt crossover: |E0(rho0) - r^2| = %.2e <= %.2e", gap, 1e-8 * r * r));
}

void criterion_4() {
    std::mt19937 rng(1001);
    std::uniform_real_distribution<double> uratio(0.05, 1.0 / model_constants().phi_min - 1e-3);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        double r = 1.0 / uratio(rng);
        CatenaryComparison cmp = compare_catenaries(1.0, r);
        if (!(cmp.e0_stable < cmp.e0_unstable)) ok = false;
    }
    report(4, ok, "stable-vs-unstable ordering on 100 random instances with h/r < 1/m");
}

void criterion_5() {
    std::mt19937 rng(1002);
    Grid g(1.0, 100);
    Clock::time_point t0 = Clock::now();
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        ProfileCurve p = testutil::random_piecewise_affine(g, 2.0, rng);
        ProfileCurve env = convex_envelope(p);
        for (double c : {0.0, 0.1, 1.0, 10.0}) {
            double gap = evaluate(env, c).total - evaluate(p, c).total;
            worst = std::max(worst, gap);
            if (gap > 1e-10) ok = false;
        }
    }
    double ms = ms_since(t0);
    ok = ok && ms < 5000.0;
    report(5, ok,
           fmt("convexification: max E(env)-E(p) = %.2e <= 1e-10 over 1000 profiles x 4 c; "
               "%.0f ms < 5 s",
               worst, ms));
}

void criterion_6() {
    std::mt19937 rng(1003);
    std::uniform_real_distribution<double> uratio(0.08, model_constants().omega);
    Grid g(1.0, 100);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double r = 1.0 / uratio(rng);
        CatenarySolution sol = solve_pi(1.0, r);
        CatenaryProfile rho0 = catenary_profile(sol, Branch::stable);
        ProfileCurve p = testutil::random_convex_admissible(g, r, rng);
        ProfileCurve lifted = max_with(p, rho0);
        for (double c : {0.1, 1.0, 10.0}) {
            double gap = evaluate(lifted, c).total - evaluate(p, c).total;
            worst = std::max(worst, gap);
            if (gap > 1e-10) ok = false;
        }
    }
    report(6, ok,
           fmt("barrier property: max E(p v rho0)-E(p) = %.2e <= 1e-10 over 200 convex profiles",
               worst));
}

void criterion_7() {
    Clock::time_point t0 = Clock::now();
    ShootingSolution sol = shoot(Parameters(1.0, 3.5, 0.0));  // default step 2h/8000
    double ms = ms_since(t0);
    CatenarySolution cat = solve_pi(1.0, 3.5);
    double apex_rel = std::abs(sol.apex - *cat.pi0) / *cat.pi0;
    double sup = 0.0;
    for (const TrajectorySample& s : sol.samples)
        sup = std::max(sup, std::abs(s.rho - *cat.pi0 * std::cosh(s.x / *cat.pi0)));
    bool ok = sup <= 1e-8 && apex_rel <= 1e-10 && ms < 1000.0;
    report(7, ok,
           fmt("shooting at c=0: sup catenary gap %.2e <= 1e-8, apex rel err %.2e <= 1e-10; "
               "%.0f ms < 1 s",
               sup, apex_rel, ms));
}

std::vector<ShootingSolution> certified_matrix() {
    std::vector<ShootingSolution> sols;
    for (auto [h, r] : kInstances)
        for (double cf : kCFactors) sols.push_back(shoot(Parameters(h, r, cf * r * r)));
    return sols;
}

void criterion_8(const std::vector<ShootingSolution>& sols) {
    bool ok = true;
    double worst_drift = 0.0, worst_res = 0.0, worst_slope = 0.0;
    for (const ShootingSolution& sol : sols) {
        double r = sol.params.r;
        double res = el_residual(sol.to_profile(800), sol.params.c);
        worst_drift = std::max(worst_drift, sol.drift / r);
        worst_res = std::max(worst_res, res);
        worst_slope = std::max(worst_slope, sol.max_slope);
        if (sol.drift > 1e-8 * r || res > 1e-5) ok = false;
        if (!(sol.max_slope < model_constants().z0)) ok = false;
        ProfileCurve p = sol.to_profile(400);
        for (int i = 0; i <= 400; ++i)
            if (p.value(i) != p.value(400 - i)) ok = false;  // evenness by construction
        for (size_t i = 1; i < sol.samples.size(); ++i)
            if (!(sol.samples[i].rho_prime > sol.samples[i - 1].rho_prime)) ok = false;
    }
    report(8, ok,
           fmt("certification x15: drift/r <= %.1e (<=1e-8), EL residual <= %.1e (<=1e-5), "
               "max slope %.4f < z0=%.4f, even, strictly convex",
               worst_drift, worst_res, worst_slope, model_constants().z0));
}

void criterion_9(const std::vector<ShootingSolution>& sols) {
    bool ok = true;
    double worst_lo = 1e300, worst_hi = 1e300;
    for (const ShootingSolution& sol : sols) {
        CatenarySolution cat = solve_pi(sol.params.h, sol.params.r);
        CatenaryProfile rho0 = catenary_profile(cat, Branch::stable);
        for (size_t i = 1; i + 1 < sol.samples.size(); ++i) {
            const TrajectorySample& s = sol.samples[i];
            worst_lo = std::min(worst_lo, s.rho - rho0(s.x));
            worst_hi = std::min(worst_hi, sol.params.r - s.rho);
        }
    }
    ok = worst_lo > 0.0 && worst_hi > 0.0;
    report(9, ok,
           fmt("strict barrier rho0 < rho_c < r: min margins %.1e and %.1e over all interior "
               "samples",
               worst_lo, worst_hi));
}

void criterion_10() {
    Clock::time_point t0 = Clock::now();
    MinimizeOptions opts;
    opts.n_cells = 400;
    std::vector<SweepEntry> entries =
        sweep_c(Parameters(1.0, 5.0, 0.0), {0.0, 1.0, 2.0, 10.0, 30.0, 100.0}, opts);
    double ms = ms_since(t0);
    bool ok = entries.size() == 6;
    for (const SweepEntry& e : entries) ok = ok && e.ok;
    for (size_t i = 1; i < entries.size(); ++i)
        if (!(entries[i].sup_dist < entries[i - 1].sup_dist)) ok = false;
    double final_sup = entries.back().sup_dist;
    ok = ok && final_sup < 0.05 * 5.0 && ms < 30000.0;
    report(10, ok,
           fmt("flattening sweep (1,5): sup dist strictly decreasing, final %.4f < 0.25; "
               "%.0f ms < 30 s",
               final_sup, ms));
}

void criterion_11(const std::vector<ShootingSolution>& sols) {
    Clock::time_point t0 = Clock::now();
    bool ok = true;
    double worst = 0.0;
    for (const ShootingSolution& sol : sols) {
        MinimizeOptions opts;
        opts.n_cells = 400;  // 401 nodes
        MinimizeResult res = minimize(sol.params, opts);
        ProfileCurve ref = sol.to_profile(400);
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i)
            sup = std::max(sup, std::abs(res.profile.value(i) - ref.value(i)));
        worst = std::max(worst, sup);
        if (!(res.converged && sup <= 1e-3)) ok = false;
    }
    double ms = ms_since(t0);
    ok = ok && ms < 60000.0;
    report(11, ok,
           fmt("minimizer vs shooting: worst sup gap %.2e <= 1e-3 at 401 nodes on 15 instances; "
               "%.0f ms < 60 s",
               worst, ms));
}

void criterion_12() {
    Grid g(1.0, 200);
    ProfileCurve cat = sample_catenary(g, catenary_profile(solve_pi(1.0, 3.5), Branch::stable));
    PhysicalParams phys(2.0, 3.0);

    DirectorField constant = DirectorField::from_function(g, [](double, double) { return 0.4; });
    DirectorEnergy dc = director_energy(cat, constant, phys);
    double two_pi_gamma_ec =
        2.0 * std::numbers::pi * phys.gamma * evaluate(cat, phys.c()).total;
    double rel = std::abs(dc.total - two_pi_gamma_ec) / two_pi_gamma_ec;
    bool ok = rel <= 1e-9;

    DirectorField sinphi =
        DirectorField::from_function(g, [](double, double phi) { return std::sin(phi); });
    DirectorEnergy ds = director_energy(cat, sinphi, phys);
    ok = ok && std::abs(ds.i4) <= 1e-9 * std::abs(ds.i1);

    ProfileCurve chord = constant_profile(g, 3.5);
    DirectorField mixed = DirectorField::from_function(
        g, [](double x, double phi) { return 0.3 * x + 0.2 * std::cos(phi); });
    DirectorEnergy dm = director_energy(chord, mixed, phys);
    double chord_ec = 2.0 * std::numbers::pi * phys.gamma * evaluate(chord, phys.c()).total;
    ok = ok && dm.i2 + dm.i3 > 0.0 && dm.total > chord_ec;

    report(12, ok,
           fmt("director reduction: const-alpha rel gap %.1e <= 1e-9; |I4(sin phi)| = %.1e; "
               "I2+I3 = %.3e > 0",
               rel, std::abs(ds.i4), dm.i2 + dm.i3));
}

void criterion_13() {
    Parameters params(0.55, 0.9, 0.1);
    ShootingSolution sol = shoot(params);
    std::vector<CurvatureSample> cs = curvatures(sol.to_profile(2000));
    double max_h = 0.0, sum = 0.0, sum2 = 0.0;
    for (const CurvatureSample& s : cs) {
        max_h = std::max(max_h, std::abs(s.mean));
        sum += s.gauss;
        sum2 += s.gauss * s.gauss;
    }
    double mean_k = sum / cs.size();
    double rel_std = std::sqrt(std::max(0.0, sum2 / cs.size() - mean_k * mean_k)) / std::abs(mean_k);
    bool ok = max_h > 1e-2 / params.r && rel_std > 0.01;
    report(13, ok,
           fmt("curvature check (c=0.1): max|H| = %.3f > %.4f and relstd K = %.3f > 0.01",
               max_h, 1e-2 / params.r, rel_std));
}

void criterion_14() {
    std::mt19937 rng(1004);
    Grid g(1.0, 100);
    const double r = 3.5;
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ProfileCurve p = testutil::random_admissible(g, r, rng);
        double c = (trial % 2) ? 1.0 : 0.1;
        std::vector<double> ga = gradient(p, c);
        double step = 1e-6 * r;
        double sup_gap = 0.0, sup_fd = 0.0;
        for (int i = 1; i < g.n_cells; ++i) {
            std::vector<double> up = p.values(), dn = p.values();
            up[i] += step;
            dn[i] -= step;
            double fd = (evaluate(ProfileCurve(g, up), c).total -
                         evaluate(ProfileCurve(g, dn), c).total) /
                        (2.0 * step);
            sup_gap = std::max(sup_gap, std::abs(ga[i] - fd));
            sup_fd = std::max(sup_fd, std::abs(fd));
        }
        double rel = sup_gap / sup_fd;
        worst = std::max(worst, rel);
        if (rel > 1e-6) ok = false;
    }
    report(14, ok, fmt("gradient vs central differences: worst rel gap %.2e <= 1e-6", worst));
}

}  // namespace

int main() {
    std::printf("acceptance suite: nematic axisymmetric film solvers\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    std::vector<ShootingSolution> sols = certified_matrix();
    criterion_8(sols);
    criterion_9(sols);
    criterion_10();
    criterion_11(sols);
    criterion_12();
    criterion_13();
    criterion_14();
    std::printf("%d/14 criteria passed\n", 14 - g_failures);
    return g_failures;
}
