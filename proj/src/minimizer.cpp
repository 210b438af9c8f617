#include "nemfilm/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nemfilm/catenary.hpp"

namespace nemfilm {

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> initial_values(const Parameters& params, const Grid& g, InitProfile init) {
    if (init == InitProfile::catenary) {
        CatenarySolution cat = solve_pi(params.h, params.r);
        if (cat.pi0) {
            CatenaryProfile prof{*cat.pi0, 0.0};
            std::vector<double> v(g.n_nodes());
            for (int i = 0; i < g.n_nodes(); ++i) v[i] = prof(g.node(i));
            v.front() = params.r;  // pin the boundary exactly
            v.back() = params.r;
            return v;
        }
    }
    return std::vector<double>(g.n_nodes(), params.r);
}

struct LoopResult {
    std::vector<double> values;
    double energy = 0.0;
    double grad_sup = 0.0;
    int iterations = 0;
    bool converged = false;
};

// The descent loop on one grid. Maintains E nonincreasing: Armijo
// backtracking plus envelope passes that are only accepted when they do not
// increase the energy (they cannot, up to rounding).
LoopResult descend(const Parameters& params, const Grid& g, std::vector<double> v,
                   const MinimizeOptions& opts, double grad_tol,
                   std::vector<double>* history) {
    const double r = params.r;
    const double floor_ = 1e-9 * r;

    auto eval_at = [&](const std::vector<double>& w) {
        ProfileCurve p(g, w);
        return evaluate(p, params.c).total;
    };
    auto grad_at = [&](const std::vector<double>& w) {
        ProfileCurve p(g, w);
        return gradient(p, params.c);
    };

    LoopResult out;
    double E = eval_at(v);
    std::vector<double> grad = grad_at(v);
    if (history) history->push_back(E);

    std::vector<double> v_prev, g_prev;
    std::vector<double> trial(v.size());
    int it = 0;
    int stalls = 0;
    for (; it < opts.max_iters; ++it) {
        double gsup = sup_norm(grad);
        if (gsup <= grad_tol) {
            out.converged = true;
            break;
        }
        double gnorm2 = dot(grad, grad);
        double alpha;
        if (!v_prev.empty()) {
            // Barzilai-Borwein spectral step
            double sy = 0.0, ss = 0.0;
            for (size_t i = 0; i < v.size(); ++i) {
                double s = v[i] - v_prev[i];
                double y = grad[i] - g_prev[i];
                sy += s * y;
                ss += s * s;
            }
            alpha = (sy > 1e-300) ? ss / sy : r / std::sqrt(gnorm2);
        } else {
            alpha = r / std::sqrt(gnorm2);
        }

        double E_trial = E;
        for (int bt = 0; bt < 80; ++bt) {
            for (size_t i = 0; i < v.size(); ++i)
                trial[i] = std::max(v[i] - alpha * grad[i], floor_);
            trial.front() = r;
            trial.back() = r;
            E_trial = eval_at(trial);
            if (E_trial <= E - 1e-4 * alpha * gnorm2) break;
            alpha *= 0.5;
        }
        if (!(E_trial < E)) {
            // a failed spectral step gets one retry with the plain step;
            // a second consecutive stall means the rounding floor
            if (++stalls >= 2) break;
            v_prev.clear();
            g_prev.clear();
            continue;
        }
        stalls = 0;
        v_prev = v;
        g_prev = grad;
        v = trial;
        E = E_trial;
        grad = grad_at(v);
        if (history) history->push_back(E);

        if ((it + 1) % opts.envelope_every == 0) {
            ProfileCurve env = convex_envelope(ProfileCurve(g, v));
            double E_env = evaluate(env, params.c).total;
            if (E_env <= E) {
                v = env.values();
                E = E_env;
                grad = grad_at(v);
                if (history) history->push_back(E);
            }
        }
    }
    out.values = std::move(v);
    out.energy = E;
    out.grad_sup = sup_norm(grad);
    out.iterations = it;
    return out;
}

}  // namespace

MinimizeResult minimize(const Parameters& params, const MinimizeOptions& opts) {
    if (opts.max_iters < 1) throw std::invalid_argument("minimize: max_iters >= 1");
    if (!(opts.grad_tol >= 0.0)) throw std::invalid_argument("minimize: grad_tol >= 0");
    if (opts.envelope_every < 1) throw std::invalid_argument("minimize: envelope_every >= 1");
    if (opts.init == InitProfile::custom && !opts.custom_init)
        throw std::invalid_argument("minimize: custom init requires custom_init");

    double grad_tol = opts.grad_tol;
    if (grad_tol == 0.0)
        grad_tol = 1e-6 * std::max(1.0, params.c / (params.r * params.r));

    Grid fine(params.h, opts.n_cells);
    std::vector<double> history;

    // grid cascade: coarse solves are cheap and hand the fine grid a start
    // that already resolves the smooth modes
    std::vector<int> levels{opts.n_cells};
    if (opts.coarse_to_fine && opts.init != InitProfile::custom) {
        while (levels.front() % 2 == 0 && levels.front() / 2 >= 50)
            levels.insert(levels.begin(), levels.front() / 2);
    }

    std::vector<double> v;
    int total_iters = 0;
    bool converged = false;
    double grad_sup = 0.0;
    for (size_t li = 0; li < levels.size(); ++li) {
        Grid g(params.h, levels[li]);
        if (li == 0) {
            v = (opts.init == InitProfile::custom)
                    ? opts.custom_init->values()
                    : initial_values(params, g, opts.init);
            if (opts.init == InitProfile::custom &&
                static_cast<int>(v.size()) != g.n_nodes())
                throw std::invalid_argument("minimize: custom_init grid does not match n_cells");
        } else {
            // linear prolongation onto the doubled grid
            std::vector<double> fine_v(g.n_nodes());
            for (size_t i = 0; i + 1 < v.size(); ++i) {
                fine_v[2 * i] = v[i];
                fine_v[2 * i + 1] = 0.5 * (v[i] + v[i + 1]);
            }
            fine_v.back() = v.back();
            v = std::move(fine_v);
        }
        double tol = grad_tol * (static_cast<double>(opts.n_cells) / levels[li]);
        bool finest = (li + 1 == levels.size());
        LoopResult res = descend(params, g, std::move(v), opts, finest ? grad_tol : tol,
                                 finest ? &history : nullptr);
        v = std::move(res.values);
        total_iters += res.iterations;
        if (finest) {
            converged = res.converged;
            grad_sup = res.grad_sup;
        }
    }

    // symmetrize toward the lower-energy half, then one final envelope pass
    ProfileCurve prof(fine, v);
    ProfileCurve left = symmetrize(prof, KeepSide::left);
    ProfileCurve right = symmetrize(prof, KeepSide::right);
    double e_left = evaluate(left, params.c).total;
    double e_right = evaluate(right, params.c).total;
    ProfileCurve sym = (e_left <= e_right) ? std::move(left) : std::move(right);
    if (std::min(e_left, e_right) <= evaluate(prof, params.c).total) prof = std::move(sym);
    prof = convex_envelope(prof);
    history.push_back(evaluate(prof, params.c).total);

    MinimizeResult result(std::move(prof));
    result.energy = evaluate(result.profile, params.c);
    result.iterations = total_iters;
    result.converged = converged;
    result.shape = shape_report(result.profile);
    result.grad_sup = grad_sup;
    result.energy_history = std::move(history);
    return result;
}

std::vector<SweepEntry> sweep_c(const Parameters& base, const std::vector<double>& c_values,
                                const MinimizeOptions& opts) {
    for (size_t i = 0; i + 1 < c_values.size(); ++i)
        if (!(c_values[i] < c_values[i + 1]))
            throw std::invalid_argument("sweep_c: c values must be ascending");
    if (!c_values.empty() && !(c_values.front() >= 0.0))
        throw std::invalid_argument("sweep_c: c values must be nonnegative");

    std::vector<SweepEntry> entries;
    MinimizeOptions run = opts;
    for (double c : c_values) {
        SweepEntry entry;
        entry.c = c;
        try {
            Parameters params(base.h, base.r, c);
            MinimizeResult res = minimize(params, run);
            const ProfileCurve& p = res.profile;
            entry.apex = p.value(p.grid().n_cells / 2);
            double sup = 0.0;
            for (double v : p.values()) sup = std::max(sup, std::abs(v - base.r));
            entry.sup_dist = sup;
            entry.energy = res.energy;
            entry.ok = res.converged;
            // warm start the next c from this solution
            run.init = InitProfile::custom;
            run.custom_init = p;
        } catch (const std::exception&) {
            entry.ok = false;
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

TheoremChecklist verify_theorem_properties(const MinimizeResult& result,
                                           const Parameters& params) {
    const ProfileCurve& p = result.profile;
    const Grid& g = p.grid();
    const int n = g.n_cells;
    TheoremChecklist chk;

    for (int i = 0; i <= n; ++i)
        chk.evenness_sup = std::max(chk.evenness_sup, std::abs(p.value(i) - p.value(n - i)));
    chk.evenness_ok = chk.evenness_sup <= 1e-6;

    chk.min_second_diff = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i)
        chk.min_second_diff =
            std::min(chk.min_second_diff, p.value(i + 1) - 2.0 * p.value(i) + p.value(i - 1));
    chk.convexity_ok = chk.min_second_diff > -1e-10;

    CatenarySolution cat = solve_pi(params.h, params.r);
    chk.barrier_applicable = cat.has_roots();
    if (chk.barrier_applicable) {
        CatenaryProfile rho0 = catenary_profile(cat, Branch::stable);
        double lo = std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (int i = 1; i < n; ++i) {
            lo = std::min(lo, p.value(i) - rho0(g.node(i)));
            hi = std::min(hi, params.r - p.value(i));
        }
        chk.barrier_margin_low = lo;
        chk.barrier_margin_high = hi;
        chk.barrier_ok = lo > 0.0 && hi > 0.0;
    }

    chk.el_res = el_residual(p, params.c);
    double apex = p.value(n / 2);
    for (int i = 1; i < n; ++i) {
        double rp = (p.value(i + 1) - p.value(i - 1)) / (2.0 * g.dx());
        chk.drift = std::max(chk.drift,
                             std::abs(first_integral_residual(p.value(i), rp, params.c, apex)));
    }
    chk.el_ok = chk.el_res <= 1e-3 && chk.drift <= 1e-3 * params.r;
    return chk;
}

}  // namespace nemfilm
