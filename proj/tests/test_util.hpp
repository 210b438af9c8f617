#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nemfilm/profile.hpp"

namespace testutil {

// Random admissible profile: endpoints exactly r, positive interior values.
inline nemfilm::ProfileCurve random_admissible(const nemfilm::Grid& g, double r,
                                               std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.3 * r, 1.7 * r);
    std::vector<double> v(g.n_nodes());
    for (double& x : v) x = u(rng);
    v.front() = r;
    v.back() = r;
    return nemfilm::ProfileCurve(g, std::move(v));
}

// Random piecewise-affine admissible profile: a few random breakpoints with
// linear interpolation between them.
inline nemfilm::ProfileCurve random_piecewise_affine(const nemfilm::Grid& g, double r,
                                                     std::mt19937& rng) {
    std::uniform_int_distribution<int> nb(2, 8);
    std::uniform_real_distribution<double> uy(0.2 * r, 1.8 * r);
    int kinks = nb(rng);
    std::vector<int> idx{0, g.n_cells};
    std::uniform_int_distribution<int> ui(1, g.n_cells - 1);
    for (int k = 0; k < kinks; ++k) idx.push_back(ui(rng));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<double> knots(idx.size());
    for (size_t k = 0; k < idx.size(); ++k) knots[k] = uy(rng);
    knots.front() = r;
    knots.back() = r;
    std::vector<double> v(g.n_nodes());
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
        for (int i = idx[k]; i <= idx[k + 1]; ++i) {
            double t = static_cast<double>(i - idx[k]) / (idx[k + 1] - idx[k]);
            v[i] = knots[k] + t * (knots[k + 1] - knots[k]);
        }
    }
    return nemfilm::ProfileCurve(g, std::move(v));
}

// Random convex admissible profile: integrate nonnegative random curvature
// twice, correct affinely to the boundary values, then pull toward the chord
// until everything stays well positive.
inline nemfilm::ProfileCurve random_convex_admissible(const nemfilm::Grid& g, double r,
                                                      std::mt19937& rng) {
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    std::uniform_real_distribution<double> us(-1.0, 1.0);
    const int n = g.n_cells;
    std::vector<double> slope(n);
    slope[0] = us(rng);
    for (int i = 1; i < n; ++i) slope[i] = slope[i - 1] + uw(rng);
    std::vector<double> v(n + 1, 0.0);
    for (int i = 0; i < n; ++i) v[i + 1] = v[i] + slope[i] * g.dx();
    // affine correction to v(+-h) = r
    double a = v.front(), b = v.back();
    for (int i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) / n;
        v[i] += (r - a) + t * ((r - b) - (r - a));
    }
    double lo = *std::min_element(v.begin(), v.end());
    if (lo < 0.1 * r) {
        double t = 0.8 * (r - 0.1 * r) / (r - lo);  // shrink toward the chord
        for (double& x : v) x = r + t * (x - r);
    }
    v.front() = r;
    v.back() = r;
    return nemfilm::ProfileCurve(g, std::move(v));
}

// O(n^2) envelope oracle: at each node the lowest value of any chord of the
// nodal point set that spans it.
inline std::vector<double> envelope_oracle(const nemfilm::Grid& g,
                                           const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> env(v);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            for (int i = j + 1; i < k; ++i) {
                double t = static_cast<double>(i - j) / (k - j);
                env[i] = std::min(env[i], v[j] + t * (v[k] - v[j]));
            }
        }
    }
    return env;
}

}  // namespace testutil
