#include "nemfilm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nemfilm {

Grid::Grid(double h_, int n_cells_) : h(h_), n_cells(n_cells_) {
    if (!(h > 0.0)) throw std::invalid_argument("Grid: requires h > 0");
    if (n_cells < 2 || n_cells % 2 != 0)
        throw std::invalid_argument("Grid: n_cells must be even and >= 2");
}

ProfileCurve::ProfileCurve(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n_nodes())
        throw std::invalid_argument("ProfileCurve: value count does not match grid");
    for (double v : values_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("ProfileCurve: values must be finite and > 0");
}

double ProfileCurve::cell_slope(int i) const {
    return (values_[i + 1] - values_[i]) / grid_.dx();
}

double ProfileCurve::node_slope(int i) const {
    if (i == 0) return cell_slope(0);
    if (i == grid_.n_cells) return cell_slope(grid_.n_cells - 1);
    return 0.5 * (cell_slope(i - 1) + cell_slope(i));
}

bool ProfileCurve::admissible(double r) const {
    return std::abs(values_.front() - r) <= 1e-12 && std::abs(values_.back() - r) <= 1e-12;
}

ProfileCurve constant_profile(const Grid& g, double r) {
    return ProfileCurve(g, std::vector<double>(g.n_nodes(), r));
}

ProfileCurve sample_catenary(const Grid& g, const CatenaryProfile& cat) {
    return sample_function(g, [&](double x) { return cat(x); });
}

namespace {

// One lower-hull pass (monotone chain over the nodal points; the uniform
// grid lets integer indices stand in for x), with nodal values clamped to
// the input so the result is <= v everywhere.
std::vector<double> lower_hull_pass(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<int> hull;
    hull.reserve(n);
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            int i1 = hull[hull.size() - 2];
            int i2 = hull[hull.size() - 1];
            // keep i2 only if it lies strictly below the chord i1 -> i
            double cross = static_cast<double>(i2 - i1) * (v[i] - v[i1]) -
                           (v[i2] - v[i1]) * static_cast<double>(i - i1);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<double> out(v);
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        int a = hull[k];
        int b = hull[k + 1];
        for (int i = a + 1; i < b; ++i) {
            double t = static_cast<double>(i - a) / static_cast<double>(b - a);
            out[i] = std::min(v[i], v[a] + t * (v[b] - v[a]));
        }
    }
    return out;
}

}  // namespace

ProfileCurve convex_envelope(const ProfileCurve& p) {
    // Iterate the hull pass to a bitwise fixed point: interpolated values are
    // rounded, so a single pass need not be idempotent. Values only decrease,
    // hence the loop terminates.
    std::vector<double> cur = p.values();
    for (int pass = 0; pass < 64; ++pass) {
        std::vector<double> next = lower_hull_pass(cur);
        if (next == cur) break;
        cur = std::move(next);
    }
    return ProfileCurve(p.grid(), std::move(cur));
}

ProfileCurve max_with(const ProfileCurve& p, const CatenaryProfile& cat) {
    const Grid& g = p.grid();
    double r_lo = p.values().front();
    double r_hi = p.values().back();
    if (std::abs(cat(-g.h) - r_lo) > 1e-9 * r_lo || std::abs(cat(g.h) - r_hi) > 1e-9 * r_hi)
        throw std::invalid_argument("max_with: catenary does not match the profile endpoints");
    std::vector<double> v = p.values();
    for (int i = 1; i < g.n_cells; ++i) v[i] = std::max(v[i], cat(g.node(i)));
    return ProfileCurve(g, std::move(v));
}

ProfileCurve symmetrize(const ProfileCurve& p, KeepSide side) {
    const int n = p.grid().n_cells;
    std::vector<double> v(p.grid().n_nodes());
    for (int i = 0; i <= n; ++i) {
        int src = (side == KeepSide::left) ? std::min(i, n - i) : std::max(i, n - i);
        v[i] = p.value(src);
    }
    return ProfileCurve(p.grid(), std::move(v));
}

ShapeReport shape_report(const ProfileCurve& p) {
    const int n = p.grid().n_cells;
    ShapeReport rep;
    double even_sup = 0.0;
    for (int i = 0; i <= n; ++i)
        even_sup = std::max(even_sup, std::abs(p.value(i) - p.value(n - i)));
    rep.is_even = even_sup <= 1e-9;

    rep.is_convex = true;
    for (int i = 0; i + 1 < n; ++i)
        if (p.cell_slope(i + 1) - p.cell_slope(i) < -1e-10) rep.is_convex = false;

    rep.min_value = *std::min_element(p.values().begin(), p.values().end());
    rep.max_slope = 0.0;
    for (int i = 0; i < n; ++i) rep.max_slope = std::max(rep.max_slope, std::abs(p.cell_slope(i)));
    return rep;
}

}  // namespace nemfilm
