#pragma once

#include <vector>

#include "nemfilm/catenary.hpp"

namespace nemfilm {

// Uniform node layout on [-h, h]. n_cells must be even and >= 2 so that
// x = 0 is a node.
struct Grid {
    Grid(double h, int n_cells);

    double h = 1.0;
    int n_cells = 2;

    int n_nodes() const { return n_cells + 1; }
    double dx() const { return 2.0 * h / n_cells; }
    double node(int i) const { return -h + i * dx(); }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.h == b.h && a.n_cells == b.n_cells;
    }
};

// Strictly positive nodal values on a Grid, interpreted piecewise-linearly.
class ProfileCurve {
  public:
    ProfileCurve(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value(int i) const { return values_[i]; }

    // slope of cell i = (v[i+1] - v[i])/dx, i in [0, n_cells)
    double cell_slope(int i) const;
    // nodal slope: average of adjacent cell slopes, one-sided at the ends
    double node_slope(int i) const;

    // boundary condition rho(+-h) = r within 1e-12
    bool admissible(double r) const;

  private:
    Grid grid_;
    std::vector<double> values_;
};

// Factories.
ProfileCurve constant_profile(const Grid& g, double r);
ProfileCurve sample_catenary(const Grid& g, const CatenaryProfile& cat);
template <typename F>
ProfileCurve sample_function(const Grid& g, F&& f) {
    std::vector<double> v(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) v[i] = f(g.node(i));
    return ProfileCurve(g, std::move(v));
}

// Greatest convex function below the piecewise-linear interpolant, evaluated
// at the nodes. Output is convex, <= p nodewise, equal to p at the endpoints,
// and a bitwise fixed point of this operation.
ProfileCurve convex_envelope(const ProfileCurve& p);

// Nodewise max(p, cat). cat must match p at the endpoints within 1e-9
// relative; the endpoint values of p are kept exactly.
ProfileCurve max_with(const ProfileCurve& p, const CatenaryProfile& cat);

enum class KeepSide { left, right };

// Even reflection of the chosen half across x = 0 (exact nodal copy).
ProfileCurve symmetrize(const ProfileCurve& p, KeepSide side);

struct ShapeReport {
    bool is_even = false;    // sup |v(x) - v(-x)| <= 1e-9
    bool is_convex = false;  // cell slopes nondecreasing within -1e-10
    double min_value = 0.0;
    double max_slope = 0.0;  // max |cell slope|
};
ShapeReport shape_report(const ProfileCurve& p);

}  // namespace nemfilm
