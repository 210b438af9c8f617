#pragma once

#include <vector>

#include "nemfilm/profile.hpp"

namespace nemfilm {

// Value of the film energy on a profile: area term int rho*sqrt(1+rho'^2),
// nematic term int rho'^2/(rho*sqrt(1+rho'^2)), total = area + c*nematic.
// All in units of length^2.
struct EnergyBreakdown {
    double area = 0.0;
    double nematic = 0.0;
    double total = 0.0;
    double c = 0.0;
};

// Surface tension gamma and nematic constant kappa; the model couples them
// only through c = kappa/(2*gamma).
struct PhysicalParams {
    PhysicalParams(double gamma, double kappa);
    double gamma = 1.0;
    double kappa = 0.0;
    double c() const { return kappa / (2.0 * gamma); }
};

// Exact integration of both terms over each linear cell: the area term is
// the trapezoid sqrt(1+s^2)*dx*(a+b)/2 (exact for linear rho), the nematic
// term uses the closed form of int dx/rho on a linear segment.
EnergyBreakdown evaluate(const ProfileCurve& p, double c);

// Exact partial derivatives of the discrete total energy with respect to the
// nodal values; endpoint entries are zero (fixed boundary).
std::vector<double> gradient(const ProfileCurve& p, double c);

// Relaxed area functional: int rho*sqrt(1+rho'^2) + r^2 - (rho(-h)^2 +
// rho(h)^2)/2. Requires both endpoint values <= r.
double relaxed_e0(const ProfileCurve& p, double r);

// Director angle alpha sampled on the tensor grid (profile nodes) x
// (n_phi_cells + 1 azimuthal columns); the last column must replicate the
// first (smooth director around the axis).
class DirectorField {
  public:
    DirectorField(int n_x_nodes, int n_phi_cells, std::vector<double> samples);

    template <typename F>
    static DirectorField from_function(const Grid& g, F&& alpha, int n_phi_cells = 128) {
        std::vector<double> a(static_cast<size_t>(g.n_nodes()) * (n_phi_cells + 1));
        for (int i = 0; i < g.n_nodes(); ++i)
            for (int j = 0; j <= n_phi_cells; ++j)
                a[static_cast<size_t>(i) * (n_phi_cells + 1) + j] =
                    alpha(g.node(i), phi_angle(j, n_phi_cells));
        return DirectorField(g.n_nodes(), n_phi_cells, std::move(a));
    }

    static double phi_angle(int j, int n_phi_cells);

    int n_x_nodes() const { return n_x_; }
    int n_phi_cells() const { return n_phi_; }
    double at(int i, int j) const { return samples_[static_cast<size_t>(i) * (n_phi_ + 1) + j]; }

    // central difference in x (one-sided at the ends)
    double alpha_x(int i, int j, double dx) const;
    // central difference in phi with periodic wrap
    double alpha_phi(int i, int j) const;

  private:
    int n_x_ = 0;
    int n_phi_ = 0;
    std::vector<double> samples_;
};

// The four integrals of the full director energy over the revolution
// surface; i1 is computed exactly from the per-cell energy (it has no phi
// dependence), i2..i4 by tensor-product trapezoid quadrature.
struct DirectorEnergy {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
    double i4 = 0.0;
    double total = 0.0;
};
DirectorEnergy director_energy(const ProfileCurve& p, const DirectorField& field,
                               const PhysicalParams& phys);

}  // namespace nemfilm
