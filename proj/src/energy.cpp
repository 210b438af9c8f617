#include "nemfilm/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nemfilm/catenary.hpp"

namespace nemfilm {

namespace {

// int dx/rho over one cell with endpoint values a, b (rho linear): equals
// dx*log(b/a)/(b-a); log1p keeps it stable as b -> a.
double inv_rho_integral(double a, double b, double dx) {
    double d = b - a;
    if (d == 0.0) return dx / a;
    return dx * std::log1p(d / a) / d;
}

// d/da of the above. Direct form dx*(log(b/a) - (b-a)/a)/(b-a)^2 cancels
// catastrophically for b near a; switch to the series there.
double inv_rho_integral_da(double a, double b, double dx) {
    double t = (b - a) / a;
    if (std::abs(t) < 1e-4)
        return dx * (-0.5 + t / 3.0 - t * t / 4.0 + t * t * t / 5.0) / (a * a);
    double d = b - a;
    return dx * (std::log1p(t) - t) / (d * d);
}

double inv_rho_integral_db(double a, double b, double dx) {
    return inv_rho_integral_da(b, a, dx);
}

void check_positive(const ProfileCurve& p) {
    for (double v : p.values())
        if (!(v > 0.0)) throw std::domain_error("energy: profile values must be > 0");
}

}  // namespace

PhysicalParams::PhysicalParams(double gamma_, double kappa_) : gamma(gamma_), kappa(kappa_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("PhysicalParams: requires gamma > 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("PhysicalParams: requires kappa >= 0");
}

EnergyBreakdown evaluate(const ProfileCurve& p, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("evaluate: requires c >= 0");
    check_positive(p);
    const Grid& g = p.grid();
    const double dx = g.dx();
    EnergyBreakdown e;
    e.c = c;
    for (int i = 0; i < g.n_cells; ++i) {
        double a = p.value(i);
        double b = p.value(i + 1);
        double s = (b - a) / dx;
        double q = std::sqrt(1.0 + s * s);
        e.area += q * dx * 0.5 * (a + b);
        if (s != 0.0) e.nematic += (s * s / q) * inv_rho_integral(a, b, dx);
    }
    e.total = e.area + c * e.nematic;
    return e;
}

std::vector<double> gradient(const ProfileCurve& p, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("gradient: requires c >= 0");
    check_positive(p);
    const Grid& g = p.grid();
    const double dx = g.dx();
    std::vector<double> grad(g.n_nodes(), 0.0);
    for (int i = 0; i < g.n_cells; ++i) {
        double a = p.value(i);
        double b = p.value(i + 1);
        double s = (b - a) / dx;
        double q = std::sqrt(1.0 + s * s);
        // area term: sqrt(1+s^2)*dx*(a+b)/2
        grad[i] += q * dx * 0.5 - (s / q) * 0.5 * (a + b);
        grad[i + 1] += q * dx * 0.5 + (s / q) * 0.5 * (a + b);
        if (c > 0.0) {
            double L = inv_rho_integral(a, b, dx);
            double fs = slope_gain(s);
            double fps = slope_gain_deriv(s);
            grad[i] += c * (-fps / dx * L + fs * inv_rho_integral_da(a, b, dx));
            grad[i + 1] += c * (fps / dx * L + fs * inv_rho_integral_db(a, b, dx));
        }
    }
    grad.front() = 0.0;
    grad.back() = 0.0;
    return grad;
}

double relaxed_e0(const ProfileCurve& p, double r) {
    double va = p.values().front();
    double vb = p.values().back();
    if (va > r || vb > r)
        throw std::domain_error("relaxed_e0: endpoint values must not exceed r");
    return evaluate(p, 0.0).area + r * r - 0.5 * (va * va + vb * vb);
}

double DirectorField::phi_angle(int j, int n_phi_cells) {
    return 2.0 * std::numbers::pi * j / n_phi_cells;
}

DirectorField::DirectorField(int n_x_nodes, int n_phi_cells, std::vector<double> samples)
    : n_x_(n_x_nodes), n_phi_(n_phi_cells), samples_(std::move(samples)) {
    if (n_x_ < 2 || n_phi_ < 4)
        throw std::invalid_argument("DirectorField: grid too small");
    if (samples_.size() != static_cast<size_t>(n_x_) * (n_phi_ + 1))
        throw std::invalid_argument("DirectorField: sample count does not match grid");
    for (int i = 0; i < n_x_; ++i)
        if (std::abs(at(i, 0) - at(i, n_phi_)) > 1e-12)
            throw std::invalid_argument("DirectorField: field is not periodic in phi");
}

double DirectorField::alpha_x(int i, int j, double dx) const {
    if (i == 0) return (at(1, j) - at(0, j)) / dx;
    if (i == n_x_ - 1) return (at(i, j) - at(i - 1, j)) / dx;
    return (at(i + 1, j) - at(i - 1, j)) / (2.0 * dx);
}

double DirectorField::alpha_phi(int i, int j) const {
    double dphi = 2.0 * std::numbers::pi / n_phi_;
    int jm = (j == 0) ? n_phi_ - 1 : j - 1;
    int jp = (j + 1 > n_phi_) ? 1 : j + 1;
    return (at(i, jp) - at(i, jm)) / (2.0 * dphi);
}

DirectorEnergy director_energy(const ProfileCurve& p, const DirectorField& field,
                               const PhysicalParams& phys) {
    const Grid& g = p.grid();
    if (field.n_x_nodes() != g.n_nodes())
        throw std::invalid_argument("director_energy: field axial grid does not match profile");
    const double dx = g.dx();
    const int nphi = field.n_phi_cells();
    const double dphi = 2.0 * std::numbers::pi / nphi;
    const double two_pi = 2.0 * std::numbers::pi;

    EnergyBreakdown e = evaluate(p, phys.c());
    DirectorEnergy d;
    d.i1 = two_pi * phys.gamma * e.total;

    for (int i = 0; i < g.n_nodes(); ++i) {
        double wx = (i == 0 || i == g.n_cells) ? 0.5 * dx : dx;
        double rho = p.value(i);
        double rp = p.node_slope(i);
        double q = std::sqrt(1.0 + rp * rp);
        double s2 = 0.0, s3 = 0.0, s4 = 0.0;
        // periodic trapezoid over phi: the closure column carries no weight
        for (int j = 0; j < nphi; ++j) {
            double ax = field.alpha_x(i, j, dx);
            double ap = field.alpha_phi(i, j);
            s2 += ax * ax;
            s3 += ap * ap;
            s4 += ap;
        }
        d.i2 += wx * dphi * (rho / q) * s2;
        d.i3 += wx * dphi * (q / rho) * s3;
        d.i4 += wx * dphi * (2.0 * rp / rho) * s4;
    }
    double half_kappa = 0.5 * phys.kappa;
    d.i2 *= half_kappa;
    d.i3 *= half_kappa;
    d.i4 *= -half_kappa;
    d.total = d.i1 + d.i2 + d.i3 + d.i4;
    return d;
}

}  // namespace nemfilm
