#include "nemfilm/geometry.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "nemfilm/io.hpp"

namespace nemfilm {

RevolutionMesh build_mesh(const ProfileCurve& p, int n_azimuthal) {
    if (n_azimuthal < 8)
        throw std::invalid_argument("build_mesh: n_azimuthal must be at least 8");
    const Grid& g = p.grid();
    RevolutionMesh m;
    m.n_azimuthal = n_azimuthal;
    m.n_axial = g.n_nodes();
    m.vertices.reserve(static_cast<size_t>(m.n_axial) * n_azimuthal);
    for (int i = 0; i < m.n_axial; ++i) {
        double x = g.node(i);
        double rho = p.value(i);
        for (int j = 0; j < n_azimuthal; ++j) {
            double phi = 2.0 * std::numbers::pi * j / n_azimuthal;
            m.vertices.push_back({rho * std::cos(phi), rho * std::sin(phi), x});
        }
    }
    m.faces.reserve(static_cast<size_t>(g.n_cells) * n_azimuthal * 2);
    for (int i = 0; i < g.n_cells; ++i) {
        for (int j = 0; j < n_azimuthal; ++j) {
            int jn = (j + 1) % n_azimuthal;
            int a = i * n_azimuthal + j;
            int b = i * n_azimuthal + jn;
            int c = (i + 1) * n_azimuthal + jn;
            int d = (i + 1) * n_azimuthal + j;
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    }
    return m;
}

MeshArea mesh_area(const RevolutionMesh& m) {
    MeshArea out;
    for (const auto& f : m.faces) {
        const Vec3& a = m.vertices[f[0]];
        const Vec3& b = m.vertices[f[1]];
        const Vec3& c = m.vertices[f[2]];
        double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
        double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
        double cx = uy * vz - uz * vy;
        double cy = uz * vx - ux * vz;
        double cz = ux * vy - uy * vx;
        double area = 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
        if (area == 0.0)
            ++out.degenerate_faces;
        else
            out.area += area;
    }
    return out;
}

std::vector<CurvatureSample> curvatures(const ProfileCurve& p) {
    const Grid& g = p.grid();
    if (g.n_nodes() < 5) throw std::invalid_argument("curvatures: needs at least 5 nodes");
    const double dx = g.dx();
    std::vector<CurvatureSample> out;
    out.reserve(g.n_cells - 1);
    for (int i = 1; i < g.n_cells; ++i) {
        double rho = p.value(i);
        double rp = (p.value(i + 1) - p.value(i - 1)) / (2.0 * dx);
        double rpp = (p.value(i + 1) - 2.0 * p.value(i) + p.value(i - 1)) / (dx * dx);
        double q = 1.0 + rp * rp;
        CurvatureSample s;
        s.x = g.node(i);
        s.gauss = -rpp / (rho * q * q);
        s.mean = (rho * rpp - q) / (2.0 * rho * q * std::sqrt(q));
        out.push_back(s);
    }
    return out;
}

void write_obj(std::ostream& os, const RevolutionMesh& m) {
    for (const Vec3& v : m.vertices)
        os << "v " << format_sig(v.x) << ' ' << format_sig(v.y) << ' ' << format_sig(v.z) << '\n';
    for (const auto& f : m.faces)
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace nemfilm
