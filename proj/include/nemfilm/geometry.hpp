#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "nemfilm/profile.hpp"

namespace nemfilm {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Tensor-product mesh of the revolution surface Z(phi, x) =
// (rho cos phi, rho sin phi, x). Vertices are axial-major
// (index = i_axial*n_azimuthal + j); the azimuthal direction stores
// n_azimuthal distinct angles and the triangles wrap modulo n_azimuthal.
struct RevolutionMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    int n_azimuthal = 0;
    int n_axial = 0;
};

// Builds the mesh from the profile's nodes; n_azimuthal >= 8.
RevolutionMesh build_mesh(const ProfileCurve& p, int n_azimuthal);

struct MeshArea {
    double area = 0.0;
    int degenerate_faces = 0;  // zero-area triangles, excluded from the sum
};
MeshArea mesh_area(const RevolutionMesh& m);

// Gaussian and mean curvature along the profile, with the outward normal of
// the revolution surface:
//   K = -rho''/(rho*(1+rho'^2)^2)
//   H = (rho*rho'' - (1+rho'^2))/(2*rho*(1+rho'^2)^{3/2})
// (so a cylinder of radius r has K = 0, H = -1/(2r)). rho'' comes from
// central second differences, so samples cover the interior nodes only.
// Requires at least 5 nodes.
struct CurvatureSample {
    double x = 0.0;
    double gauss = 0.0;  // 1/length^2
    double mean = 0.0;   // 1/length
};
std::vector<CurvatureSample> curvatures(const ProfileCurve& p);

// Wavefront-style ASCII: `v x y z` then `f i j k` (1-based).
void write_obj(std::ostream& os, const RevolutionMesh& m);

}  // namespace nemfilm
