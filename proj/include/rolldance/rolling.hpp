#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rolldance/geom.hpp"

namespace rolldance {

struct SphericalPolygon {
    std::vector<Vec3> vertices;
    bool closed = true;
    double rho = 3.0;

    std::size_t size() const { return vertices.size(); }
};

struct MonodromyReport {
    Quaternion g;
    bool trivial = false;
    bool projectively_trivial = false;
    std::vector<Quaternion> factors;
};

// Lifted rotation of a sphere of radius ratio rho rolled along the minor arc v1 -> v2.
Quaternion edge_monodromy(const Vec3& v1, const Vec3& v2, double rho);

// Throws Degenerate when a vertex is not unit, consecutive vertices are parallel
// or antipodal, or three consecutive vertices lie on a great circle.
void check_spherical_polygon(const SphericalPolygon& poly, double tol = kDefaultTol);

MonodromyReport polygon_monodromy(const SphericalPolygon& poly, std::size_t start_index = 0,
                                  double tol = kDefaultTol);

SphericalPolygon regular_polygon(int n, int w, double phi);

Quaternion closed_form_monodromy(int n, int w, double phi);

double wprime_angle_residual(int n, int w, int wprime, double phi);

std::optional<double> solve_phi(int n, int w, int wprime);

struct AdmissibleTriple {
    int n = 0;
    int w = 0;
    int wprime = 0;
    double phi = 0.0;
    bool minimal = false;
};

std::vector<AdmissibleTriple> enumerate_admissible(int n_max);

// Turning angle in [0, 2pi) of the polygon traced on the moving sphere by the
// contact points, measured about the centre of that polygon.
double traced_turning_angle(int n, int w, double phi);

// cos of half the traced turning angle from spherical trigonometry of the rolled edges.
double traced_half_angle_cos(int n, int w, double phi);

// Residuals (|(rho+1) vdot - omega x v|, |omega . v|) with omega from gdot g^T.
std::pair<double, double> droll_membership(const Vec3& v, const Mat3& g, const Vec3& vdot, const Mat3& gdot,
                                           double rho, double tol = 1e-8);

// Edge factor for classes in S^2/{+-1}; only defined for rho = 3.
Quaternion projective_edge_monodromy(const Vec3& p1, const Vec3& p2, double rho = 3.0,
                                     double tol = kDefaultTol);

}  // namespace rolldance
