#pragma once

#include <array>

#include "rolldance/geom.hpp"

namespace rolldance {

// Contact point (theta, phi) in spherical coordinates and Euler angles (alpha, beta, gamma).
struct EulerState {
    double phi = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct EulerRates {
    double dphi = 0.0;
    double dtheta = 0.0;
    double dalpha = 0.0;
    double dbeta = 0.0;
    double dgamma = 0.0;
};

// Rz(gamma) Ry(beta) Rx(alpha).
Mat3 euler_to_rotation(double alpha, double beta, double gamma);

// The z-x-z body-frame angular velocity formula of the coordinate model.
Vec3 angular_velocity(const EulerState& state, const EulerRates& rates);

// Spatial angular velocity of t -> euler_to_rotation(alpha(t), beta(t), gamma(t)).
Vec3 spatial_angular_velocity(const EulerState& state, const EulerRates& rates);

Vec3 contact_point(double theta, double phi);

// Components of (1 + rho) vdot - omega x v, then omega . v, with the spatial omega.
std::array<double, 4> droll_constraint_residuals(const EulerState& state, const EulerRates& rates, double rho);

struct GreatCircleArc {
    Vec3 start = Vec3::UnitX();
    Vec3 normal = Vec3::UnitZ();  // start, normal x start span the plane of the arc
    double length = 0.0;

    Vec3 point(double t) const;
    Vec3 tangent(double t) const;
};

GreatCircleArc arc_between(const Vec3& v1, const Vec3& v2);

struct RollResult {
    Mat3 rotation = Mat3::Identity();
    Quaternion lift;
    double max_constraint_residual = 0.0;
};

// Rolls the sphere along the arc from the identity orientation with fixed-step RK4 in the chart.
RollResult integrate_roll(const GreatCircleArc& arc, double rho, int steps);

}  // namespace rolldance
