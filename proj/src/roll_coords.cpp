#include "rolldance/roll_coords.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rolldance/errors.hpp"

namespace rolldance {

namespace {

Mat3 rot_x(double a) { return Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix(); }
Mat3 rot_y(double a) { return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(); }
Mat3 rot_z(double a) { return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(); }

// Columns map (alpha', beta', gamma') to the spatial angular velocity.
Mat3 spatial_rate_matrix(double beta, double gamma) {
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    Mat3 m;
    m << cb * cg, -sg, 0.0,
         cb * sg, cg, 0.0,
         -sb, 0.0, 1.0;
    return m;
}

void spherical_rates(const Vec3& v, const Vec3& vdot, double& theta, double& phi, double& dtheta, double& dphi) {
    theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
    phi = std::atan2(v.y(), v.x());
    const double st = std::sin(theta), ct = std::cos(theta);
    if (st < 1e-6) throw Error(ErrorKind::ChartSingularity, "contact point at a pole of the chart");
    const Vec3 d_theta(ct * std::cos(phi), ct * std::sin(phi), -st);
    const Vec3 d_phi(-st * std::sin(phi), st * std::cos(phi), 0.0);
    dtheta = vdot.dot(d_theta);
    dphi = vdot.dot(d_phi) / (st * st);
}

}  // namespace

Mat3 euler_to_rotation(double alpha, double beta, double gamma) { return rot_z(gamma) * rot_y(beta) * rot_x(alpha); }

Vec3 angular_velocity(const EulerState& s, const EulerRates& r) {
    const double sb = std::sin(s.beta), cb = std::cos(s.beta);
    const double sg = std::sin(s.gamma), cg = std::cos(s.gamma);
    return {r.dalpha * sb * sg + r.dbeta * cg, r.dalpha * sb * cg - r.dbeta * sg, r.dalpha * cb + r.dgamma};
}

Vec3 spatial_angular_velocity(const EulerState& s, const EulerRates& r) {
    return spatial_rate_matrix(s.beta, s.gamma) * Vec3(r.dalpha, r.dbeta, r.dgamma);
}

Vec3 contact_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<double, 4> droll_constraint_residuals(const EulerState& s, const EulerRates& r, double rho) {
    const double st = std::sin(s.theta), ct = std::cos(s.theta);
    if (std::abs(st) < 1e-6) throw Error(ErrorKind::ChartSingularity, "sin(theta) vanishes");
    const double sp = std::sin(s.phi), cp = std::cos(s.phi);
    const Vec3 v = contact_point(s.theta, s.phi);
    const Vec3 vdot = r.dtheta * Vec3(ct * cp, ct * sp, -st) + r.dphi * Vec3(-st * sp, st * cp, 0.0);
    const Vec3 omega = spatial_angular_velocity(s, r);
    const Vec3 slip = (1.0 + rho) * vdot - omega.cross(v);
    return {slip.x(), slip.y(), slip.z(), omega.dot(v)};
}

Vec3 GreatCircleArc::point(double t) const { return std::cos(t) * start + std::sin(t) * normal.cross(start); }

Vec3 GreatCircleArc::tangent(double t) const { return -std::sin(t) * start + std::cos(t) * normal.cross(start); }

GreatCircleArc arc_between(const Vec3& v1, const Vec3& v2) {
    const Vec3 c = v1.cross(v2);
    if (c.norm() <= 1e-12) throw Error(ErrorKind::DegenerateEdge, "arc endpoints are parallel or antipodal");
    return {v1.normalized(), c.normalized(), std::atan2(c.norm(), v1.dot(v2))};
}

RollResult integrate_roll(const GreatCircleArc& arc, double rho, int steps) {
    if (steps <= 0) throw Error(ErrorKind::InvalidArgument, "steps must be positive");
    if (std::abs(arc.start.norm() - 1.0) > 1e-9 || std::abs(arc.normal.norm() - 1.0) > 1e-9 ||
        std::abs(arc.start.dot(arc.normal)) > 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "arc needs a unit start point orthogonal to a unit normal");
    }
    // Rotate the arc into a plane tilted 30 degrees from the vertical so that the
    // contact point stays in 60..120 degrees colatitude and |beta| stays below 60 degrees.
    const double tilt = std::numbers::pi / 6;
    const Vec3 axis(std::sin(tilt), 0.0, std::cos(tilt));
    const Eigen::Quaterniond e0 = Eigen::Quaterniond::FromTwoVectors(arc.normal, axis);
    const Mat3 R0 = e0.toRotationMatrix();
    const Quaternion q0(e0.w(), e0.x(), e0.y(), e0.z());
    const GreatCircleArc local{R0 * arc.start, axis, arc.length};

    auto rates = [&](double t, const Vec3& y) -> Vec3 {
        const Vec3 v = local.point(t);
        const Vec3 vdot = local.tangent(t);
        const Mat3 M = spatial_rate_matrix(y(1), y(2));
        int drop = 0;
        v.cwiseAbs().maxCoeff(&drop);
        Mat3 S;
        Vec3 rhs;
        S.row(0) = v.transpose() * M;
        rhs(0) = 0.0;
        const Mat3 slip = -cross_matrix(v) * M;
        int row = 1;
        for (int k = 0; k < 3; ++k) {
            if (k == drop) continue;
            S.row(row) = slip.row(k);
            rhs(row) = (1.0 + rho) * vdot(k);
            ++row;
        }
        if (std::abs(S.determinant()) < 1e-12) throw Error(ErrorKind::SolveFailure, "singular rate system");
        return S.partialPivLu().solve(rhs);
    };

    RollResult out;
    const double h = arc.length / steps;
    Vec3 y = Vec3::Zero();
    Quaternion lift;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const Vec3 k1 = rates(t, y);
        const Vec3 k2 = rates(t + 0.5 * h, y + 0.5 * h * k1);
        const Vec3 k3 = rates(t + 0.5 * h, y + 0.5 * h * k2);
        const Vec3 k4 = rates(t + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        Quaternion q = matrix_to_quat(euler_to_rotation(y(0), y(1), y(2)));
        if (q.dot(lift) < 0.0) q = -q;
        lift = q;

        const double tn = t + h;
        const Vec3 r = rates(tn, y);
        EulerState s{0.0, 0.0, y(0), y(1), y(2)};
        EulerRates dr{0.0, 0.0, r(0), r(1), r(2)};
        spherical_rates(local.point(tn), local.tangent(tn), s.theta, s.phi, dr.dtheta, dr.dphi);
        for (double c : droll_constraint_residuals(s, dr, rho)) {
            out.max_constraint_residual = std::max(out.max_constraint_residual, std::abs(c));
        }
    }
    out.rotation = R0.transpose() * euler_to_rotation(y(0), y(1), y(2)) * R0;
    out.lift = q0.conj() * lift * q0;
    return out;
}

}  // namespace rolldance
