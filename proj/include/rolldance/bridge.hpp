#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rolldance/dancing.hpp"
#include "rolldance/octonion.hpp"
#include "rolldance/rolling.hpp"

namespace rolldance {

inline constexpr double kGenericMargin = 1e-8;

struct RollState {
    Vec3 v = Vec3::UnitX();
    Quaternion q;
};

// (1, A; b, -1).
ImOctonion iota(const QDanPoint& p);

// Chart inverse on the projectivized cone; empty on the section x = 0.
std::optional<QDanPoint> iota_inv(const ImOctonion& z, double tol = kDefaultTol);

// Representative (Re(vq), v + Im(vq); v - Im(vq), -Re(vq)) of the image ray.
ImOctonion phi(const Vec3& v, const Quaternion& q);

RollState phi_inv(const ImOctonion& z, double tol = kDefaultTol);

// Angle between two rays, in [0, pi].
double ray_angle(const ImOctonion& a, const ImOctonion& b);

bool antipode_equivariance_check(const Vec3& v, const Quaternion& q, double tol = 1e-12);

// Lifted edge factors mu_i for consecutive classes of a closed polygon.
std::vector<Quaternion> class_edge_factors(const std::vector<Vec3>& classes);

DancingPair pipeline_forward(const std::vector<Vec3>& classes, const Quaternion& q, double tol = kDefaultTol);

struct InverseResult {
    std::vector<Vec3> classes;
    Quaternion q;
};

InverseResult pipeline_inverse(const DancingPair& pair, double tol = 1e-8);

}  // namespace rolldance
