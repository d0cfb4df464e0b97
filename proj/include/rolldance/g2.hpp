#pragma once

#include <array>

#include "rolldance/bridge.hpp"
#include "rolldance/dancing.hpp"
#include "rolldance/octonion.hpp"

namespace rolldance {

// Parameters (T, Q, p) of a derivation of the split octonions; T traceless.
struct G2Param {
    Mat3 T = Mat3::Zero();
    Vec3 Q = Vec3::Zero();
    Covec3 p = Covec3::Zero();

    G2Param operator+(const G2Param& o) const { return {T + o.T, Q + o.Q, p + o.p}; }
    G2Param operator-(const G2Param& o) const { return {T - o.T, Q - o.Q, p - o.p}; }
    G2Param operator*(double k) const { return {T * k, Q * k, p * k}; }
    double norm() const { return std::sqrt(T.squaredNorm() + Q.squaredNorm() + p.squaredNorm()); }
};

// The 14 coordinate parameters: 8 traceless matrices, then e_k for Q, then e^k for p.
std::array<G2Param, 14> g2_basis();

ImOctonion rho_apply(const G2Param& g, const ImOctonion& z);
// The derivation on all of O, zero on the real part.
Octonion rho_apply(const G2Param& g, const Octonion& z);
Eigen::Matrix<double, 7, 7> rho_matrix(const G2Param& g);

G2Param g2_bracket(const G2Param& g1, const G2Param& g2);

// Induced vector field on the quadric bA = 1 (the chart x = 1).
DanTangent qdan_field(const G2Param& g, const QDanPoint& p);

// Vector field on S^2 x S^3 with q = s + w: components along v, w and s.
struct RollField {
    Vec3 f = Vec3::Zero();
    Vec3 g = Vec3::Zero();
    double h = 0.0;
};

// Closed form for symmetric traceless T with Q = p = 0.
RollField qroll_field(const Mat3& T, const RollState& state, double tol = kDefaultTol);

// Any parameter: pull back the component of rho(g) transverse to the Euler field.
RollField qroll_field_numeric(const G2Param& g, const RollState& state);

// Pair (q1, q2) of unit quaternions acting by (v, q) -> (q1 v q1^-1, q1 q q2^-1).
struct KElement {
    Quaternion q1;
    Quaternion q2;
};

RollState k_action(const KElement& k, const RollState& state);
// Induced linear action on Im(O), intertwined with phi.
ImOctonion k_linear(const KElement& k, const ImOctonion& z);

G2Param so4_embed(const Vec3& v1, const Vec3& v2);

bool descends_to_base(const G2Param& g, double tol = kDefaultTol);

// (x, A; b, -x) -> (-x, b; A, x).
ImOctonion tau_involution(const ImOctonion& z);

}  // namespace rolldance
