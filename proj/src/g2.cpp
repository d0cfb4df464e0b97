#include "rolldance/g2.hpp"

#include <cmath>

#include "rolldance/errors.hpp"

namespace rolldance {

std::array<G2Param, 14> g2_basis() {
    std::array<G2Param, 14> basis{};
    int k = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            basis[k++].T(i, j) = 1.0;
        }
    }
    basis[k].T(0, 0) = 1.0;
    basis[k++].T(1, 1) = -1.0;
    basis[k].T(1, 1) = 1.0;
    basis[k++].T(2, 2) = -1.0;
    for (int i = 0; i < 3; ++i) basis[k++].Q(i) = 1.0;
    for (int i = 0; i < 3; ++i) basis[k++].p(i) = 1.0;
    return basis;
}

ImOctonion rho_apply(const G2Param& g, const ImOctonion& z) {
    ImOctonion r;
    r.x = g.p.dot(z.A.transpose()) + z.b.dot(g.Q.transpose());
    r.A = g.T * z.A - covec_cross(g.p, z.b) + 2.0 * g.Q * z.x;
    r.b = vec_cross(g.Q, z.A) - z.b * g.T + 2.0 * g.p * z.x;
    return r;
}

Octonion rho_apply(const G2Param& g, const Octonion& z) { return rho_apply(g, im_part(z)).full(); }

Eigen::Matrix<double, 7, 7> rho_matrix(const G2Param& g) {
    Eigen::Matrix<double, 7, 7> m;
    for (int k = 0; k < 7; ++k) m.col(k) = rho_apply(g, ImOctonion::from_coords(Vec7::Unit(k))).coords();
    return m;
}

G2Param g2_bracket(const G2Param& g1, const G2Param& g2) {
    G2Param r;
    const double trace_part = g1.p.dot(g2.Q.transpose()) - g2.p.dot(g1.Q.transpose());
    r.T = g1.T * g2.T - g2.T * g1.T + 3.0 * (g1.Q * g2.p - g2.Q * g1.p) + trace_part * Mat3::Identity();
    r.Q = g1.T * g2.Q - g2.T * g1.Q - 2.0 * covec_cross(g1.p, g2.p);
    r.p = g1.p * g2.T - g2.p * g1.T + 2.0 * vec_cross(g1.Q, g2.Q);
    return r;
}

DanTangent qdan_field(const G2Param& g, const QDanPoint& p) {
    const ImOctonion X = rho_apply(g, iota(p));
    return {X.A - X.x * p.A, X.b - X.x * p.b};
}

RollField qroll_field(const Mat3& T, const RollState& state, double tol) {
    if ((T - T.transpose()).norm() > tol * std::max(1.0, T.norm()) || std::abs(T.trace()) > tol * std::max(1.0, T.norm())) {
        throw Error(ErrorKind::NotSymmetricTraceless, "T must be symmetric and traceless");
    }
    const Vec3& v = state.v;
    const double s = state.q.s();
    const Vec3& w = state.q.w();
    const Vec3 vw = v.cross(w);
    const Vec3 P = s * v + vw;
    const Vec3 TP = T * P;
    const double tpv = TP.dot(v);

    RollField r;
    r.f = TP - tpv * v;
    r.g = ((s * s - 1.0) * v + s * vw).cross(T * v) + P.cross(T * vw) + v.dot(w) * TP - 2.0 * tpv * w;
    r.h = (T * (v + s * vw)).dot(v) - s * tpv + (T * vw).dot(vw);
    return r;
}

RollField qroll_field_numeric(const G2Param& g, const RollState& state) {
    const ImOctonion z = phi(state.v, state.q);
    const ImOctonion X = rho_apply(g, z);
    const Vec3 A = z.A;
    const Vec3 b = z.b.transpose();
    const Vec3 alpha = X.A;
    const Vec3 beta = X.b.transpose();
    // Remove the Euler (radial) component so the vector is tangent to the section |A + b| = 2.
    const double lambda = 0.25 * (A + b).dot(alpha + beta);
    const double dx = X.x - lambda * z.x;
    const Vec3 dA = alpha - lambda * A;
    const Vec3 db = beta - lambda * b;

    RollField r;
    r.f = 0.5 * (dA + db);
    r.g = 0.5 * (A.cross(db) - b.cross(dA) - z.x * (dA + db) - (A + b) * dx);
    r.h = 0.5 * (A.dot(dA) - b.dot(db));
    return r;
}

RollState k_action(const KElement& k, const RollState& state) {
    return {quat_rotate(k.q1, state.v), k.q1 * state.q * k.q2.conj()};
}

ImOctonion k_linear(const KElement& k, const ImOctonion& z) {
    const Vec3 v = quat_rotate(k.q1, 0.5 * (z.A + z.b.transpose()));
    const Quaternion xu = k.q1 * Quaternion(z.x, 0.5 * (z.A - z.b.transpose())) * k.q2.conj();
    return {xu.s(), v + xu.w(), (v - xu.w()).transpose()};
}

G2Param so4_embed(const Vec3& v1, const Vec3& v2) {
    return {cross_matrix(3.0 * v1 + v2), v1 - v2, (v2 - v1).transpose()};
}

bool descends_to_base(const G2Param& g, double tol) {
    const double scale = std::max(1.0, g.norm());
    return (g.T + g.T.transpose()).norm() <= tol * scale && (g.Q + g.p.transpose()).norm() <= tol * scale;
}

ImOctonion tau_involution(const ImOctonion& z) { return {-z.x, z.b.transpose(), z.A.transpose()}; }

}  // namespace rolldance
