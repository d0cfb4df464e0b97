#include "rolldance/bridge.hpp"

#include <cmath>
#include <string>

#include "rolldance/errors.hpp"

namespace rolldance {

ImOctonion iota(const QDanPoint& p) { return {1.0, p.A, p.b}; }

std::optional<QDanPoint> iota_inv(const ImOctonion& z, double tol) {
    const double n = z.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::NotOnCone, "zero representative");
    const ImOctonion u = z * (1.0 / n);
    if (std::abs(oct_form(u)) > tol) throw Error(ErrorKind::NotOnCone, "class is not on the null cone");
    if (std::abs(u.x) < kGenericMargin) return std::nullopt;
    return QDanPoint{u.A / u.x, u.b / u.x};
}

ImOctonion phi(const Vec3& v, const Quaternion& q) {
    const Quaternion vq = Quaternion::pure(v) * q;
    return {vq.s(), v + vq.w(), (v - vq.w()).transpose()};
}

RollState phi_inv(const ImOctonion& z, double tol) {
    Vec3 v = 0.5 * (z.A + z.b.transpose());
    Vec3 u = 0.5 * (z.A - z.b.transpose());
    double x = z.x;
    const double r = v.norm();
    if (r <= tol * std::max(1.0, z.norm())) throw Error(ErrorKind::DegenerateRay, "ray has vanishing v-part");
    v /= r;
    u /= r;
    x /= r;
    // v^2 = -1, so q = -v (vq).
    const Quaternion q = -(Quaternion::pure(v) * Quaternion(x, u));
    return {v, q.normalized()};
}

double ray_angle(const ImOctonion& a, const ImOctonion& b) {
    const Vec7 ca = a.coords().normalized();
    const Vec7 cb = b.coords().normalized();
    return 2.0 * std::atan2((ca - cb).norm(), (ca + cb).norm());
}

bool antipode_equivariance_check(const Vec3& v, const Quaternion& q, double tol) {
    return (phi(-v, q) + phi(v, q)).norm() <= tol * std::max(1.0, phi(v, q).norm());
}

std::vector<Quaternion> class_edge_factors(const std::vector<Vec3>& classes) {
    const std::size_t n = classes.size();
    std::vector<Quaternion> mu;
    for (std::size_t i = 0; i < n; ++i) mu.push_back(projective_edge_monodromy(classes[i], classes[(i + 1) % n]));
    return mu;
}

DancingPair pipeline_forward(const std::vector<Vec3>& classes, const Quaternion& q, double tol) {
    const std::size_t n = classes.size();
    if (n < 3) throw Error(ErrorKind::Degenerate, "a closed polygon needs at least three vertices");
    std::vector<Vec3> v;
    for (const auto& c : classes) v.push_back(c.normalized());
    for (std::size_t i = 0; i < n; ++i) {
        if (normalized_det(v[i], v[(i + 1) % n], v[(i + 2) % n]) <= tol) {
            throw Error(ErrorKind::Degenerate, "three consecutive classes on a great circle at " + std::to_string(i));
        }
    }
    std::vector<Quaternion> mu;
    try {
        mu = class_edge_factors(v);
    } catch (const Error& e) {
        throw Error(ErrorKind::Degenerate, e.what());
    }
    Quaternion g;
    for (const auto& m : mu) g = m * g;
    if (quat_distance(g, Quaternion()) > tol) {
        throw Error(ErrorKind::NontrivialMonodromy, "lifted monodromy of the polygon is not 1");
    }

    DancingPair pair;
    pair.closed = true;
    Quaternion qi = q.normalized();
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = iota_inv(phi(v[i], qi));
        if (!p) throw Error(ErrorKind::NonGeneric, "vertex " + std::to_string(i) + " lies on the section x = 0");
        pair.A.push_back(p->A);
        pair.b.push_back(p->b);
        qi = mu[i] * qi;
    }
    const NondegeneracyReport nd = nondegeneracy(pair);
    if (!nd.ok(1e-10)) throw Error(ErrorKind::Degenerate, "resulting pair is degenerate");
    return pair;
}

InverseResult pipeline_inverse(const DancingPair& pair, double tol) {
    if (!pair.closed) throw Error(ErrorKind::InvalidArgument, "pipeline_inverse needs a closed pair");
    const HorizontalPolygon lift = lift_dancing_pair(pair, tol);
    InverseResult out;
    std::vector<Quaternion> qs;
    // Chart representatives have x = 1 along every edge, so no sign flips occur.
    for (const auto& p : lift.points) {
        const RollState s = phi_inv(iota(p));
        out.classes.push_back(s.v);
        qs.push_back(s.q);
    }
    out.q = qs.front();

    const std::vector<Quaternion> mu = class_edge_factors(out.classes);
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        if (quat_distance(qs[i + 1], mu[i] * qs[i]) > 1e-6) {
            throw Error(ErrorKind::InternalInconsistency, "recovered orientations do not follow the rolling");
        }
    }
    Quaternion g;
    for (const auto& m : mu) g = m * g;
    if (std::min(quat_distance(g, Quaternion()), quat_distance(g, -Quaternion())) > 1e-6) {
        throw Error(ErrorKind::InternalInconsistency, "recovered polygon has nontrivial projective monodromy");
    }
    return out;
}

}  // namespace rolldance
