#include "rolldance/rolling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rolldance/errors.hpp"

namespace rolldance {

namespace {

using std::numbers::pi;

bool admissible_range(int n, int w, int wprime) { return n >= 3 && w > 0 && 2 * w < n && w < wprime && wprime < n; }

}  // namespace

Quaternion edge_monodromy(const Vec3& v1, const Vec3& v2, double rho) {
    const Vec3 c = v1.cross(v2);
    const double s = c.norm();
    const double delta = std::atan2(s, v1.dot(v2));
    if (s <= 1e-12 * v1.norm() * v2.norm()) {
        throw Error(ErrorKind::DegenerateEdge, "edge endpoints are parallel or antipodal");
    }
    return quat_exp(c / s, 0.5 * (rho + 1.0) * delta);
}

void check_spherical_polygon(const SphericalPolygon& poly, double tol) {
    const std::size_t n = poly.size();
    if (n < 2) throw Error(ErrorKind::Degenerate, "a polygon needs at least two vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(poly.vertices[i].norm() - 1.0) > 1e-6) {
            throw Error(ErrorKind::Degenerate, "vertex " + std::to_string(i) + " is not a unit vector");
        }
    }
    const std::size_t edges = poly.closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3& a = poly.vertices[i];
        const Vec3& b = poly.vertices[(i + 1) % n];
        if (a.cross(b).norm() <= tol) {
            throw Error(ErrorKind::Degenerate, "edge " + std::to_string(i) + " has parallel or antipodal endpoints");
        }
    }
    const std::size_t triples = poly.closed ? (n >= 3 ? n : 0) : (n >= 3 ? n - 2 : 0);
    for (std::size_t i = 0; i < triples; ++i) {
        if (normalized_det(poly.vertices[i], poly.vertices[(i + 1) % n], poly.vertices[(i + 2) % n]) <= tol) {
            throw Error(ErrorKind::Degenerate, "vertices " + std::to_string(i) + ".." + std::to_string(i + 2) +
                                                   " lie on a great circle");
        }
    }
}

MonodromyReport polygon_monodromy(const SphericalPolygon& poly, std::size_t start_index, double tol) {
    const std::size_t n = poly.size();
    if (n < 2) throw Error(ErrorKind::DegenerateEdge, "a polygon needs at least two vertices");
    const std::size_t edges = poly.closed ? n : n - 1;
    MonodromyReport r;
    for (std::size_t k = 0; k < edges; ++k) {
        const std::size_t i = (start_index + k) % n;
        const Quaternion f = edge_monodromy(poly.vertices[i], poly.vertices[(i + 1) % n], poly.rho);
        r.factors.push_back(f);
        r.g = f * r.g;
    }
    const Quaternion one;
    const double d_plus = quat_distance(r.g, one);
    const double d_minus = quat_distance(r.g, -one);
    r.trivial = d_plus <= tol;
    r.projectively_trivial = std::min(d_plus, d_minus) <= tol;
    return r;
}

SphericalPolygon regular_polygon(int n, int w, double phi) {
    if (n < 3 || w <= 0 || 2 * w >= n || !(phi > 0.0 && phi < pi / 2)) {
        throw Error(ErrorKind::ParameterOutOfRange, "need n >= 3, 0 < w < n/2 and 0 < phi < pi/2");
    }
    const double theta = 2.0 * pi * w / n;
    const Vec3 v0(std::sin(phi), 0.0, std::cos(phi));
    SphericalPolygon poly;
    poly.closed = true;
    poly.rho = 3.0;
    for (int i = 0; i < n; ++i) {
        poly.vertices.push_back(quat_rotate(quat_exp(Vec3::UnitZ(), 0.5 * theta * i), v0));
    }
    return poly;
}

Quaternion closed_form_monodromy(int n, int w, double phi) {
    const SphericalPolygon poly = regular_polygon(n, w, phi);
    const double theta = 2.0 * pi * w / n;
    const Quaternion q = quat_exp(Vec3::UnitZ(), 0.5 * theta);
    const Quaternion g0 = edge_monodromy(poly.vertices[0], poly.vertices[1], 3.0);
    const Quaternion step = q.conj() * g0;
    Quaternion g;
    for (int i = 0; i < n; ++i) g = step * g;
    return (w % 2 == 0) ? g : -g;
}

double wprime_angle_residual(int n, int w, int wprime, double phi) {
    const double a = pi * w / n;
    const double s = std::sin(a) * std::sin(phi);
    return std::cos(pi * wprime / n) - std::cos(a) * (1.0 - 4.0 * s * s);
}

std::optional<double> solve_phi(int n, int w, int wprime) {
    if (!admissible_range(n, w, wprime)) return std::nullopt;
    const double target = std::cos(pi * wprime / n);
    const double upper = std::cos(pi * w / n);
    const double lower = std::cos(3.0 * pi * w / n);
    // The right-hand side decreases strictly from cos(pi w/n) to cos(3 pi w/n).
    const double margin = 1e-12;
    if (!(target < upper - margin && target > lower + margin)) return std::nullopt;

    double lo = 0.0, hi = pi / 2;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        // Residual is target - rhs, increasing in phi.
        if (wprime_angle_residual(n, w, wprime, mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<AdmissibleTriple> enumerate_admissible(int n_max) {
    std::vector<AdmissibleTriple> out;
    for (int n = 3; n <= n_max; ++n) {
        for (int w = 1; 2 * w < n; ++w) {
            for (int wp = w + 1; wp < n; ++wp) {
                if ((wp - w) % 2 != 0) continue;
                const auto phi = solve_phi(n, w, wp);
                if (!phi) continue;
                AdmissibleTriple t{n, w, wp, *phi, true};
                for (int m = 3; m < n; ++m) {
                    if (admissible_range(m, w, wp) && solve_phi(m, w, wp)) {
                        t.minimal = false;
                        break;
                    }
                }
                out.push_back(t);
            }
        }
    }
    return out;
}

double traced_turning_angle(int n, int w, double phi) {
    const SphericalPolygon poly = regular_polygon(n, w, phi);
    Quaternion q;
    std::vector<Vec3> traced;
    for (int i = 0; i < n; ++i) {
        // Body point of the moving sphere in contact at this vertex.
        traced.push_back(quat_rotate(q.conj(), -poly.vertices[i]));
        q = edge_monodromy(poly.vertices[i], poly.vertices[(i + 1) % n], 3.0) * q;
    }
    Vec3 c = Vec3::Zero();
    for (const auto& p : traced) c += p;
    if (c.norm() < 1e-9 * n) {
        // Consecutive contact points are antipodal: a half turn about any perpendicular axis.
        for (int i = 0; i < n; ++i) {
            if ((traced[i] + traced[(i + 1) % n]).norm() > 1e-9) {
                throw Error(ErrorKind::Degenerate, "traced polygon has no centre");
            }
        }
        return pi;
    }
    c.normalize();
    const Vec3 p0 = traced[0] - traced[0].dot(c) * c;
    const Vec3 p1 = traced[1] - traced[1].dot(c) * c;
    double ang = std::atan2(p0.cross(p1).dot(c), p0.dot(p1));
    if (ang < 0.0) ang += 2.0 * pi;
    return ang;
}

double traced_half_angle_cos(int n, int w, double phi) {
    const double half_theta = pi * w / n;
    const double half_delta = std::asin(std::sin(phi) * std::sin(half_theta));
    return std::cos(half_theta) * std::cos(3.0 * half_delta) / std::cos(half_delta);
}

std::pair<double, double> droll_membership(const Vec3& v, const Mat3& g, const Vec3& vdot, const Mat3& gdot,
                                           double rho, double tol) {
    const double scale = std::max(1.0, vdot.norm() + gdot.norm());
    if (std::abs(v.norm() - 1.0) > tol || (g.transpose() * g - Mat3::Identity()).norm() > tol) {
        throw Error(ErrorKind::NotTangent, "state is not on S^2 x SO(3)");
    }
    const Mat3 W = gdot * g.transpose();
    if (std::abs(v.dot(vdot)) > tol * scale || (W + W.transpose()).norm() > tol * scale) {
        throw Error(ErrorKind::NotTangent, "velocity is not tangent to S^2 x SO(3)");
    }
    const Vec3 omega(W(2, 1), W(0, 2), W(1, 0));
    return {((rho + 1.0) * vdot - omega.cross(v)).norm(), std::abs(omega.dot(v))};
}

Quaternion projective_edge_monodromy(const Vec3& p1, const Vec3& p2, double rho, double tol) {
    if (rho != 3.0) {
        throw Error(ErrorKind::ParameterOutOfRange, "edge factors of classes are only defined for rho = 3");
    }
    const Vec3 u1 = p1.normalized();
    const Vec3 u2 = p2.normalized();
    if (u1.cross(u2).norm() <= tol) throw Error(ErrorKind::IdenticalClasses, "the two classes coincide");
    return edge_monodromy(u1, u2, 3.0);
}

}  // namespace rolldance
