#include "rolldance/geom.hpp"

#include <cmath>

#include "rolldance/errors.hpp"

namespace rolldance {

Covec3 vec_cross(const Vec3& a1, const Vec3& a2) { return a1.cross(a2).transpose(); }

Vec3 covec_cross(const Covec3& b1, const Covec3& b2) {
    return b1.transpose().cross(b2.transpose());
}

Mat3 cross_matrix(const Vec3& a) {
    Mat3 m;
    m << 0.0, -a.z(), a.y(),
         a.z(), 0.0, -a.x(),
         -a.y(), a.x(), 0.0;
    return m;
}

namespace {

template <typename V>
V canonical_impl(const V& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument, "projective representative must be nonzero and finite");
    }
    V u = v / n;
    // Components below this size are treated as zero when fixing the sign.
    for (int i = 0; i < 3; ++i) {
        if (std::abs(u[i]) > 1e-12) {
            if (u[i] < 0.0) u = -u;
            break;
        }
    }
    return u;
}

template <typename V>
double proj_distance_impl(const V& a, const V& b) {
    const V u = a.normalized();
    const V v = b.normalized();
    return std::min((u - v).norm(), (u + v).norm());
}

double det2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

Vec3 canonical(const Vec3& v) { return canonical_impl(v); }
Covec3 canonical(const Covec3& b) { return canonical_impl(b); }

ProjPoint::ProjPoint(const Vec3& rep) : rep_(canonical(rep)) {}

bool ProjPoint::equals(const ProjPoint& other, double tol) const {
    return proj_distance(rep_, other.rep_) <= tol;
}

ProjLine::ProjLine(const Covec3& rep) : rep_(canonical(rep)) {}

bool ProjLine::equals(const ProjLine& other, double tol) const {
    return proj_distance(rep_, other.rep_) <= tol;
}

double proj_distance(const Vec3& u, const Vec3& v) { return proj_distance_impl(u, v); }
double proj_distance(const Covec3& u, const Covec3& v) { return proj_distance_impl(u, v); }

double normalized_det(const Vec3& u, const Vec3& v, const Vec3& w) {
    Mat3 m;
    m << u.normalized(), v.normalized(), w.normalized();
    return std::abs(m.determinant());
}

double cross_ratio(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4, double tol) {
    Eigen::Matrix<double, 4, 3> stack;
    const Vec3* pts[4] = {&p1, &p2, &p3, &p4};
    for (int i = 0; i < 4; ++i) {
        const double n = pts[i]->norm();
        if (!(n > 0.0)) throw Error(ErrorKind::DegenerateQuadruple, "zero representative");
        stack.row(i) = pts[i]->transpose() / n;
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(stack, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(2) > tol * sv(0)) {
        throw Error(ErrorKind::NotCollinear, "points do not span a 2-dimensional subspace");
    }
    const Eigen::Matrix<double, 3, 2> basis = svd.matrixV().leftCols<2>();
    Eigen::Vector2d c[4];
    for (int i = 0; i < 4; ++i) c[i] = basis.transpose() * stack.row(i).transpose();

    const double den = det2(c[2], c[1]) * det2(c[0], c[3]);
    if (std::abs(den) <= tol) {
        throw Error(ErrorKind::DegenerateQuadruple, "normal form p3 = p1 + p2 not reachable");
    }
    return det2(c[3], c[1]) * det2(c[0], c[2]) / den;
}

double cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                   const ProjPoint& p4, double tol) {
    return cross_ratio(p1.rep(), p2.rep(), p3.rep(), p4.rep(), tol);
}

double Quaternion::norm() const { return std::sqrt(s_ * s_ + w_.squaredNorm()); }

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero quaternion");
    return {s_ / n, w_ / n};
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
    return {s_ * o.s_ - w_.dot(o.w_), s_ * o.w_ + o.s_ * w_ + w_.cross(o.w_)};
}

double quat_distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

bool is_unit(const Quaternion& q, double tol) { return std::abs(q.norm() - 1.0) <= tol; }

Quaternion quat_exp(const Vec3& u, double t, double tol) {
    if (std::abs(u.norm() - 1.0) > tol) throw Error(ErrorKind::NonUnitAxis, "axis must be a unit vector");
    return {std::cos(t), u * std::sin(t)};
}

Vec3 quat_rotate(const Quaternion& q, const Vec3& v) {
    return (q * Quaternion::pure(v) * q.conj()).w();
}

Mat3 quat_to_matrix(const Quaternion& q) {
    Mat3 r;
    for (int k = 0; k < 3; ++k) r.col(k) = quat_rotate(q, Vec3::Unit(k));
    return r;
}

Quaternion matrix_to_quat(const Mat3& r) {
    const Eigen::Quaterniond e(r);
    return Quaternion(e.w(), e.x(), e.y(), e.z()).normalized();
}

}  // namespace rolldance
