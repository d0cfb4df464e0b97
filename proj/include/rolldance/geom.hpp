#pragma once

#include <Eigen/Dense>

namespace rolldance {

// Points of R^3 are columns, elements of the dual space are rows.
using Vec3 = Eigen::Vector3d;
using Covec3 = Eigen::RowVector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kDefaultTol = 1e-9;

// vol(a1, a2, .) as a covector: the plane (or projective line) through a1, a2.
Covec3 vec_cross(const Vec3& a1, const Vec3& a2);

// vol*(b1, b2, .) as a vector: the intersection point of two lines.
Vec3 covec_cross(const Covec3& b1, const Covec3& b2);

// Matrix of x -> a x x.
Mat3 cross_matrix(const Vec3& a);

// Unit norm, first nonzero component positive. Throws InvalidArgument on zero input.
Vec3 canonical(const Vec3& v);
Covec3 canonical(const Covec3& b);

// A point of RP^2 given by a nonzero representative.
class ProjPoint {
public:
    explicit ProjPoint(const Vec3& rep);
    const Vec3& rep() const { return rep_; }
    bool equals(const ProjPoint& other, double tol = kDefaultTol) const;

private:
    Vec3 rep_;
};

// A line of RP^2 given by a nonzero covector.
class ProjLine {
public:
    explicit ProjLine(const Covec3& rep);
    const Covec3& rep() const { return rep_; }
    bool equals(const ProjLine& other, double tol = kDefaultTol) const;

private:
    Covec3 rep_;
};

// Distance between projective classes: min over signs of |u - (+-)v| on unit reps.
double proj_distance(const Vec3& u, const Vec3& v);
double proj_distance(const Covec3& u, const Covec3& v);

// |det(u, v, w)| on unit-normalized representatives.
double normalized_det(const Vec3& u, const Vec3& v, const Vec3& w);

// Cross-ratio of four collinear points, normal form p3 = p1 + p2, p4 = k p1 + p2.
double cross_ratio(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4,
                   double tol = kDefaultTol);
double cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                   const ProjPoint& p4, double tol = kDefaultTol);

// Quaternion s + w with w in Im(H) = R^3. Used for both general and unit quaternions.
class Quaternion {
public:
    Quaternion() : s_(1.0), w_(Vec3::Zero()) {}
    Quaternion(double s, const Vec3& w) : s_(s), w_(w) {}
    Quaternion(double s, double x, double y, double z) : s_(s), w_(x, y, z) {}

    static Quaternion pure(const Vec3& v) { return {0.0, v}; }

    double s() const { return s_; }
    const Vec3& w() const { return w_; }

    Quaternion conj() const { return {s_, -w_}; }
    double norm() const;
    Quaternion normalized() const;
    double dot(const Quaternion& o) const { return s_ * o.s_ + w_.dot(o.w_); }
    Eigen::Vector4d coeffs() const { return {s_, w_.x(), w_.y(), w_.z()}; }

    Quaternion operator*(const Quaternion& o) const;
    Quaternion operator+(const Quaternion& o) const { return {s_ + o.s_, w_ + o.w_}; }
    Quaternion operator-(const Quaternion& o) const { return {s_ - o.s_, w_ - o.w_}; }
    Quaternion operator-() const { return {-s_, -w_}; }
    Quaternion operator*(double k) const { return {s_ * k, w_ * k}; }

private:
    double s_;
    Vec3 w_;
};

using UnitQuaternion = Quaternion;

double quat_distance(const Quaternion& a, const Quaternion& b);
bool is_unit(const Quaternion& q, double tol = kDefaultTol);

// cos t + u sin t. Throws NonUnitAxis when |u| is not 1.
Quaternion quat_exp(const Vec3& u, double t, double tol = kDefaultTol);

// q v q^-1 for unit q.
Vec3 quat_rotate(const Quaternion& q, const Vec3& v);

Mat3 quat_to_matrix(const Quaternion& q);
// One of the two unit quaternions covering R; the sign is unspecified.
Quaternion matrix_to_quat(const Mat3& r);

}  // namespace rolldance
