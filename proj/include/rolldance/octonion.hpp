#pragma once

#include <vector>

#include "rolldance/geom.hpp"

namespace rolldance {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

// Split octonion as a Zorn vector matrix (x, A; b, y).
struct Octonion {
    double x = 0.0;
    Vec3 A = Vec3::Zero();
    Covec3 b = Covec3::Zero();
    double y = 0.0;

    static Octonion one() { return {1.0, Vec3::Zero(), Covec3::Zero(), 1.0}; }

    // Coordinates (x, A, b, y).
    Vec8 coords() const;
    static Octonion from_coords(const Vec8& c);

    Octonion operator+(const Octonion& o) const { return {x + o.x, A + o.A, b + o.b, y + o.y}; }
    Octonion operator-(const Octonion& o) const { return {x - o.x, A - o.A, b - o.b, y - o.y}; }
    Octonion operator*(double k) const { return {x * k, A * k, b * k, y * k}; }
    double norm() const { return coords().norm(); }
};

// Traceless vector matrix (x, A; b, -x).
struct ImOctonion {
    double x = 0.0;
    Vec3 A = Vec3::Zero();
    Covec3 b = Covec3::Zero();

    Octonion full() const { return {x, A, b, -x}; }
    // Coordinates (x, A, b).
    Vec7 coords() const;
    static ImOctonion from_coords(const Vec7& c);

    ImOctonion operator+(const ImOctonion& o) const { return {x + o.x, A + o.A, b + o.b}; }
    ImOctonion operator-(const ImOctonion& o) const { return {x - o.x, A - o.A, b - o.b}; }
    ImOctonion operator-() const { return {-x, -A, -b}; }
    ImOctonion operator*(double k) const { return {x * k, A * k, b * k}; }
    double norm() const { return coords().norm(); }
};

// Imaginary part (x, A; b, y) -> ((x - y)/2, A; b, (y - x)/2).
ImOctonion im_part(const Octonion& z);

Octonion oct_mul(const Octonion& z, const Octonion& zp);
Octonion oct_conj(const Octonion& z);
double oct_form(const Octonion& z);
double oct_form(const ImOctonion& z);

// Symmetric bilinear form polarizing oct_form on Im(O), as a 7x7 Gram matrix.
Eigen::Matrix<double, 7, 7> im_gram_matrix();

// Matrix of z' -> z z' restricted to Im(O) (8x7, coordinates as above).
Eigen::Matrix<double, 8, 7> left_mul_matrix(const ImOctonion& z);

// Basis of {z' in Im(O) : z z' = 0} for null z != 0.
std::vector<ImOctonion> annihilator_basis(const ImOctonion& z, double tol = kDefaultTol);

// The product z dz, whose blocks are the components of the 1-form z dz.
Octonion omega_eval(const ImOctonion& z, const ImOctonion& dz);

// dz is tangent to the annihilator distribution at z iff z dz = 0.
bool is_oct_horizontal(const ImOctonion& z, const ImOctonion& dz, double tol = kDefaultTol);

}  // namespace rolldance
