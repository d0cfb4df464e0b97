#include "rolldance/octonion.hpp"

#include <cmath>

#include "rolldance/errors.hpp"

namespace rolldance {

Vec8 Octonion::coords() const {
    Vec8 c;
    c << x, A, b.transpose(), y;
    return c;
}

Octonion Octonion::from_coords(const Vec8& c) {
    return {c(0), c.segment<3>(1), c.segment<3>(4).transpose(), c(7)};
}

Vec7 ImOctonion::coords() const {
    Vec7 c;
    c << x, A, b.transpose();
    return c;
}

ImOctonion ImOctonion::from_coords(const Vec7& c) {
    return {c(0), c.segment<3>(1), c.segment<3>(4).transpose()};
}

ImOctonion im_part(const Octonion& z) { return {0.5 * (z.x - z.y), z.A, z.b}; }

Octonion oct_mul(const Octonion& z, const Octonion& zp) {
    Octonion r;
    r.x = z.x * zp.x - zp.b.dot(z.A.transpose());
    r.A = z.x * zp.A + zp.y * z.A + covec_cross(z.b, zp.b);
    r.b = zp.x * z.b + z.y * zp.b + vec_cross(z.A, zp.A);
    r.y = z.y * zp.y - z.b.dot(zp.A.transpose());
    return r;
}

Octonion oct_conj(const Octonion& z) { return {z.y, -z.A, -z.b, z.x}; }

double oct_form(const Octonion& z) { return z.x * z.y + z.b.dot(z.A.transpose()); }

double oct_form(const ImOctonion& z) { return oct_form(z.full()); }

Eigen::Matrix<double, 7, 7> im_gram_matrix() {
    // <z, z> = -x^2 + b A, polarized.
    Eigen::Matrix<double, 7, 7> g = Eigen::Matrix<double, 7, 7>::Zero();
    g(0, 0) = -1.0;
    for (int i = 0; i < 3; ++i) {
        g(1 + i, 4 + i) = 0.5;
        g(4 + i, 1 + i) = 0.5;
    }
    return g;
}

Eigen::Matrix<double, 8, 7> left_mul_matrix(const ImOctonion& z) {
    Eigen::Matrix<double, 8, 7> m;
    const Octonion zf = z.full();
    for (int k = 0; k < 7; ++k) {
        m.col(k) = oct_mul(zf, ImOctonion::from_coords(Vec7::Unit(k)).full()).coords();
    }
    return m;
}

std::vector<ImOctonion> annihilator_basis(const ImOctonion& z, double tol) {
    const double n = z.norm();
    if (!(n > tol)) throw Error(ErrorKind::ZeroOctonion, "annihilator of the zero octonion");
    if (std::abs(oct_form(z)) > tol * n * n) {
        throw Error(ErrorKind::NotNull, "octonion is not on the null cone");
    }
    const Eigen::Matrix<double, 8, 7> m = left_mul_matrix(z * (1.0 / n));
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 7>> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // Relative singular-value cutoff; the rank drop 7 -> 4 is well separated.
    const double cutoff = 1e-8 * sv(0);
    std::vector<ImOctonion> basis;
    for (int k = 0; k < 7; ++k) {
        if (sv(k) <= cutoff) basis.push_back(ImOctonion::from_coords(svd.matrixV().col(k)));
    }
    return basis;
}

Octonion omega_eval(const ImOctonion& z, const ImOctonion& dz) { return oct_mul(z.full(), dz.full()); }

bool is_oct_horizontal(const ImOctonion& z, const ImOctonion& dz, double tol) {
    const double scale = z.norm() * dz.norm();
    return omega_eval(z, dz).norm() <= tol * std::max(scale, 1e-300);
}

}  // namespace rolldance
