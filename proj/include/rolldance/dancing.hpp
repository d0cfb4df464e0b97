#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rolldance/geom.hpp"

namespace rolldance {

// A point of the quadric bA = 1.
struct QDanPoint {
    Vec3 A = Vec3::UnitX();
    Covec3 b = Covec3::UnitX();

    double quadric_residual() const { return std::abs(b.dot(A.transpose()) - 1.0); }
    double distance(const QDanPoint& o) const;
};

// Tangent vector (dA, db) at a point of the quadric.
struct DanTangent {
    Vec3 dA = Vec3::Zero();
    Covec3 db = Covec3::Zero();
};

// Pair of polygons in the projective plane: vertices A_i and lines b_i.
struct DancingPair {
    std::vector<Vec3> A;
    std::vector<Covec3> b;
    bool closed = false;

    std::size_t size() const { return A.size(); }
};

struct HorizontalPolygon {
    std::vector<QDanPoint> points;
    bool closed = false;

    std::size_t size() const { return points.size(); }
};

// Certificates of non-degeneracy, all on unit-normalized representatives.
struct NondegeneracyReport {
    double min_point_off_line = 0.0;   // min |b_i A_i|
    double min_vertex_det = 0.0;       // min |det(A_i, A_i+1, A_i+2)|
    double min_line_det = 0.0;         // min |det(b_i, b_i+1, b_i+2)|
    double max_inscribed = 0.0;        // max |a_i B_i|
    bool ok(double tol) const {
        return min_point_off_line >= tol && min_vertex_det >= tol && min_line_det >= tol && max_inscribed <= tol;
    }
};

std::pair<Vec3, Covec3> qdan_project(const QDanPoint& p);

std::array<DanTangent, 2> dan_distribution_basis(const QDanPoint& p);

// |b2 - b1 - A1 x A2|.
double horizontal_residual(const QDanPoint& p, const QDanPoint& q);
bool is_horizontal_segment(const QDanPoint& p, const QDanPoint& q, double tol = kDefaultTol);

// Number of vertices i at which the dancing condition is evaluated.
std::size_t dancing_vertex_count(const DancingPair& pair);

// The two cross-ratio summands at vertex i.
std::pair<double, double> dancing_terms(const DancingPair& pair, std::size_t i, double tol = 1e-7);
double dancing_residual(const DancingPair& pair, std::size_t i, double tol = 1e-7);

// |a_i B_i| with a_i = A_i A_i+1 and B_i = b_i b_i+1, unit representatives.
double inscribed_residual(const DancingPair& pair, std::size_t i);

NondegeneracyReport nondegeneracy(const DancingPair& pair);

std::pair<QDanPoint, QDanPoint> lift_inscribed_2gon(const Vec3& a1, const Covec3& b1, const Vec3& a2,
                                                    const Covec3& b2, double tol = kDefaultTol);

struct Extension {
    QDanPoint point;
    double residual = 0.0;
};

Extension extend_horizontal(const QDanPoint& prev, const Vec3& a, const Covec3& b, double tol = kDefaultTol);

HorizontalPolygon lift_dancing_pair(const DancingPair& pair, double tol = 1e-8);

DancingPair project_polygon(const HorizontalPolygon& poly);

DancingPair random_dancing_chain(std::size_t n, std::uint64_t seed);

// Random open chain whose consecutive segments follow the distribution.
HorizontalPolygon random_horizontal_chain(std::size_t n, std::uint64_t seed);

// Orthonormal basis (columns) of ker b.
Eigen::Matrix<double, 3, 2> kernel_basis(const Covec3& b);

// Point reached from p along the distribution direction (u, A x u), u = K c with K = kernel_basis(p.b).
QDanPoint step_along(const QDanPoint& p, const Eigen::Vector2d& c);

// Least-squares point q4 joined horizontally to both q1 and q3.
struct QuadSolution {
    QDanPoint q4;
    double residual = 0.0;
};
QuadSolution solve_quadrilateral(const QDanPoint& q1, const QDanPoint& q3);

// Points q4 (joined to q3) and q5 (joined to q1) with q4 q5 horizontal,
// found by minimum-norm Gauss-Newton from the given start (c for q4, d for q5).
struct PentagonSolution {
    QDanPoint q4;
    QDanPoint q5;
    double residual = 0.0;
};
std::optional<PentagonSolution> solve_pentagon(const QDanPoint& q1, const QDanPoint& q3,
                                               const Eigen::Vector4d& start, int max_iter = 100);

}  // namespace rolldance
