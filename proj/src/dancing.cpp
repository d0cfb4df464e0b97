#include "rolldance/dancing.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "rolldance/errors.hpp"

namespace rolldance {

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (;;) {
        Vec3 v(nd(rng), nd(rng), nd(rng));
        const double n = v.norm();
        if (n > 1e-3) return v / n;
    }
}

std::size_t wrap(std::size_t k, std::size_t n) { return k % n; }

}  // namespace

double QDanPoint::distance(const QDanPoint& o) const {
    return std::sqrt((A - o.A).squaredNorm() + (b - o.b).squaredNorm());
}

std::pair<Vec3, Covec3> qdan_project(const QDanPoint& p) { return {canonical(p.A), canonical(p.b)}; }

Eigen::Matrix<double, 3, 2> kernel_basis(const Covec3& b) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 1>> svd(b.transpose(), Eigen::ComputeFullU);
    return svd.matrixU().rightCols<2>();
}

QDanPoint step_along(const QDanPoint& p, const Eigen::Vector2d& c) {
    const Vec3 u = kernel_basis(p.b) * c;
    return {p.A + u, p.b + vec_cross(p.A, u)};
}

std::array<DanTangent, 2> dan_distribution_basis(const QDanPoint& p) {
    const auto k = kernel_basis(p.b);
    std::array<DanTangent, 2> out;
    for (int i = 0; i < 2; ++i) out[i] = {k.col(i), vec_cross(p.A, k.col(i))};
    return out;
}

double horizontal_residual(const QDanPoint& p, const QDanPoint& q) {
    return (q.b - p.b - vec_cross(p.A, q.A)).norm();
}

bool is_horizontal_segment(const QDanPoint& p, const QDanPoint& q, double tol) {
    const double scale = std::max({1.0, p.A.norm() * q.A.norm(), p.b.norm() + q.b.norm()});
    if (p.distance(q) <= tol * scale) throw Error(ErrorKind::IdenticalPoints, "segment endpoints coincide");
    return horizontal_residual(p, q) <= tol * scale;
}

std::size_t dancing_vertex_count(const DancingPair& pair) {
    const std::size_t n = pair.size();
    if (pair.closed) return n >= 3 ? n : 0;
    return n >= 3 ? n - 2 : 0;
}

std::pair<double, double> dancing_terms(const DancingPair& pair, std::size_t i, double tol) {
    const std::size_t n = pair.size();
    if (pair.b.size() != n) throw Error(ErrorKind::InvalidArgument, "A and b lists differ in length");
    if (i >= dancing_vertex_count(pair)) throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
    const auto& A = pair.A;
    const auto& b = pair.b;
    const std::size_t i0 = i, i1 = wrap(i + 1, n), i2 = wrap(i + 2, n);

    const Covec3 a_i = vec_cross(A[i0], A[i1]);
    const Covec3 a_next = vec_cross(A[i1], A[i2]);
    const Vec3 B_i = covec_cross(b[i0], b[i1]);
    const Vec3 B_next = covec_cross(b[i1], b[i2]);
    const Vec3 C = covec_cross(b[i0], a_next);
    // D lies on a_i and on the line two steps ahead.
    const Vec3 D = covec_cross(a_i, b[i2]);

    const double small = 1e-14;
    if (a_i.norm() <= small || a_next.norm() <= small || B_i.norm() <= small || B_next.norm() <= small ||
        C.norm() <= small || D.norm() <= small) {
        throw Error(ErrorKind::DegenerateConfiguration, "undefined intersection at vertex " + std::to_string(i));
    }
    try {
        const double t1 = cross_ratio(A[i1], B_i, A[i0], D, tol);
        const double t2 = cross_ratio(A[i1], B_next, A[i2], C, tol);
        return {t1, t2};
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateConfiguration,
                    "cross-ratio undefined at vertex " + std::to_string(i) + " (" + e.what() + ")");
    }
}

double dancing_residual(const DancingPair& pair, std::size_t i, double tol) {
    const auto [t1, t2] = dancing_terms(pair, i, tol);
    return t1 + t2;
}

double inscribed_residual(const DancingPair& pair, std::size_t i) {
    const std::size_t n = pair.size();
    const Covec3 a = vec_cross(pair.A[i].normalized(), pair.A[wrap(i + 1, n)].normalized());
    const Vec3 B = covec_cross(pair.b[i].normalized(), pair.b[wrap(i + 1, n)].normalized());
    if (a.norm() == 0.0 || B.norm() == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(a.normalized().dot(B.normalized().transpose()));
}

NondegeneracyReport nondegeneracy(const DancingPair& pair) {
    const std::size_t n = pair.size();
    NondegeneracyReport r;
    r.min_point_off_line = std::numeric_limits<double>::infinity();
    r.min_vertex_det = std::numeric_limits<double>::infinity();
    r.min_line_det = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        r.min_point_off_line =
            std::min(r.min_point_off_line, std::abs(pair.b[i].normalized().dot(pair.A[i].normalized().transpose())));
    }
    const std::size_t triples = pair.closed ? (n >= 3 ? n : 0) : (n >= 3 ? n - 2 : 0);
    for (std::size_t i = 0; i < triples; ++i) {
        r.min_vertex_det = std::min(
            r.min_vertex_det, normalized_det(pair.A[i], pair.A[wrap(i + 1, n)], pair.A[wrap(i + 2, n)]));
        r.min_line_det = std::min(r.min_line_det,
                                  normalized_det(pair.b[i].transpose(), pair.b[wrap(i + 1, n)].transpose(),
                                                 pair.b[wrap(i + 2, n)].transpose()));
    }
    const std::size_t edges = pair.closed ? n : (n >= 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < edges; ++i) r.max_inscribed = std::max(r.max_inscribed, inscribed_residual(pair, i));
    return r;
}

std::pair<QDanPoint, QDanPoint> lift_inscribed_2gon(const Vec3& a1, const Covec3& b1, const Vec3& a2,
                                                    const Covec3& b2, double tol) {
    const Vec3 A1 = a1.normalized();
    const Vec3 A2 = a2.normalized();
    const double c1 = b1.normalized().dot(A1.transpose());
    const double c2 = b2.normalized().dot(A2.transpose());
    if (std::abs(c1) <= tol || std::abs(c2) <= tol) {
        throw Error(ErrorKind::DegenerateConfiguration, "vertex lies on its own line");
    }
    const Covec3 B1 = b1 / b1.dot(A1.transpose());
    const Covec3 B2 = b2 / b2.dot(A2.transpose());

    const Covec3 a = vec_cross(A1, A2);
    const Vec3 P = covec_cross(B1, B2);
    if (a.norm() <= tol) throw Error(ErrorKind::DegenerateConfiguration, "coincident vertices");
    if (P.norm() <= tol * B1.norm() * B2.norm()) throw Error(ErrorKind::DegenerateConfiguration, "coincident lines");
    if (std::abs(a.normalized().dot(P.normalized().transpose())) > tol) {
        throw Error(ErrorKind::NotInscribed, "intersection of the lines is off the edge");
    }

    Eigen::Matrix<double, 3, 2> M;
    M.col(0) = B1.transpose();
    M.col(1) = B2.transpose();
    const Eigen::Vector2d lam = M.colPivHouseholderQr().solve(a.transpose());
    const double l1 = lam(0), l2 = lam(1);
    if (std::abs(l1) * B1.norm() <= tol * a.norm() || std::abs(l2) * B2.norm() <= tol * a.norm()) {
        throw Error(ErrorKind::DegenerateDecomposition, "vertex lies on the opposite line");
    }
    const double x1 = std::cbrt(l2 / (l1 * l1));
    const double x2 = -std::cbrt(l1 / (l2 * l2));
    return {QDanPoint{x1 * A1, B1 / x1}, QDanPoint{x2 * A2, B2 / x2}};
}

Extension extend_horizontal(const QDanPoint& prev, const Vec3& a, const Covec3& b, double tol) {
    const Vec3 A = a.normalized();
    const double c = b.normalized().dot(A.transpose());
    if (std::abs(c) <= tol) throw Error(ErrorKind::DegenerateConfiguration, "vertex lies on its own line");
    const Covec3 B = b / b.dot(A.transpose());
    const double x = B.dot(prev.A.transpose());
    if (std::abs(x) <= tol * B.norm() * prev.A.norm()) {
        throw Error(ErrorKind::ScaleUndefined, "new line passes through the previous vertex");
    }
    Extension e;
    e.point = QDanPoint{x * A, B / x};
    e.residual = horizontal_residual(prev, e.point);
    return e;
}

HorizontalPolygon lift_dancing_pair(const DancingPair& pair, double tol) {
    const std::size_t n = pair.size();
    if (pair.b.size() != n) throw Error(ErrorKind::InvalidArgument, "A and b lists differ in length");
    if (n < 2 || (pair.closed && n < 3)) throw Error(ErrorKind::InvalidArgument, "too few vertices");

    for (std::size_t i = 0; i < dancing_vertex_count(pair); ++i) {
        const auto [t1, t2] = dancing_terms(pair, i);
        if (std::abs(t1 + t2) > tol * std::max(1.0, std::abs(t1) + std::abs(t2))) {
            throw Error(ErrorKind::NotDancing, "dancing residual too large at vertex " + std::to_string(i));
        }
    }

    auto edge_scale = [](const QDanPoint& p, const QDanPoint& q) {
        return std::max({1.0, p.A.norm() * q.A.norm(), p.b.norm() + q.b.norm()});
    };

    HorizontalPolygon out;
    out.closed = pair.closed;
    const auto first = lift_inscribed_2gon(pair.A[0], pair.b[0], pair.A[1], pair.b[1], tol);
    out.points = {first.first, first.second};
    for (std::size_t k = 2; k < n; ++k) {
        const Extension e = extend_horizontal(out.points.back(), pair.A[k], pair.b[k]);
        if (e.residual > tol * edge_scale(out.points.back(), e.point)) {
            throw Error(ErrorKind::NotDancing, "lift is not horizontal at edge " + std::to_string(k - 1));
        }
        out.points.push_back(e.point);
    }
    if (pair.closed) {
        const Extension e = extend_horizontal(out.points.back(), pair.A[0], pair.b[0]);
        const double scale = edge_scale(out.points.back(), e.point);
        if (e.residual > tol * scale) throw Error(ErrorKind::ClosureFailure, "closing edge is not horizontal");
        if (e.point.distance(out.points.front()) > tol * scale) {
            throw Error(ErrorKind::ClosureFailure, "lift does not return to the first vertex");
        }
    }
    return out;
}

DancingPair project_polygon(const HorizontalPolygon& poly) {
    DancingPair pair;
    pair.closed = poly.closed;
    for (const auto& p : poly.points) {
        pair.A.push_back(p.A);
        pair.b.push_back(p.b);
    }
    return pair;
}

namespace {

// Conditioning threshold for accepting a sampled vertex.
constexpr double kSampleMargin = 0.05;
constexpr int kVertexAttempts = 200;
constexpr int kChainRestarts = 100;

double point_line_cos(const Vec3& A, const Covec3& b) {
    return std::abs(b.normalized().dot(A.normalized().transpose()));
}

// Next line b_{i+2} of an open dancing chain, fixed by inscription and the dancing condition.
std::optional<Covec3> next_dancing_line(const DancingPair& pair, std::size_t i) {
    const Vec3& Ai = pair.A[i];
    const Vec3& Ai1 = pair.A[i + 1];
    const Vec3& Ai2 = pair.A[i + 2];
    const Covec3 a_next = vec_cross(Ai1, Ai2);
    const Vec3 B_i = covec_cross(pair.b[i], pair.b[i + 1]);
    // B_{i+1} must lie on b_{i+1} and on the next edge.
    const Vec3 P = covec_cross(pair.b[i + 1], a_next);
    const Vec3 C = covec_cross(pair.b[i], a_next);
    double k;
    try {
        k = -cross_ratio(Ai1, P, Ai2, C, 1e-8);
    } catch (const Error&) {
        return std::nullopt;
    }
    // Write A_i = alpha A_{i+1} + beta B_i; then D = k alpha A_{i+1} + beta B_i.
    Eigen::Matrix<double, 3, 2> M;
    M.col(0) = Ai1;
    M.col(1) = B_i;
    const Eigen::Vector2d ab = M.colPivHouseholderQr().solve(Ai);
    if ((M * ab - Ai).norm() > 1e-9) return std::nullopt;
    const Vec3 D = k * ab(0) * Ai1 + ab(1) * B_i;
    const Covec3 next = vec_cross(P, D);
    if (next.norm() < 1e-10) return std::nullopt;
    return next.normalized();
}

std::optional<DancingPair> try_dancing_chain(std::size_t n, std::mt19937_64& rng) {
    DancingPair pair;
    pair.closed = false;
    for (int attempt = 0; attempt < kVertexAttempts && pair.size() < 2; ++attempt) {
        const Vec3 A0 = random_unit(rng), A1 = random_unit(rng);
        const Covec3 b0 = random_unit(rng).transpose();
        // b1 passes through b0 x a0, so the 2-gon is inscribed.
        const Vec3 P0 = covec_cross(b0, vec_cross(A0, A1));
        const Covec3 b1 = vec_cross(P0, random_unit(rng));
        if (vec_cross(A0, A1).norm() < kSampleMargin || b1.norm() < 1e-10) continue;
        if (point_line_cos(A0, b0) < kSampleMargin || point_line_cos(A1, b1) < kSampleMargin) continue;
        if (covec_cross(b0, b1.normalized()).norm() < kSampleMargin) continue;
        pair.A = {A0, A1};
        pair.b = {b0, b1.normalized()};
    }
    if (pair.size() < 2) return std::nullopt;

    while (pair.size() < n) {
        const std::size_t i = pair.size() - 2;
        bool placed = false;
        for (int attempt = 0; attempt < kVertexAttempts && !placed; ++attempt) {
            pair.A.push_back(random_unit(rng));
            const auto next = next_dancing_line(pair, i);
            if (next) {
                pair.b.push_back(*next);
                const bool ok = point_line_cos(pair.A[i + 2], pair.b[i + 2]) >= kSampleMargin &&
                                normalized_det(pair.A[i], pair.A[i + 1], pair.A[i + 2]) >= kSampleMargin &&
                                normalized_det(pair.b[i].transpose(), pair.b[i + 1].transpose(),
                                               pair.b[i + 2].transpose()) >= kSampleMargin;
                bool dancing = false;
                if (ok) {
                    try {
                        dancing = std::abs(dancing_residual(pair, i)) <= 1e-10;
                    } catch (const Error&) {
                    }
                }
                if (ok && dancing) {
                    placed = true;
                    continue;
                }
                pair.b.pop_back();
            }
            pair.A.pop_back();
        }
        if (!placed) return std::nullopt;
    }
    return pair;
}

}  // namespace

DancingPair random_dancing_chain(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "a chain needs at least two vertices");
    std::mt19937_64 rng(seed);
    for (int restart = 0; restart < kChainRestarts; ++restart) {
        auto pair = try_dancing_chain(n, rng);
        if (pair && nondegeneracy(*pair).max_inscribed <= 1e-10) return *pair;
    }
    throw Error(ErrorKind::SamplingExhausted, "no well-conditioned dancing chain found");
}

HorizontalPolygon random_horizontal_chain(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "empty chain");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);

    for (int restart = 0; restart < kChainRestarts; ++restart) {
        HorizontalPolygon poly;
        QDanPoint p0;
        p0.A = random_unit(rng);
        const Vec3 r = random_unit(rng);
        p0.b = (p0.A + (r - r.dot(p0.A) * p0.A)).transpose();
        poly.points.push_back(p0);

        bool ok = true;
        for (std::size_t k = 1; ok && k < n; ++k) {
            ok = false;
            for (int attempt = 0; attempt < kVertexAttempts && !ok; ++attempt) {
                const QDanPoint& p = poly.points.back();
                // Any point A' with b A' = 1 is joined to p by the horizontal segment
                // with b' = b + A x A'; pick its direction uniformly.
                const Vec3 d(nd(rng), nd(rng), nd(rng));
                const double bd = p.b.dot(d.transpose());
                if (std::abs(bd) < 1e-3 * p.b.norm() * d.norm()) continue;
                const Vec3 A = d / bd;
                const QDanPoint q{A, p.b + vec_cross(p.A, A)};
                if (point_line_cos(q.A, q.b) < kSampleMargin) continue;
                if (k >= 2) {
                    const QDanPoint& pp = poly.points[k - 2];
                    if (normalized_det(pp.A, p.A, q.A) < kSampleMargin) continue;
                    if (normalized_det(pp.b.transpose(), p.b.transpose(), q.b.transpose()) < kSampleMargin) continue;
                }
                poly.points.push_back(q);
                ok = true;
            }
        }
        if (ok) return poly;
    }
    throw Error(ErrorKind::SamplingExhausted, "no non-degenerate horizontal chain found");
}

QuadSolution solve_quadrilateral(const QDanPoint& q1, const QDanPoint& q3) {
    const Eigen::Matrix<double, 3, 2> K1 = kernel_basis(q1.b);
    const Eigen::Matrix<double, 3, 2> K3 = kernel_basis(q3.b);
    Eigen::Matrix<double, 6, 4> M;
    M.block<3, 2>(0, 0) = K1;
    M.block<3, 2>(0, 2) = -K3;
    M.block<3, 2>(3, 0) = cross_matrix(q1.A) * K1;
    M.block<3, 2>(3, 2) = -cross_matrix(q3.A) * K3;
    Eigen::Matrix<double, 6, 1> rhs;
    rhs << q3.A - q1.A, (q3.b - q1.b).transpose();
    const Eigen::Vector4d sol = M.colPivHouseholderQr().solve(rhs);
    QuadSolution out;
    out.q4 = step_along(q1, sol.head<2>());
    out.residual = (M * sol - rhs).norm();
    return out;
}

std::optional<PentagonSolution> solve_pentagon(const QDanPoint& q1, const QDanPoint& q3,
                                               const Eigen::Vector4d& start, int max_iter) {
    const Eigen::Matrix<double, 3, 2> K1 = kernel_basis(q1.b);
    const Eigen::Matrix<double, 3, 2> K3 = kernel_basis(q3.b);
    Eigen::Vector4d z = start;
    auto residual = [&](const QDanPoint& q4, const QDanPoint& q5) -> Vec3 {
        return (q5.b - q4.b).transpose() - q4.A.cross(q5.A);
    };
    for (int it = 0; it < max_iter; ++it) {
        const QDanPoint q4 = step_along(q3, z.head<2>());
        const QDanPoint q5 = step_along(q1, z.tail<2>());
        const Vec3 F = residual(q4, q5);
        if (F.norm() <= 1e-14 * std::max(1.0, z.norm() * z.norm())) break;
        Eigen::Matrix<double, 3, 4> J;
        for (int k = 0; k < 2; ++k) {
            J.col(k) = -q3.A.cross(K3.col(k)) - K3.col(k).cross(q5.A);
            J.col(2 + k) = q1.A.cross(K1.col(k)) - q4.A.cross(K1.col(k));
        }
        z -= J.completeOrthogonalDecomposition().solve(F);
        if (!z.allFinite() || z.norm() > 1e6) return std::nullopt;
    }
    PentagonSolution s;
    s.q4 = step_along(q3, z.head<2>());
    s.q5 = step_along(q1, z.tail<2>());
    s.residual = residual(s.q4, s.q5).norm();
    if (s.residual > 1e-12 * std::max(1.0, z.norm() * z.norm())) return std::nullopt;
    return s;
}

}  // namespace rolldance
