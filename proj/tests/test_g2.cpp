#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "rolldance/errors.hpp"
#include "rolldance/g2.hpp"

using namespace rolldance;

namespace {

std::mt19937_64 rng(2024);
std::normal_distribution<double> nd;

Vec3 rvec() { return Vec3(nd(rng), nd(rng), nd(rng)); }
Vec3 random_unit() { return rvec().normalized(); }
Quaternion random_quat() { return Quaternion(nd(rng), nd(rng), nd(rng), nd(rng)).normalized(); }

G2Param random_param() {
    G2Param g;
    g.T = Mat3::NullaryExpr([] { return nd(rng); });
    g.T -= (g.T.trace() / 3.0) * Mat3::Identity();
    g.Q = rvec();
    g.p = rvec().transpose();
    return g;
}

Mat3 random_symmetric_traceless() {
    Mat3 m = Mat3::NullaryExpr([] { return nd(rng); });
    m = (0.5 * (m + m.transpose())).eval();
    return m - (m.trace() / 3.0) * Mat3::Identity();
}

Octonion random_oct() { return Octonion::from_coords(Vec8::NullaryExpr([] { return nd(rng); })); }

ImOctonion random_im() { return ImOctonion::from_coords(Vec7::NullaryExpr([] { return nd(rng); })); }

double field_distance(const RollField& a, const RollField& b) {
    return (a.f - b.f).norm() + (a.g - b.g).norm() + std::abs(a.h - b.h);
}

QDanPoint flow_step(const G2Param& g, const QDanPoint& p, double h) {
    auto add = [](const QDanPoint& x, const DanTangent& t, double k) {
        return QDanPoint{x.A + k * t.dA, x.b + k * t.db};
    };
    const DanTangent k1 = qdan_field(g, p);
    const DanTangent k2 = qdan_field(g, add(p, k1, h / 2));
    const DanTangent k3 = qdan_field(g, add(p, k2, h / 2));
    const DanTangent k4 = qdan_field(g, add(p, k3, h));
    return QDanPoint{p.A + (h / 6) * (k1.dA + 2 * k2.dA + 2 * k3.dA + k4.dA),
                     p.b + (h / 6) * (k1.db + 2 * k2.db + 2 * k3.db + k4.db)};
}

}  // namespace

TEST_CASE("zero parameter acts trivially") {
    const ImOctonion z = random_im();
    CHECK(rho_apply(G2Param{}, z).norm() == 0.0);
    CHECK(rho_matrix(G2Param{}).norm() == 0.0);
    const DanTangent t = qdan_field(G2Param{}, QDanPoint{});
    CHECK(t.dA.norm() + t.db.norm() == 0.0);
    const RollField r = qroll_field(Mat3::Zero(), RollState{});
    CHECK(r.f.norm() + r.g.norm() + std::abs(r.h) == 0.0);
}

TEST_CASE("rho_apply example") {
    G2Param g;
    g.T = Vec3(1.0, -1.0, 0.0).asDiagonal();
    const ImOctonion z{0.0, Vec3::UnitX(), Covec3::Zero()};
    CHECK((rho_apply(g, z) - z).norm() == 0.0);
}

TEST_CASE("rho acts by derivations") {
    for (int k = 0; k < 500; ++k) {
        const G2Param g = random_param();
        const Octonion a = random_oct(), b = random_oct();
        const Octonion lhs = rho_apply(g, oct_mul(a, b));
        const Octonion rhs = oct_mul(rho_apply(g, a), b) + oct_mul(a, rho_apply(g, b));
        CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }
    // The real unit is killed.
    CHECK(rho_apply(random_param(), Octonion::one()).norm() == 0.0);
}

TEST_CASE("bracket matches the commutator") {
    G2Param a, b;
    a.T = random_symmetric_traceless();
    b.T = random_symmetric_traceless();
    const G2Param c = g2_bracket(a, b);
    CHECK((c.T - (a.T * b.T - b.T * a.T)).norm() <= 1e-12);
    CHECK(c.Q.norm() + c.p.norm() == 0.0);

    for (int k = 0; k < 200; ++k) {
        const G2Param g1 = random_param(), g2 = random_param();
        const G2Param g3 = g2_bracket(g1, g2);
        const auto m1 = rho_matrix(g1), m2 = rho_matrix(g2);
        CHECK((rho_matrix(g3) - (m1 * m2 - m2 * m1)).norm() <= 1e-10 * (1.0 + m1.norm() * m2.norm()));
        CHECK((g2_bracket(g2, g1) + g3).norm() <= 1e-12 * (1.0 + g3.norm()));
        CHECK(std::abs(g3.T.trace()) <= 1e-12 * (1.0 + g3.norm()));
    }
}

TEST_CASE("Jacobi identity") {
    for (int k = 0; k < 200; ++k) {
        const G2Param a = random_param(), b = random_param(), c = random_param();
        const G2Param j = g2_bracket(a, g2_bracket(b, c)) + g2_bracket(b, g2_bracket(c, a)) +
                          g2_bracket(c, g2_bracket(a, b));
        CHECK(j.norm() <= 1e-9 * (1.0 + a.norm() * b.norm() * c.norm()));
    }
}

TEST_CASE("rho is injective") {
    const auto basis = g2_basis();
    Eigen::Matrix<double, 49, 14> M;
    for (int i = 0; i < 14; ++i) {
        const auto m = rho_matrix(basis[i]);
        M.col(i) = Eigen::Map<const Eigen::Matrix<double, 49, 1>>(m.data());
        CHECK(std::abs(basis[i].T.trace()) == 0.0);
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 49, 14>> lu(M);
    CHECK(lu.rank() == 14);
}

TEST_CASE("rho preserves the octonion form") {
    for (int k = 0; k < 100; ++k) {
        const auto m = rho_matrix(random_param());
        const auto G = im_gram_matrix();
        CHECK((m.transpose() * G + G * m).norm() <= 1e-10 * (1.0 + m.norm()));
    }
}

TEST_CASE("qdan field is tangent to the quadric") {
    for (int k = 0; k < 200; ++k) {
        const G2Param g = random_param();
        const QDanPoint p = random_horizontal_chain(1, rng()).points[0];
        const DanTangent t = qdan_field(g, p);
        CHECK(std::abs(t.db.dot(p.A.transpose()) + p.b.dot(t.dA.transpose())) <=
              1e-10 * (1.0 + t.dA.norm() * p.b.norm() + t.db.norm() * p.A.norm()));
    }
}

TEST_CASE("SL3 slice is the diagonal action") {
    for (int k = 0; k < 50; ++k) {
        G2Param g;
        g.T = Mat3::NullaryExpr([] { return nd(rng); });
        g.T -= (g.T.trace() / 3.0) * Mat3::Identity();
        const QDanPoint p = random_horizontal_chain(1, rng()).points[0];
        const DanTangent t = qdan_field(g, p);
        CHECK((t.dA - g.T * p.A).norm() <= 1e-12 * (1.0 + t.dA.norm()));
        CHECK((t.db + p.b * g.T).norm() <= 1e-12 * (1.0 + t.db.norm()));
        // Against the derivative of (A, b) -> (e^{sT} A, b e^{-sT}).
        const double h = 1e-5;
        const Mat3 ep = (h * g.T).exp(), em = (-h * g.T).exp();
        const Vec3 dA = (ep * p.A - em * p.A) / (2 * h);
        const Covec3 db = (p.b * em - p.b * ep) / (2 * h);
        CHECK((t.dA - dA).norm() <= 1e-8);
        CHECK((t.db - db).norm() <= 1e-8);
    }
}

TEST_CASE("qdan flow preserves horizontal segments") {
    for (int k = 0; k < 50; ++k) {
        const G2Param g = random_param() * 0.5;
        const HorizontalPolygon seg = random_horizontal_chain(2, rng());
        QDanPoint a = seg.points[0], b = seg.points[1];
        for (int i = 0; i < 10; ++i) {
            a = flow_step(g, a, 1e-3);
            b = flow_step(g, b, 1e-3);
        }
        CHECK(a.quadric_residual() <= 1e-10);
        CHECK(horizontal_residual(a, b) <= 1e-8);
        CHECK(a.distance(seg.points[0]) > 1e-4);
    }
}

TEST_CASE("qroll closed form") {
    const RollState id{Vec3::UnitX(), Quaternion()};
    CHECK_THROWS_AS(qroll_field(Mat3::Identity(), id), rolldance::Error);
    Mat3 skew = Mat3::Zero();
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    try {
        qroll_field(skew, id);
        FAIL("expected NotSymmetricTraceless");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSymmetricTraceless);
    }

    for (int k = 0; k < 200; ++k) {
        const Mat3 T = random_symmetric_traceless();
        const RollState s{random_unit(), random_quat()};
        const RollField r = qroll_field(T, s);
        CHECK(std::abs(r.f.dot(s.v)) <= 1e-10 * (1.0 + r.f.norm()));
        CHECK(std::abs(s.q.w().dot(r.g) + s.q.s() * r.h) <= 1e-10 * (1.0 + r.g.norm()));
        const RollField n = qroll_field_numeric(G2Param{T, Vec3::Zero(), Covec3::Zero()}, s);
        CHECK(field_distance(r, n) <= 1e-10 * (1.0 + r.f.norm() + r.g.norm()));
    }
}

TEST_CASE("qroll field is phi-related to the octonion field") {
    const double h = 1e-4;
    for (int k = 0; k < 100; ++k) {
        const G2Param g = random_param();
        const RollState s{random_unit(), random_quat()};
        const RollField r = qroll_field_numeric(g, s);
        CHECK(std::abs(r.f.dot(s.v)) <= 1e-10 * (1.0 + r.f.norm()));
        CHECK(std::abs(s.q.w().dot(r.g) + s.q.s() * r.h) <= 1e-10 * (1.0 + r.g.norm()));

        const Quaternion dq(r.h, r.g);
        const ImOctonion dz = (phi((s.v + h * r.f).normalized(), (s.q + dq * h).normalized()) -
                               phi((s.v - h * r.f).normalized(), (s.q - dq * h).normalized())) *
                              (0.5 / h);
        const ImOctonion z = phi(s.v, s.q);
        const ImOctonion X = rho_apply(g, z);
        // dz must equal X up to a multiple of the Euler field z.
        const Vec7 d = dz.coords() - X.coords();
        const double lam = d.dot(z.coords()) / z.coords().squaredNorm();
        CHECK((d - lam * z.coords()).norm() <= 1e-6 * (1.0 + X.norm()));
    }
}

TEST_CASE("K action") {
    const RollState s{random_unit(), random_quat()};
    const RollState same = k_action(KElement{}, s);
    CHECK((same.v - s.v).norm() == 0.0);
    CHECK(quat_distance(same.q, s.q) == 0.0);

    for (int k = 0; k < 200; ++k) {
        const KElement a{random_quat(), random_quat()}, b{random_quat(), random_quat()};
        const RollState t{random_unit(), random_quat()};
        const RollState ab = k_action(KElement{a.q1 * b.q1, a.q2 * b.q2}, t);
        const RollState seq = k_action(a, k_action(b, t));
        CHECK((ab.v - seq.v).norm() <= 1e-12);
        CHECK(quat_distance(ab.q, seq.q) <= 1e-12);
        CHECK(std::abs(seq.v.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(seq.q.norm() - 1.0) <= 1e-12);
        CHECK((phi(seq.v, seq.q) - k_linear(a, phi(k_action(b, t).v, k_action(b, t).q))).norm() <= 1e-10);
        // Diagonal elements rotate v by conjugation.
        const RollState d = k_action(KElement{a.q1, a.q1}, t);
        CHECK((d.v - quat_rotate(a.q1, t.v)).norm() <= 1e-12);
        CHECK(quat_distance(d.q, a.q1 * t.q * a.q1.conj()) <= 1e-12);
    }
}

TEST_CASE("K action preserves rolling directions") {
    for (int k = 0; k < 200; ++k) {
        const KElement a{random_quat(), random_quat()};
        const Vec3 v = random_unit();
        const Quaternion q = random_quat();
        Vec3 vdot = rvec();
        vdot -= vdot.dot(v) * v;
        const Quaternion qdot = Quaternion::pure(4.0 * v.cross(vdot)) * q * 0.5;

        const RollState t = k_action(a, {v, q});
        const Vec3 tv = quat_rotate(a.q1, vdot);
        const Quaternion tq = a.q1 * qdot * a.q2.conj();
        const Quaternion spin = tq * t.q.conj() * 2.0;
        CHECK(std::abs(spin.s()) <= 1e-10);
        CHECK((4.0 * tv - spin.w().cross(t.v)).norm() <= 1e-10 * (1.0 + tv.norm()));
        CHECK(std::abs(spin.w().dot(t.v)) <= 1e-10 * (1.0 + tv.norm()));
    }
}

TEST_CASE("so4 embedding matches the infinitesimal K action") {
    CHECK(so4_embed(Vec3::Zero(), Vec3::Zero()).norm() == 0.0);
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
        const Vec3 v1 = rvec(), v2 = rvec();
        const G2Param g = so4_embed(v1, v2);
        CHECK(descends_to_base(g));
        const Octonion a = random_oct(), b = random_oct();
        CHECK((rho_apply(g, oct_mul(a, b)) - oct_mul(rho_apply(g, a), b) - oct_mul(a, rho_apply(g, b))).norm() <=
              1e-10 * (1.0 + a.norm() * b.norm() * g.norm()));

        const ImOctonion z = random_im();
        auto kt = [&](double t) {
            return KElement{quat_exp(v1.normalized(), t * v1.norm()), quat_exp(v2.normalized(), t * v2.norm())};
        };
        const ImOctonion dz = (k_linear(kt(h), z) - k_linear(kt(-h), z)) * (0.5 / h);
        CHECK((dz - rho_apply(g, z) * 0.5).norm() <= 1e-8 * (1.0 + dz.norm()));
    }
}

TEST_CASE("descent criterion") {
    G2Param sym;
    sym.T = random_symmetric_traceless();
    CHECK_FALSE(descends_to_base(sym));
    G2Param qp;
    qp.Q = Vec3::UnitX();
    qp.p = Covec3::UnitX();
    CHECK_FALSE(descends_to_base(qp));
    qp.p = -Covec3::UnitX();
    CHECK(descends_to_base(qp));
}

TEST_CASE("descending fields are invariant under q -> -q") {
    auto parity = [](const G2Param& g, const RollState& s) {
        const RollField a = qroll_field_numeric(g, s);
        const RollField b = qroll_field_numeric(g, RollState{s.v, -s.q});
        return (a.f - b.f).norm() + (a.g + b.g).norm() + std::abs(a.h + b.h);
    };
    for (int k = 0; k < 100; ++k) {
        const G2Param g = so4_embed(rvec(), rvec());
        const RollState s{random_unit(), random_quat()};
        CHECK(parity(g, s) <= 1e-9 * (1.0 + g.norm()));
    }
    G2Param bad;
    bad.T = random_symmetric_traceless();
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) worst = std::max(worst, parity(bad, RollState{random_unit(), random_quat()}));
    CHECK(worst > 1e-3);
}

TEST_CASE("tau involution") {
    for (int k = 0; k < 200; ++k) {
        const ImOctonion z = random_im();
        CHECK((tau_involution(tau_involution(z)) - z).norm() == 0.0);
        CHECK(std::abs(oct_form(tau_involution(z)) - oct_form(z)) <= 1e-12 * (1.0 + z.norm() * z.norm()));
        const Vec3 v = random_unit();
        const Quaternion q = random_quat();
        CHECK(ray_angle(tau_involution(phi(v, q)), phi(v, -q)) <= 1e-12);
    }
}
