#include <catch_amalgamated.hpp>

#include <random>

#include "rolldance/bridge.hpp"
#include "rolldance/errors.hpp"
#include "rolldance/octonion.hpp"

using namespace rolldance;

namespace {

std::mt19937_64 rng(42);
std::normal_distribution<double> nd;

Octonion random_oct() { return Octonion::from_coords(Vec8::NullaryExpr([] { return nd(rng); })); }

// Random null imaginary octonion: pick A, b with b A = x^2.
ImOctonion random_null() {
    ImOctonion z;
    z.x = nd(rng);
    z.A = Vec3(nd(rng), nd(rng), nd(rng));
    Covec3 b(nd(rng), nd(rng), nd(rng));
    b -= (b.dot(z.A.transpose()) / z.A.squaredNorm()) * z.A.transpose();
    z.b = b + (z.x * z.x / z.A.squaredNorm()) * z.A.transpose();
    return z;
}

}  // namespace

TEST_CASE("unit and null examples") {
    const Octonion z = random_oct();
    CHECK((oct_mul(Octonion::one(), z) - z).norm() <= 1e-15);
    CHECK((oct_mul(z, Octonion::one()) - z).norm() <= 1e-15);
    const Octonion n{0.0, Vec3(2, 0, 0), Covec3::Zero(), 0.0};
    CHECK(oct_mul(n, n).norm() == 0.0);
    CHECK(oct_form(ImOctonion{1.0, Vec3::UnitX(), Covec3::UnitX()}) == 0.0);
    CHECK(oct_form(Octonion::one()) == 1.0);
    CHECK(oct_form(n) == 0.0);
}

TEST_CASE("conjugation") {
    CHECK((oct_conj(Octonion::one()) - Octonion::one()).norm() == 0.0);
    const Octonion z = random_oct();
    CHECK((oct_conj(oct_conj(z)) - z).norm() == 0.0);
    const ImOctonion im{0.7, Vec3(1, 2, 3), Covec3(-1, 0.5, 2)};
    CHECK((oct_conj(im.full()) + im.full()).norm() == 0.0);
}

TEST_CASE("algebra identities on random octonions") {
    for (int k = 0; k < 500; ++k) {
        const Octonion z = random_oct(), zp = random_oct();
        const Octonion zz = oct_mul(z, z);
        CHECK((oct_mul(z, oct_mul(z, zp)) - oct_mul(zz, zp)).norm() <= 1e-10);
        CHECK((oct_mul(oct_mul(zp, z), z) - oct_mul(zp, zz)).norm() <= 1e-10);
        CHECK((oct_conj(oct_mul(z, zp)) - oct_mul(oct_conj(zp), oct_conj(z))).norm() <= 1e-12);
        CHECK((oct_mul(z, oct_conj(z)) - Octonion::one() * oct_form(z)).norm() <= 1e-12);
    }
}

TEST_CASE("form on Im(O) has signature (3,4)") {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 7, 7>> es(im_gram_matrix());
    int pos = 0, neg = 0;
    for (int i = 0; i < 7; ++i) (es.eigenvalues()(i) > 0 ? pos : neg)++;
    CHECK(pos == 3);
    CHECK(neg == 4);
    for (int k = 0; k < 50; ++k) {
        const ImOctonion z = ImOctonion::from_coords(Vec7::NullaryExpr([] { return nd(rng); }));
        CHECK(std::abs(z.coords().dot(im_gram_matrix() * z.coords()) - oct_form(z)) <= 1e-12);
    }
}

TEST_CASE("annihilator examples") {
    const ImOctonion z{0.0, Vec3(2, 0, 0), Covec3::Zero()};
    const auto basis = annihilator_basis(z);
    REQUIRE(basis.size() == 3);
    Eigen::Matrix<double, 7, 4> span;
    for (int i = 0; i < 3; ++i) span.col(i) = basis[i].coords();
    span.col(3) = z.coords();
    Eigen::FullPivLU<Eigen::Matrix<double, 7, 4>> lu(span);
    lu.setThreshold(1e-10);
    CHECK(lu.rank() == 3);

    const ImOctonion w = iota(QDanPoint{Vec3::UnitX(), Covec3::UnitX()});
    const auto bw = annihilator_basis(w);
    REQUIRE(bw.size() == 3);
    for (const auto& b : bw) CHECK(omega_eval(w, b).norm() <= 1e-10);
}

TEST_CASE("annihilator errors") {
    try {
        annihilator_basis(ImOctonion{1.0, Vec3::UnitX(), Covec3::UnitY()});
        FAIL("expected NotNull");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotNull);
    }
    try {
        annihilator_basis(ImOctonion{});
        FAIL("expected ZeroOctonion");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroOctonion);
    }
}

TEST_CASE("annihilators at random null points are 3-dimensional") {
    for (int k = 0; k < 200; ++k) {
        const ImOctonion z = random_null();
        const auto basis = annihilator_basis(z);
        REQUIRE(basis.size() == 3);
        for (const auto& b : basis) CHECK(omega_eval(z, b).norm() <= 1e-10 * z.norm());
    }
}

TEST_CASE("omega vanishes radially and along horizontal directions") {
    const ImOctonion z = random_null();
    CHECK(omega_eval(z, z).norm() <= 1e-12 * z.norm() * z.norm());
    CHECK(is_oct_horizontal(z, z * 3.0));

    // Direction (e2, e^3) at (e1, e^1) in the chart x = 1.
    const ImOctonion base = iota(QDanPoint{Vec3::UnitX(), Covec3::UnitX()});
    const ImOctonion dir{0.0, Vec3::UnitY(), Covec3::UnitZ()};
    CHECK(omega_eval(base, dir).norm() <= 1e-15);
    CHECK(is_oct_horizontal(base, dir));
    const ImOctonion bad{0.0, Vec3::UnitZ(), Covec3::UnitZ()};
    CHECK_FALSE(is_oct_horizontal(base, bad));

    CHECK(omega_eval(ImOctonion{}, dir).norm() == 0.0);
}

TEST_CASE("horizontality rejects a radial-looking but non-tangent direction") {
    // At (0, 2e1; 0, 0) the direction (1, 0; 0, -1) has z dz with zero real and
    // imaginary parts proportional to z, yet dx != 0.
    const ImOctonion z{0.0, Vec3(2, 0, 0), Covec3::Zero()};
    const ImOctonion dz{1.0, Vec3::Zero(), Covec3::Zero()};
    CHECK_FALSE(is_oct_horizontal(z, dz));
}
