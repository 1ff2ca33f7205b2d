#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kfgm/boundary.hpp"

using namespace kfgm;

namespace {

constexpr double kPi = std::numbers::pi;

BoundaryParams random_params(std::mt19937_64& rng, bool admissible) {
    std::normal_distribution<double> dist;
    std::uniform_real_distribution<double> uni(0.0, kPi);
    double m[4];
    double norm = 0.0;
    do {
        for (int k = 0; k < 4; ++k) m[k] = dist(rng);
        if (admissible) m[2] = 0.0;
        norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
    } while (norm < 1e-3);
    return BoundaryParams(uni(rng), m[0] / norm, m[1] / norm, m[2] / norm, m[3] / norm,
                          0.5 + uni(rng));
}

/// Boundary 4-vector [psi(b), psi(a), psi_x(b), psi_x(a)] consistent with the
/// defining relation of the family, built directly from U2.
Eigen::Vector4cd consistent_boundary_data(const BoundaryParams& p,
                                          std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    Eigen::Vector2cd y;
    y << Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng));
    const Eigen::Vector2cd z = unitary_2x2(p) * y;
    const Complex i(0.0, 1.0);
    Eigen::Vector4cd w;
    w(0) = 0.5 * (z(0) + y(0));                      // psi(b)
    w(1) = 0.5 * (z(1) + y(1));                      // psi(a)
    w(2) = (y(0) - z(0)) / (2.0 * i * p.lambda);     // psi_x(b)
    w(3) = (z(1) - y(1)) / (2.0 * i * p.lambda);     // psi_x(a)
    return w;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BoundaryParams(0.0, 0.9, 0, 0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(-0.1, 1, 0, 0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(3.5, 1, 0, 0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(0.0, 1, 0, 0, 0, -1.0), std::invalid_argument);
    // near-unit vectors are renormalized
    const BoundaryParams p(0.0, 1.0 + 5e-7, 0, 0, 0, 1.0);
    CHECK(p.m0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("preset table") {
    CHECK(preset_names().size() == 9);
    CHECK_THROWS_AS(preset("nonsense", 1.0), std::invalid_argument);

    const BoundaryParams d = preset("dirichlet", 1.0);
    CHECK(d.mu == doctest::Approx(kPi));
    CHECK(d.m0 == 1.0);
    CHECK(d.m1 == 0.0);

    const BoundaryParams ap = preset("antiperiodic", 1.0);
    CHECK(ap.mu == doctest::Approx(kPi / 2));
    CHECK(ap.m1 == -1.0);

    const BoundaryParams v7 = preset("case_vii_plus", 1.0);
    CHECK(v7.mu == 0.0);
    CHECK(v7.m2 == 1.0);
}

TEST_CASE("unitary 2x2 values") {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    CHECK((unitary_2x2(preset("dirichlet", 1.0)) + id).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((unitary_2x2(preset("neumann", 1.0)) - id).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::Matrix2cd swap;
    swap << 0, 1, 1, 0;
    CHECK((unitary_2x2(preset("periodic", 1.0)) - swap).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("unitarity over the whole family") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const BoundaryParams p = random_params(rng, trial % 2 == 0);
        const Eigen::Matrix2cd u = unitary_2x2(p);
        CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
        const Eigen::Matrix4cd u4 = unitary_4x4(p);
        CHECK((u4.adjoint() * u4 - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("unitary 4x4 closed form at m2 = 0") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const BoundaryParams p = random_params(rng, true);
        const Eigen::Matrix4cd u4 = unitary_4x4(p);
        const Complex phase = std::polar(1.0, p.mu);
        Eigen::Matrix4cd closed = Eigen::Matrix4cd::Zero();
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        closed.topLeftCorner<2, 2>() = Complex(p.m0, -p.m3) * id;
        closed.topRightCorner<2, 2>() = Complex(0.0, -p.m1) * id;
        closed.bottomLeftCorner<2, 2>() = Complex(0.0, -p.m1) * id;
        closed.bottomRightCorner<2, 2>() = Complex(p.m0, p.m3) * id;
        closed *= phase;
        CHECK((u4 - closed).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK((unitary_4x4(preset("neumann", 1.0)) - Eigen::Matrix4cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("admissibility equals complex symmetry of U2 and U4") {
    std::mt19937_64 rng(7);
    CHECK(is_majorana_admissible(preset("dirichlet", 1.0)));
    CHECK(!is_majorana_admissible(preset("case_vi_plus", 1.0)));
    CHECK(is_majorana_admissible(BoundaryParams(0.3, 1.0, 0, 1e-15, 0, 1.0), 1e-12));
    for (int trial = 0; trial < 100; ++trial) {
        const BoundaryParams p = random_params(rng, trial % 3 == 0);
        const Eigen::Matrix2cd u = unitary_2x2(p);
        const Eigen::Matrix4cd u4 = unitary_4x4(p);
        const bool sym2 = (u - u.transpose()).cwiseAbs().maxCoeff() < 1e-12;
        const bool sym4 = (u4 - u4.transpose()).cwiseAbs().maxCoeff() < 1e-12;
        CHECK(is_majorana_admissible(p) == sym2);
        CHECK(sym2 == sym4);
    }
}

TEST_CASE("constraint rows reproduce the named conditions") {
    SUBCASE("dirichlet") {
        const auto c = constraint_rows(preset("dirichlet", 1.0));
        // derivative block vanishes, value block is invertible
        CHECK(c.rows.rightCols<2>().cwiseAbs().maxCoeff() < 1e-15);
        Eigen::Vector4cd w;
        w << 0.0, 0.0, Complex(1.2, 0.3), Complex(-0.5, 2.0);
        CHECK((c.rows * w).cwiseAbs().maxCoeff() < 1e-15);
        w << 1.0, 0.0, 0.0, 0.0;
        CHECK((c.rows * w).cwiseAbs().maxCoeff() > 1.0);
    }

    SUBCASE("periodic accepts matched boundary values and derivatives") {
        const auto c = constraint_rows(preset("periodic", 1.0));
        Eigen::Vector4cd w;
        w << Complex(0.3, 1.0), Complex(0.3, 1.0), Complex(-2.0, 0.1),
            Complex(-2.0, 0.1);
        CHECK((c.rows * w).cwiseAbs().maxCoeff() < 1e-14);
        w(1) = Complex(0.4, 1.0);
        CHECK((c.rows * w).cwiseAbs().maxCoeff() > 1e-2);
    }

    SUBCASE("robin is psi(a) - lambda psi_x(a) = 0 and psi(b) + lambda psi_x(b) = 0") {
        const double lambda = 0.8;
        const auto c = constraint_rows(preset("robin", lambda));
        Eigen::Vector4cd w;
        const Complex va(0.7, -0.2), vb(1.1, 0.4);
        w << vb, va, -vb / lambda, va / lambda;
        CHECK((c.rows * w).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("rank is exactly 2 over the complex numbers") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const auto c = constraint_rows(random_params(rng, trial % 2 == 0));
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c.rows);
            CHECK(svd.singularValues()(1) > 1e-10 * svd.singularValues()(0));
        }
    }
}

TEST_CASE("constraint rows annihilate exactly the family-consistent data") {
    std::mt19937_64 rng(13);
    for (const auto& name : preset_names()) {
        const BoundaryParams p = preset(name, 0.75);
        const auto c = constraint_rows(p);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const Eigen::Vector4cd w = consistent_boundary_data(p, rng);
            const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
            worst = std::max(worst, (c.rows * w).cwiseAbs().maxCoeff() / scale);
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("real constraint rank distinguishes the admissible family") {
    CHECK(real_constraint_rank(preset("dirichlet", 1.0)) == 2);
    CHECK(real_constraint_rank(preset("neumann", 1.0)) == 2);
    CHECK(real_constraint_rank(preset("robin", 1.0)) == 2);
    CHECK(real_constraint_rank(preset("periodic", 1.0)) == 2);
    CHECK(real_constraint_rank(preset("antiperiodic", 1.0)) == 2);
    CHECK(real_constraint_rank(preset("case_vi_plus", 1.0)) == 4);
    CHECK(real_constraint_rank(preset("case_vi_minus", 1.0)) == 4);
    CHECK(real_constraint_rank(preset("case_vii_plus", 1.0)) == 4);
    CHECK(real_constraint_rank(preset("case_vii_minus", 1.0)) == 4);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(real_constraint_rank(random_params(rng, true)) == 2);
}

TEST_CASE("boundary split classifies the presets") {
    SUBCASE("dirichlet is fully essential") {
        const auto s = split_boundary(preset("dirichlet", 1.0));
        CHECK(s.essential.size() == 2);
        CHECK(s.natural.empty());
    }
    SUBCASE("neumann is fully natural with zero robin coefficient") {
        const auto s = split_boundary(preset("neumann", 1.0));
        CHECK(s.essential.empty());
        REQUIRE(s.natural.size() == 2);
        CHECK(std::abs(s.natural[0].robin) < 1e-15);
        CHECK(std::abs(s.natural[1].robin) < 1e-15);
    }
    SUBCASE("robin carries -1/lambda on both channels") {
        const double lambda = 0.4;
        const auto s = split_boundary(preset("robin", lambda));
        REQUIRE(s.natural.size() == 2);
        CHECK(s.natural[0].robin == doctest::Approx(-1.0 / lambda));
        CHECK(s.natural[1].robin == doctest::Approx(-1.0 / lambda));
    }
    SUBCASE("periodic has one essential and one free channel") {
        const auto s = split_boundary(preset("periodic", 1.0));
        CHECK(s.essential.size() == 1);
        REQUIRE(s.natural.size() == 1);
        CHECK(std::abs(s.natural[0].robin) < 1e-15);
        // essential direction (1,-1)/sqrt(2): boundary values must match
        const Eigen::Vector2cd e = s.essential[0];
        CHECK(std::abs(std::abs(e(0)) - std::abs(e(1))) < 1e-12);
        CHECK(std::abs(e(0) + e(1)) < 1e-12);  // up to global phase
    }
}
