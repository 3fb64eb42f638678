// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "capa/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace capa;
using Catch::Matchers::WithinAbs;

namespace
{
    constexpr double pi = std::numbers::pi;

    LinkGeometry broadside(double L, double D, EulerAngles e = {})
    {
        return LinkGeometry({L, L}, {L, L}, Vec3(0.0, D, 0.0), e);
    }
}

TEST_CASE("rotation_from_euler - zero rotation is identity")
{
    const auto E = rotation_from_euler({0.0, 0.0, 0.0});
    CHECK((E.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation_from_euler - alpha = pi/2 matches the hand-substituted E^T")
{
    const auto E = rotation_from_euler({pi / 2.0, 0.0, 0.0});
    Eigen::Matrix3d expected_t;
    expected_t << 0, -1, 0,
        1, 0, 0,
        0, 0, 1;
    CHECK((E.matrix().transpose() - expected_t).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation_from_euler - alpha = gamma = pi/4 is orthonormal")
{
    const auto E = rotation_from_euler({pi / 4.0, 0.0, pi / 4.0});
    const Eigen::Matrix3d m = E.matrix();
    // Explicit triple loop instead of Eigen's product as an independent check.
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += m(k, i) * m(k, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-14);
}

TEST_CASE("rotation_from_euler - rejects non-finite angles")
{
    CHECK_THROWS_AS(rotation_from_euler({std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(rotation_from_euler({0.0, std::numeric_limits<double>::infinity(), 0.0}), std::domain_error);
}

TEST_CASE("rotation_from_euler - random angles give proper rotations")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-4.0 * pi, 4.0 * pi);
    for (int trial = 0; trial < 500; ++trial)
    {
        const EulerAngles e{ang(rng), ang(rng), ang(rng)};
        const Eigen::Matrix3d m = rotation_from_euler(e).matrix();
        CHECK((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((m * m.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("EulerAngles::normalized wraps into (-pi, pi]")
{
    const auto n = EulerAngles{3.0 * pi, -pi, 0.5}.normalized();
    CHECK_THAT(n.alpha, WithinAbs(pi, 1e-12));
    CHECK_THAT(n.beta, WithinAbs(pi, 1e-12));
    CHECK(n.gamma == 0.5);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-20.0, 20.0);
    for (int i = 0; i < 200; ++i)
    {
        const EulerAngles e{ang(rng), ang(rng), ang(rng)};
        const auto w = e.normalized();
        for (double a : {w.alpha, w.beta, w.gamma})
        {
            CHECK(a > -pi);
            CHECK(a <= pi);
        }
        // Same rotation after wrapping.
        CHECK((rotation_from_euler(e).matrix() - rotation_from_euler(w).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("RotationMatrix - rejects non-rotations")
{
    Eigen::Matrix3d reflect = Eigen::Matrix3d::Identity();
    reflect(0, 0) = -1.0;
    CHECK_THROWS_AS(RotationMatrix(reflect), std::domain_error);
    CHECK_THROWS_AS(RotationMatrix(2.0 * Eigen::Matrix3d::Identity()), std::domain_error);
}

TEST_CASE("projected_submatrix_det - examples")
{
    CHECK(projected_submatrix_det(RotationMatrix()) == 1.0);
    CHECK_THAT(projected_submatrix_det(rotation_from_euler({pi / 4.0, 0.0, pi / 4.0})), WithinAbs(0.5, 1e-15));
    CHECK_THAT(projected_submatrix_det(rotation_from_euler({pi / 2.0, 0.0, pi / 2.0})), WithinAbs(0.0, 1e-15));
}

TEST_CASE("projected_submatrix_det - closed form and bound over random angles")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int i = 0; i < 2000; ++i)
    {
        const double a = ang(rng), b = ang(rng), g = ang(rng);
        const double det = projected_submatrix_det(rotation_from_euler({a, b, g}));
        const double closed = std::abs(std::cos(a) * std::cos(g) + std::sin(a) * std::sin(g) * std::sin(b));
        CHECK_THAT(det, WithinAbs(closed, 1e-12));
        CHECK(det <= 1.0 + 1e-12);
    }
}

TEST_CASE("projected_submatrix_det - pure beta tilt keeps the parallel plateau")
{
    for (double beta = -3.0; beta <= 3.0; beta += 0.25)
        CHECK_THAT(projected_submatrix_det(rotation_from_euler({0.0, beta, 0.0})), WithinAbs(1.0, 1e-12));
}

TEST_CASE("LinkGeometry - validation and Fresnel ratio")
{
    CHECK_THROWS_AS(LinkGeometry({0.0, 1.0}, {1.0, 1.0}, Vec3(0, 10, 0), {}), std::domain_error);
    CHECK_THROWS_AS(LinkGeometry({1.0, 1.0}, {1.0, -1.0}, Vec3(0, 10, 0), {}), std::domain_error);
    CHECK_THROWS_AS(LinkGeometry({1.0, 1.0}, {1.0, 1.0}, Vec3::Zero(), {}), std::domain_error);

    const auto g = broadside(10.0, 50.0);
    CHECK(g.distance() == 50.0);
    CHECK_THAT(g.fresnel_ratio(), WithinAbs(std::sqrt(200.0) / 50.0, 1e-15));
    CHECK_FALSE(g.fresnel_warning());
    CHECK(broadside(10.0, 25.0).fresnel_warning());
}

TEST_CASE("rx_point_to_global - examples")
{
    const double D = 50.0;
    const auto g = broadside(10.0, D);
    CHECK((rx_point_to_global(g, Vec2(0, 0)) - Vec3(0, D, 0)).norm() == 0.0);
    CHECK((rx_point_to_global(g, Vec2(1.5, -2.0)) - Vec3(1.5, D, -2.0)).norm() == 0.0);

    // alpha = pi/2: E = [[0,1,0],[-1,0,0],[0,0,1]], so E [a,0,b] = [0,-a,b].
    const auto rot = broadside(10.0, D, {pi / 2.0, 0.0, 0.0});
    const Vec3 p = rx_point_to_global(rot, Vec2(2.0, 3.0));
    CHECK((p - Vec3(0.0, D - 2.0, 3.0)).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(rx_point_to_global(g, Vec2(5.1, 0.0)), std::domain_error);
    CHECK_NOTHROW(rx_point_to_global(g, Vec2(5.0, -5.0)));
}

TEST_CASE("rx_point_to_global - preserves pairwise distances")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-pi, pi);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const LinkGeometry g({4.0, 4.0}, {4.0, 4.0}, Vec3(1.0, 30.0, -2.0), {ang(rng), ang(rng), ang(rng)});
        const Vec2 a(pos(rng), pos(rng)), b(pos(rng), pos(rng));
        const double local = (a - b).norm();
        const double global = (rx_point_to_global(g, a) - rx_point_to_global(g, b)).norm();
        CHECK_THAT(global, WithinAbs(local, 1e-12));
    }
}
