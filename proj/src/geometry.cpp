// SPDX-License-Identifier: Apache-2.0
#include "capa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace capa
{
    namespace
    {
        double wrap_angle(double a)
        {
            constexpr double two_pi = 2.0 * std::numbers::pi;
            double w = std::remainder(a, two_pi); // [-pi, pi]
            if (w <= -std::numbers::pi)
                w += two_pi;
            return w;
        }

        // Points on the aperture rim may come back from quadrature or user input with
        // a rounding error of a few ulps.
        constexpr double rim_slack = 1e-12;
    }

    EulerAngles EulerAngles::normalized() const
    {
        return {wrap_angle(alpha), wrap_angle(beta), wrap_angle(gamma)};
    }

    RotationMatrix::RotationMatrix(const Eigen::Matrix3d &m) : m_(m)
    {
        if (!m.allFinite())
            throw std::domain_error("RotationMatrix: non-finite entry");
        const double orth = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
        if (orth > 1e-9 || std::abs(m.determinant() - 1.0) > 1e-9)
            throw std::domain_error("RotationMatrix: matrix is not a proper rotation");
    }

    Eigen::Matrix2d RotationMatrix::projected() const
    {
        Eigen::Matrix2d p;
        p << m_(0, 0), m_(0, 2),
            m_(2, 0), m_(2, 2);
        return p;
    }

    double ApertureSpec::diagonal() const { return std::hypot(lx, lz); }

    bool ApertureSpec::contains(const Vec2 &p) const
    {
        const double hx = 0.5 * lx * (1.0 + rim_slack);
        const double hz = 0.5 * lz * (1.0 + rim_slack);
        return std::abs(p.x()) <= hx && std::abs(p.y()) <= hz;
    }

    LinkGeometry::LinkGeometry(ApertureSpec tx, ApertureSpec rx, Vec3 rx_center, EulerAngles rx_orientation)
        : tx_(tx), rx_(rx), rx_center_(rx_center), orientation_(rx_orientation),
          rotation_(rotation_from_euler(rx_orientation)), distance_(rx_center.norm())
    {
        auto check_side = [](double v, const char *name)
        {
            if (!std::isfinite(v) || v <= 0.0)
                throw std::domain_error(std::string("LinkGeometry: aperture side ") + name + " must be positive and finite");
        };
        check_side(tx_.lx, "tx.lx");
        check_side(tx_.lz, "tx.lz");
        check_side(rx_.lx, "rx.lx");
        check_side(rx_.lz, "rx.lz");
        if (!rx_center_.allFinite())
            throw std::domain_error("LinkGeometry: non-finite rx center");
        if (!(distance_ > 0.0))
            throw std::domain_error("LinkGeometry: RX center coincides with TX center (D = 0)");
    }

    double LinkGeometry::fresnel_ratio() const
    {
        return std::max(tx_.diagonal(), rx_.diagonal()) / distance_;
    }

    RotationMatrix rotation_from_euler(const EulerAngles &angles)
    {
        if (!std::isfinite(angles.alpha) || !std::isfinite(angles.beta) || !std::isfinite(angles.gamma))
            throw std::domain_error("rotation_from_euler: non-finite angle");

        const double ca = std::cos(angles.alpha), sa = std::sin(angles.alpha);
        const double cb = std::cos(angles.beta), sb = std::sin(angles.beta);
        const double cg = std::cos(angles.gamma), sg = std::sin(angles.gamma);

        // Rows of E^T, i.e. the standard z-y-x product Rz(alpha) Ry(beta) Rx(gamma).
        Eigen::Matrix3d Et;
        Et << ca * cb, ca * sb * sg - sa * cg, ca * sb * cg + sa * sg,
            sa * cb, sa * sb * sg + ca * cg, sa * sb * cg - ca * sg,
            -sb, cb * sg, cb * cg;
        return RotationMatrix(Et.transpose());
    }

    double projected_submatrix_det(const RotationMatrix &E)
    {
        const auto &m = E.matrix();
        const double det = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        // A 2x2 minor of an orthogonal matrix is bounded by 1; clamp rounding overshoot.
        return std::min(std::abs(det), 1.0);
    }

    Vec3 rx_point_to_global(const LinkGeometry &geom, const Vec2 &r)
    {
        if (!geom.rx().contains(r))
            throw std::domain_error("rx_point_to_global: point outside the RX aperture");
        return geom.rx_center() + geom.rotation().matrix() * Vec3(r.x(), 0.0, r.y());
    }
}
