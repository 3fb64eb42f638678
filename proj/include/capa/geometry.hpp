// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace capa
{
    using Vec2 = Eigen::Vector2d;
    using Vec3 = Eigen::Vector3d;

    // Counterclockwise rotations about z (alpha), y (beta) and x (gamma), in radians.
    struct EulerAngles
    {
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;

        // Each angle wrapped into (-pi, pi].
        EulerAngles normalized() const;
    };

    // Orientation of the RX aperture. Columns are the RX principal axes e_x', e_y', e_z'
    // expressed in the global frame, so a point r in RX coordinates sits at o_r + E r.
    class RotationMatrix
    {
    public:
        RotationMatrix() : m_(Eigen::Matrix3d::Identity()) {}

        // Throws std::domain_error unless m is orthonormal with det +1 (tolerance 1e-9).
        explicit RotationMatrix(const Eigen::Matrix3d &m);

        const Eigen::Matrix3d &matrix() const { return m_; }

        // 2x2 block coupling the in-plane coordinates: [[e_xx, e_xz], [e_zx, e_zz]].
        Eigen::Matrix2d projected() const;

    private:
        Eigen::Matrix3d m_;
    };

    // Rectangular planar aperture, side lengths in meters along the local x and z axes.
    struct ApertureSpec
    {
        double lx = 0.0;
        double lz = 0.0;

        double area() const { return lx * lz; }
        double diagonal() const;
        bool contains(const Vec2 &p) const;
    };

    // TX aperture in the global x-z plane centered at the origin; RX aperture centered
    // at rx_center with orientation rx_orientation.
    class LinkGeometry
    {
    public:
        // Throws std::domain_error for nonpositive sides, non-finite values or D = 0.
        LinkGeometry(ApertureSpec tx, ApertureSpec rx, Vec3 rx_center, EulerAngles rx_orientation);

        const ApertureSpec &tx() const { return tx_; }
        const ApertureSpec &rx() const { return rx_; }
        const Vec3 &rx_center() const { return rx_center_; }
        const EulerAngles &rx_orientation() const { return orientation_; }
        const RotationMatrix &rotation() const { return rotation_; }

        // D = |o_r|.
        double distance() const { return distance_; }

        // max(diag(tx), diag(rx)) / D.
        double fresnel_ratio() const;

        // True when fresnel_ratio() exceeds fresnel_warning_threshold.
        bool fresnel_warning() const { return fresnel_ratio() > fresnel_warning_threshold; }

        static constexpr double fresnel_warning_threshold = 0.5;

    private:
        ApertureSpec tx_;
        ApertureSpec rx_;
        Vec3 rx_center_;
        EulerAngles orientation_;
        RotationMatrix rotation_;
        double distance_;
    };

    // E built from the Z-Y-X counterclockwise Euler convention. Throws std::domain_error
    // for non-finite angles.
    RotationMatrix rotation_from_euler(const EulerAngles &angles);

    // |det E'| = |e_xx e_zz - e_xz e_zx|, which never exceeds 1.
    double projected_submatrix_det(const RotationMatrix &E);

    // o_r + E [r_x, 0, r_z]^T. Throws std::domain_error if r lies outside the RX aperture.
    Vec3 rx_point_to_global(const LinkGeometry &geom, const Vec2 &r);

    // Global position of a TX-plane point: [t_x, 0, t_z]^T.
    inline Vec3 tx_point_to_global(const Vec2 &t) { return {t.x(), 0.0, t.y()}; }
}
