// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/geometry.hpp"

#include <complex>
#include <string_view>

namespace capa
{
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0;         // m/s
    inline constexpr double free_space_impedance = 376.730313668; // ohms

    // Propagation medium. Construct through from_frequency / from_wavelength so that
    // lambda = c / fc and k0 = 2 pi / lambda always hold.
    struct Medium
    {
        double fc = 0.0;     // Hz
        double lambda = 0.0; // m
        double k0 = 0.0;     // rad/m
        double eta0 = free_space_impedance;

        static Medium from_frequency(double fc_hz);
        static Medium from_wavelength(double lambda_m);
    };

    // Exact: spherical wave with true distance in phase and amplitude.
    // Fresnel: constant amplitude 1/D, phase from the second-order distance expansion.
    // Reduced: unimodular bilinear phase exp(+j k0/D t^T E' r); dimensionless.
    enum class KernelKind
    {
        Exact,
        Fresnel,
        Reduced
    };

    std::string_view to_string(KernelKind kind);

    // Throws std::invalid_argument for unknown names. Accepts "exact", "fresnel", "reduced".
    KernelKind kernel_kind_from_string(std::string_view name);

    // |o_r + E [r_x,0,r_z] - [t_x,0,t_z]|. Throws std::domain_error if the points coincide.
    double exact_distance(const LinkGeometry &geom, const Vec2 &r, const Vec2 &t);

    // Second-order expansion of exact_distance around D, with d = E r - t:
    //   D (1 + o_r.d / D^2 + |d|^2 / (2 D^2) - o_r.d / (2 D^3)).
    double fresnel_distance(const LinkGeometry &geom, const Vec2 &r, const Vec2 &t);

    // exp(+j coupling [t_x, t_z] E' [r_x, r_z]^T).
    cplx bilinear_phase_kernel(double coupling, const Eigen::Matrix2d &projected, const Vec2 &r, const Vec2 &t);

    cplx kernel_value(KernelKind kind, const Medium &med, const LinkGeometry &geom, const Vec2 &r, const Vec2 &t);

    // Constant removed from the Fresnel kernel: -j eta0 k0 exp(-j k0 D) / (4 pi D).
    cplx fresnel_constant(const Medium &med, const LinkGeometry &geom);

    // Amplitude eta0 k0 / (4 pi D) shared by every Fresnel kernel sample.
    double fresnel_amplitude(const Medium &med, const LinkGeometry &geom);

    struct UnimodularFactors
    {
        cplx u; // RX-side factor
        cplx v; // TX-side factor
    };

    // Fresnel(r, t) = fresnel_constant * u(r) * Reduced(r, t) * v(t) with |u| = |v| = 1.
    UnimodularFactors unimodular_factors(const Medium &med, const LinkGeometry &geom, const Vec2 &r, const Vec2 &t);

    // The two halves of unimodular_factors, usable per grid node.
    cplx rx_factor(const Medium &med, const LinkGeometry &geom, const Vec2 &r);
    cplx tx_factor(const Medium &med, const LinkGeometry &geom, const Vec2 &t);
}
