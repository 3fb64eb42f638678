// SPDX-License-Identifier: Apache-2.0
#include "capa/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace capa
{
    namespace
    {
        constexpr cplx minus_j{0.0, -1.0};

        double first_order_weight(double D) { return 1.0 / D - 1.0 / (2.0 * D * D); }
    }

    Medium Medium::from_frequency(double fc_hz)
    {
        if (!std::isfinite(fc_hz) || fc_hz <= 0.0)
            throw std::domain_error("Medium: carrier frequency must be positive");
        Medium m;
        m.fc = fc_hz;
        m.lambda = speed_of_light / fc_hz;
        m.k0 = 2.0 * std::numbers::pi / m.lambda;
        return m;
    }

    Medium Medium::from_wavelength(double lambda_m)
    {
        if (!std::isfinite(lambda_m) || lambda_m <= 0.0)
            throw std::domain_error("Medium: wavelength must be positive");
        Medium m;
        m.lambda = lambda_m;
        m.fc = speed_of_light / lambda_m;
        m.k0 = 2.0 * std::numbers::pi / lambda_m;
        return m;
    }

    std::string_view to_string(KernelKind kind)
    {
        switch (kind)
        {
        case KernelKind::Exact:
            return "exact";
        case KernelKind::Fresnel:
            return "fresnel";
        case KernelKind::Reduced:
            return "reduced";
        }
        return "unknown";
    }

    KernelKind kernel_kind_from_string(std::string_view name)
    {
        if (name == "exact")
            return KernelKind::Exact;
        if (name == "fresnel")
            return KernelKind::Fresnel;
        if (name == "reduced")
            return KernelKind::Reduced;
        throw std::invalid_argument("unknown kernel kind '" + std::string(name) + "' (expected exact|fresnel|reduced)");
    }

    double exact_distance(const LinkGeometry &geom, const Vec2 &r, const Vec2 &t)
    {
        const Vec3 d = geom.rx_center() + geom.rotation().matrix() * Vec3(r.x(), 0.0, r.y()) - tx_point_to_global(t);
        const double dist = d.norm();
        if (!(dist > 0.0))
            throw std::domain_error("exact_distance: TX and RX points coincide");
        return dist;
    }

    double fresnel_distance(const LinkGeometry &geom, const Vec2 &r, const Vec2 &t)
    {
        const double D = geom.distance();
        const Vec3 d = geom.rotation().matrix() * Vec3(r.x(), 0.0, r.y()) - tx_point_to_global(t);
        const double proj = geom.rx_center().dot(d);
        return D * (1.0 + proj / (D * D) + d.squaredNorm() / (2.0 * D * D) - proj / (2.0 * D * D * D));
    }

    cplx bilinear_phase_kernel(double coupling, const Eigen::Matrix2d &projected, const Vec2 &r, const Vec2 &t)
    {
        const double phase = coupling * t.dot(projected * r);
        return std::polar(1.0, phase);
    }

    double fresnel_amplitude(const Medium &med, const LinkGeometry &geom)
    {
        return med.eta0 * med.k0 / (4.0 * std::numbers::pi * geom.distance());
    }

    cplx fresnel_constant(const Medium &med, const LinkGeometry &geom)
    {
        return minus_j * fresnel_amplitude(med, geom) * std::polar(1.0, -med.k0 * geom.distance());
    }

    cplx kernel_value(KernelKind kind, const Medium &med, const LinkGeometry &geom, const Vec2 &r, const Vec2 &t)
    {
        switch (kind)
        {
        case KernelKind::Exact:
        {
            const double dist = exact_distance(geom, r, t);
            return minus_j * (med.eta0 * med.k0 / (4.0 * std::numbers::pi * dist)) * std::polar(1.0, -med.k0 * dist);
        }
        case KernelKind::Fresnel:
            return minus_j * fresnel_amplitude(med, geom) * std::polar(1.0, -med.k0 * fresnel_distance(geom, r, t));
        case KernelKind::Reduced:
            return bilinear_phase_kernel(med.k0 / geom.distance(), geom.rotation().projected(), r, t);
        }
        throw std::invalid_argument("kernel_value: invalid kernel kind");
    }

    // Expanding |E r - t|^2 = |r|^2 + |t|^2 - 2 t^T E r splits the Fresnel phase into
    // an RX-only part, a TX-only part and the bilinear cross term.
    cplx rx_factor(const Medium &med, const LinkGeometry &geom, const Vec2 &r)
    {
        const double D = geom.distance();
        const Vec3 er = geom.rotation().matrix() * Vec3(r.x(), 0.0, r.y());
        const double phase = geom.rx_center().dot(er) * first_order_weight(D) + r.squaredNorm() / (2.0 * D);
        return std::polar(1.0, -med.k0 * phase);
    }

    cplx tx_factor(const Medium &med, const LinkGeometry &geom, const Vec2 &t)
    {
        const double D = geom.distance();
        const double phase = -geom.rx_center().dot(tx_point_to_global(t)) * first_order_weight(D) + t.squaredNorm() / (2.0 * D);
        return std::polar(1.0, -med.k0 * phase);
    }

    UnimodularFactors unimodular_factors(const Medium &med, const LinkGeometry &geom, const Vec2 &r, const Vec2 &t)
    {
        return {rx_factor(med, geom, r), tx_factor(med, geom, t)};
    }
}
