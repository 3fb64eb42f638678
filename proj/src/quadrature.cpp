// SPDX-License-Identifier: Apache-2.0
#include "capa/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capa
{
    namespace
    {
        struct LegendreEval
        {
            double value;
            double derivative;
        };

        // P_n(x) and P_n'(x) by the three-term recurrence; x strictly inside (-1, 1).
        LegendreEval legendre(std::size_t n, double x)
        {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            const double nd = static_cast<double>(n);
            return {p1, nd * (x * p1 - p0) / (x * x - 1.0)};
        }
    }

    GaussLegendreRule gauss_legendre(std::size_t n)
    {
        if (n == 0)
            throw std::domain_error("gauss_legendre: need at least one node");

        GaussLegendreRule rule;
        rule.nodes.assign(n, 0.0);
        rule.weights.assign(n, 0.0);

        const double nd = static_cast<double>(n);
        for (std::size_t i = 0; i < (n + 1) / 2; ++i)
        {
            // Tricomi initial guess for the i-th largest root, refined by Newton.
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
            for (int iter = 0; iter < 100; ++iter)
            {
                const LegendreEval p = legendre(n, x);
                const double dx = p.value / p.derivative;
                x -= dx;
                if (std::abs(dx) <= 1e-16)
                    break;
            }
            const double dp = legendre(n, x).derivative;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1)
            rule.nodes[n / 2] = 0.0;
        return rule;
    }

    Vec2 QuadratureGrid::point(std::size_t index) const
    {
        const std::size_t nz = nodes_z.size();
        return {nodes_x[index / nz], nodes_z[index % nz]};
    }

    double QuadratureGrid::weight(std::size_t index) const
    {
        const std::size_t nz = nodes_z.size();
        return weights_x[index / nz] * weights_z[index % nz];
    }

    std::vector<Vec2> QuadratureGrid::points() const
    {
        std::vector<Vec2> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back(point(i));
        return out;
    }

    std::vector<double> QuadratureGrid::weights() const
    {
        std::vector<double> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back(weight(i));
        return out;
    }

    double QuadratureGrid::total_weight() const
    {
        double sx = 0.0, sz = 0.0;
        for (double w : weights_x)
            sx += w;
        for (double w : weights_z)
            sz += w;
        return sx * sz;
    }

    QuadratureGrid QuadratureGrid::scaled(double factor) const
    {
        if (!std::isfinite(factor) || factor <= 0.0)
            throw std::domain_error("QuadratureGrid::scaled: factor must be positive");
        QuadratureGrid g = *this;
        for (auto *v : {&g.nodes_x, &g.weights_x, &g.nodes_z, &g.weights_z})
            for (double &x : *v)
                x *= factor;
        return g;
    }

    QuadratureGrid gauss_legendre_grid(const ApertureSpec &aperture, std::size_t n_per_dim)
    {
        if (n_per_dim == 0)
            throw std::domain_error("gauss_legendre_grid: n_per_dim must be at least 1");
        if (!(aperture.lx > 0.0) || !(aperture.lz > 0.0))
            throw std::domain_error("gauss_legendre_grid: aperture sides must be positive");

        const GaussLegendreRule rule = gauss_legendre(n_per_dim);
        QuadratureGrid g;
        auto map_axis = [&](double length, std::vector<double> &nodes, std::vector<double> &weights)
        {
            const double half = 0.5 * length;
            nodes.resize(n_per_dim);
            weights.resize(n_per_dim);
            for (std::size_t i = 0; i < n_per_dim; ++i)
            {
                nodes[i] = half * rule.nodes[i];
                weights[i] = half * rule.weights[i];
            }
        };
        map_axis(aperture.lx, g.nodes_x, g.weights_x);
        map_axis(aperture.lz, g.nodes_z, g.weights_z);
        return g;
    }
}
