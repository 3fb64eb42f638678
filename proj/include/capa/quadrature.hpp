// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/geometry.hpp"

#include <cstddef>
#include <vector>

namespace capa
{
    // Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    // Throws std::domain_error for n == 0.
    GaussLegendreRule gauss_legendre(std::size_t n);

    // Tensor-product rule over a rectangular aperture [-lx/2, lx/2] x [-lz/2, lz/2].
    // Tensor nodes are ordered row-major with z fastest: index = ix * nz + iz.
    struct QuadratureGrid
    {
        std::vector<double> nodes_x, weights_x; // m, m
        std::vector<double> nodes_z, weights_z; // m, m

        std::size_t size() const { return nodes_x.size() * nodes_z.size(); }
        Vec2 point(std::size_t index) const;
        double weight(std::size_t index) const; // m^2

        std::vector<Vec2> points() const;
        std::vector<double> weights() const;

        // Sum of tensor weights; equals the aperture area.
        double total_weight() const;

        // Same rule on the aperture scaled by `factor` in both directions.
        QuadratureGrid scaled(double factor) const;
    };

    QuadratureGrid gauss_legendre_grid(const ApertureSpec &aperture, std::size_t n_per_dim);
}
