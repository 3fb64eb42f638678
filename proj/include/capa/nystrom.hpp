// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/kernels.hpp"
#include "capa/quadrature.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>

namespace capa
{
    // Kernel sampled at (rx point, tx point), both in their own plane coordinates.
    using KernelFunction = std::function<cplx(const Vec2 &r, const Vec2 &t)>;

    // Nystrom matrix A = W_r^{1/2} K W_t^{1/2}; rows follow rx_grid, columns tx_grid.
    struct DiscretizedOperator
    {
        Eigen::MatrixXcd matrix;
        QuadratureGrid rx_grid;
        QuadratureGrid tx_grid;
        std::optional<KernelKind> kind; // empty for a user-supplied kernel
    };

    // Assembly is parallelized over rows with OpenMP; threads <= 0 uses the runtime
    // default. The result is bitwise identical for every thread count.
    DiscretizedOperator build_operator(KernelKind kind, const Medium &med, const LinkGeometry &geom,
                                       const QuadratureGrid &rx_grid, const QuadratureGrid &tx_grid, int threads = 0);

    DiscretizedOperator build_operator(const KernelFunction &kernel, const QuadratureGrid &rx_grid,
                                       const QuadratureGrid &tx_grid, int threads = 0);

    struct SingularSpectrum
    {
        Eigen::VectorXd values; // descending

        // Singular functions sampled at the nodes (columns), i.e. U and V divided by
        // sqrt(weight). Empty when vectors were not requested.
        Eigen::MatrixXcd left;  // phi_i at rx nodes
        Eigen::MatrixXcd right; // psi_i at tx nodes

        QuadratureGrid rx_grid;
        QuadratureGrid tx_grid;
        std::optional<KernelKind> kind;
        bool converged = true;

        std::size_t size() const { return static_cast<std::size_t>(values.size()); }
        bool has_vectors() const { return left.size() > 0; }
    };

    // Dense SVD of the weighted matrix. Throws std::domain_error for non-finite entries
    // and NumericalError if the SVD fails.
    SingularSpectrum singular_spectrum(const DiscretizedOperator &op, bool compute_vectors = true);

    // Eigenvalues of A A^H, descending.
    Eigen::VectorXd gram_eigenvalues(const DiscretizedOperator &op);

    struct RefineOptions
    {
        std::size_t n_start = 12;
        double tol = 1e-6;
        std::size_t k_track = 10;
        std::size_t n_cap = 128;
        int threads = 0;
    };

    // Per-value relative change used by refine_until_converged. Values below 1e-8 of the
    // leading one are treated as numerically zero and compared on that floor.
    double max_relative_change(const Eigen::VectorXd &previous, const Eigen::VectorXd &current, std::size_t k_track);

    // Doubles n_per_dim from n_start (clipped at n_cap) until the top k_track values
    // change by less than tol. The returned spectrum carries vectors and its converged flag.
    SingularSpectrum refine_until_converged(const std::function<DiscretizedOperator(std::size_t n_per_dim)> &assemble,
                                            const RefineOptions &options);

    SingularSpectrum refine_until_converged(KernelKind kind, const Medium &med, const LinkGeometry &geom,
                                            const RefineOptions &options);
}
