// SPDX-License-Identifier: Apache-2.0
#include "capa/nystrom.hpp"
#include "capa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace capa
{
    namespace
    {
        void check_grids(const QuadratureGrid &rx_grid, const QuadratureGrid &tx_grid)
        {
            if (rx_grid.size() == 0 || tx_grid.size() == 0)
                throw std::domain_error("build_operator: empty quadrature grid");
        }

        int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

        template <typename Entry>
        Eigen::MatrixXcd assemble(const QuadratureGrid &rx_grid, const QuadratureGrid &tx_grid, int threads, Entry &&entry)
        {
            const std::vector<Vec2> rx_pts = rx_grid.points();
            const std::vector<Vec2> tx_pts = tx_grid.points();
            const std::vector<double> rx_w = rx_grid.weights();
            const std::vector<double> tx_w = tx_grid.weights();
            const auto rows = static_cast<Eigen::Index>(rx_pts.size());
            const auto cols = static_cast<Eigen::Index>(tx_pts.size());

            std::vector<double> tx_sqrt(tx_w.size());
            for (std::size_t j = 0; j < tx_w.size(); ++j)
                tx_sqrt[j] = std::sqrt(tx_w[j]);

            Eigen::MatrixXcd A(rows, cols);
            std::string failure;
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
            for (Eigen::Index i = 0; i < rows; ++i)
            {
                try
                {
                    const double wr = std::sqrt(rx_w[static_cast<std::size_t>(i)]);
                    for (Eigen::Index j = 0; j < cols; ++j)
                        A(i, j) = wr * entry(rx_pts[static_cast<std::size_t>(i)], tx_pts[static_cast<std::size_t>(j)]) * tx_sqrt[static_cast<std::size_t>(j)];
                }
                catch (const std::exception &e)
                {
#pragma omp critical(capa_assemble_failure)
                    if (failure.empty())
                        failure = e.what();
                }
            }
            if (!failure.empty())
                throw std::domain_error(failure);
            return A;
        }
    }

    DiscretizedOperator build_operator(KernelKind kind, const Medium &med, const LinkGeometry &geom,
                                       const QuadratureGrid &rx_grid, const QuadratureGrid &tx_grid, int threads)
    {
        check_grids(rx_grid, tx_grid);
        DiscretizedOperator op;
        op.matrix = assemble(rx_grid, tx_grid, threads, [&](const Vec2 &r, const Vec2 &t)
                             { return kernel_value(kind, med, geom, r, t); });
        op.rx_grid = rx_grid;
        op.tx_grid = tx_grid;
        op.kind = kind;
        return op;
    }

    DiscretizedOperator build_operator(const KernelFunction &kernel, const QuadratureGrid &rx_grid,
                                       const QuadratureGrid &tx_grid, int threads)
    {
        check_grids(rx_grid, tx_grid);
        DiscretizedOperator op;
        op.matrix = assemble(rx_grid, tx_grid, threads, kernel);
        op.rx_grid = rx_grid;
        op.tx_grid = tx_grid;
        return op;
    }

    SingularSpectrum singular_spectrum(const DiscretizedOperator &op, bool compute_vectors)
    {
        if (op.matrix.size() == 0)
            throw std::domain_error("singular_spectrum: empty operator");
        if (!op.matrix.allFinite())
            throw std::domain_error("singular_spectrum: operator has non-finite entries");

        const unsigned int flags = compute_vectors ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix, flags);
        if (svd.info() != Eigen::Success)
            throw NumericalError("singular_spectrum: SVD failed to converge for a " + std::to_string(op.matrix.rows()) + "x" +
                                 std::to_string(op.matrix.cols()) + " operator (Frobenius norm " +
                                 std::to_string(op.matrix.norm()) + ")");

        SingularSpectrum s;
        s.values = svd.singularValues();
        s.rx_grid = op.rx_grid;
        s.tx_grid = op.tx_grid;
        s.kind = op.kind;
        if (compute_vectors)
        {
            s.left = svd.matrixU();
            s.right = svd.matrixV();
            const std::vector<double> rx_w = op.rx_grid.weights();
            const std::vector<double> tx_w = op.tx_grid.weights();
            for (Eigen::Index i = 0; i < s.left.rows(); ++i)
                s.left.row(i) /= std::sqrt(rx_w[static_cast<std::size_t>(i)]);
            for (Eigen::Index i = 0; i < s.right.rows(); ++i)
                s.right.row(i) /= std::sqrt(tx_w[static_cast<std::size_t>(i)]);
        }
        return s;
    }

    Eigen::VectorXd gram_eigenvalues(const DiscretizedOperator &op)
    {
        const Eigen::MatrixXcd gram = op.matrix * op.matrix.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success)
            throw NumericalError("gram_eigenvalues: eigensolver failed");
        return eig.eigenvalues().reverse();
    }

    double max_relative_change(const Eigen::VectorXd &previous, const Eigen::VectorXd &current, std::size_t k_track)
    {
        const auto k = std::min<Eigen::Index>({static_cast<Eigen::Index>(k_track), previous.size(), current.size()});
        if (k == 0)
            return 0.0;
        const double floor = 1e-8 * current(0);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < k; ++i)
        {
            const double scale = std::max(current(i), floor);
            const double change = std::abs(current(i) - previous(i));
            worst = std::max(worst, scale > 0.0 ? change / scale : change);
        }
        return worst;
    }

    SingularSpectrum refine_until_converged(const std::function<DiscretizedOperator(std::size_t n_per_dim)> &assemble_at,
                                            const RefineOptions &options)
    {
        if (options.n_start < 4)
            throw std::domain_error("refine_until_converged: n_start must be at least 4");
        if (!(options.tol >= 0.0))
            throw std::domain_error("refine_until_converged: tol must be nonnegative");

        const std::size_t cap = std::max(options.n_cap, options.n_start);
        std::size_t n = options.n_start;
        Eigen::VectorXd previous = singular_spectrum(assemble_at(n), false).values;
        while (n < cap)
        {
            n = std::min(2 * n, cap);
            DiscretizedOperator op = assemble_at(n);
            Eigen::VectorXd current = singular_spectrum(op, false).values;
            if (max_relative_change(previous, current, options.k_track) < options.tol)
            {
                SingularSpectrum s = singular_spectrum(op, true);
                s.converged = true;
                return s;
            }
            if (n == cap)
            {
                SingularSpectrum s = singular_spectrum(op, true);
                s.converged = false;
                return s;
            }
            previous = std::move(current);
        }
        // n_start already at the cap: nothing to compare against.
        SingularSpectrum s = singular_spectrum(assemble_at(n), true);
        s.converged = false;
        return s;
    }

    SingularSpectrum refine_until_converged(KernelKind kind, const Medium &med, const LinkGeometry &geom,
                                            const RefineOptions &options)
    {
        return refine_until_converged(
            [&](std::size_t n)
            {
                return build_operator(kind, med, geom, gauss_legendre_grid(geom.rx(), n),
                                      gauss_legendre_grid(geom.tx(), n), options.threads);
            },
            options);
    }
}
