// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/geometry.hpp"
#include "capa/kernels.hpp"
#include "capa/nystrom.hpp"

#include <cstddef>
#include <optional>

namespace capa
{
    inline constexpr double default_edof_threshold = 0.5;

    struct DofReport
    {
        double dof_formula = 0.0;
        double det_eprime = 0.0;
        std::size_t edof_count = 0;
        double threshold = default_edof_threshold;
        // Absent for the dimensionless Reduced kernel.
        std::optional<double> plateau_sv;        // ohms
        std::optional<double> plateau_predicted; // ohms
    };

    // Lt,x Lt,z Lr,x Lr,z |det E'| / (lambda D)^2.
    double dof_closed_form(const Medium &med, const LinkGeometry &geom);

    // Same formula from raw quantities; apertures with a zero side give 0. Throws
    // std::domain_error for negative sides, nonpositive lambda or D, or det outside [0, 1].
    double dof_closed_form(const ApertureSpec &tx, const ApertureSpec &rx, double wavelength, double distance,
                           double det_eprime);

    // Normalized eigenvalues eps_i = (value_i / value_1)^2, all in [0, 1].
    Eigen::VectorXd normalized_eigenvalues(const Eigen::VectorXd &values);

    // |{i : eps_i > threshold}|. Throws std::domain_error for an empty or all-zero
    // spectrum, or a threshold outside (0, 1].
    std::size_t count_edof(const Eigen::VectorXd &values, double threshold = default_edof_threshold);
    std::size_t count_edof(const SingularSpectrum &spectrum, double threshold = default_edof_threshold);

    // Predicted plateau (eta0 / 2) / sqrt(|det E'|).
    double plateau_prediction(const Medium &med, double det_eprime);

    // Closed-form DOF, EDoF count and the plateau comparison. The plateau is the mean of
    // the first max(1, floor(DOF / 2)) values.
    DofReport analyze_polarization(const SingularSpectrum &spectrum, const Medium &med, const LinkGeometry &geom,
                                   double threshold = default_edof_threshold);
}
