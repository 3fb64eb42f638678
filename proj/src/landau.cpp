// SPDX-License-Identifier: Apache-2.0
#include "capa/landau.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capa
{
    double dof_closed_form(const ApertureSpec &tx, const ApertureSpec &rx, double wavelength, double distance,
                           double det_eprime)
    {
        for (double side : {tx.lx, tx.lz, rx.lx, rx.lz})
            if (!(side >= 0.0) || !std::isfinite(side))
                throw std::domain_error("dof_closed_form: aperture sides must be finite and nonnegative");
        if (!(wavelength > 0.0) || !(distance > 0.0))
            throw std::domain_error("dof_closed_form: wavelength and distance must be positive");
        if (!(det_eprime >= 0.0 && det_eprime <= 1.0))
            throw std::domain_error("dof_closed_form: |det E'| must lie in [0, 1]");
        // Working in wavelengths keeps integer-wavelength geometries exact.
        const double d = distance / wavelength;
        const double product = (tx.lx / wavelength) * (tx.lz / wavelength) * (rx.lx / wavelength) * (rx.lz / wavelength);
        return product * det_eprime / (d * d);
    }

    double dof_closed_form(const Medium &med, const LinkGeometry &geom)
    {
        return dof_closed_form(geom.tx(), geom.rx(), med.lambda, geom.distance(),
                               projected_submatrix_det(geom.rotation()));
    }

    Eigen::VectorXd normalized_eigenvalues(const Eigen::VectorXd &values)
    {
        if (values.size() == 0)
            throw std::domain_error("normalized_eigenvalues: empty spectrum");
        const double top = values(0);
        if (!(top > 0.0))
            throw std::domain_error("normalized_eigenvalues: leading singular value is zero");
        Eigen::VectorXd eps = (values / top).array().square().matrix();
        return eps.cwiseMin(1.0).cwiseMax(0.0);
    }

    std::size_t count_edof(const Eigen::VectorXd &values, double threshold)
    {
        if (!(threshold > 0.0 && threshold <= 1.0))
            throw std::domain_error("count_edof: threshold must lie in (0, 1]");
        const Eigen::VectorXd eps = normalized_eigenvalues(values);
        return static_cast<std::size_t>(std::count_if(eps.begin(), eps.end(), [&](double e)
                                                      { return e > threshold; }));
    }

    std::size_t count_edof(const SingularSpectrum &spectrum, double threshold)
    {
        return count_edof(spectrum.values, threshold);
    }

    double plateau_prediction(const Medium &med, double det_eprime)
    {
        return 0.5 * med.eta0 / std::sqrt(det_eprime);
    }

    DofReport analyze_polarization(const SingularSpectrum &spectrum, const Medium &med, const LinkGeometry &geom,
                                   double threshold)
    {
        DofReport report;
        report.det_eprime = projected_submatrix_det(geom.rotation());
        report.dof_formula = dof_closed_form(med, geom);
        report.threshold = threshold;
        report.edof_count = count_edof(spectrum, threshold);

        if (spectrum.kind == KernelKind::Exact || spectrum.kind == KernelKind::Fresnel)
        {
            const auto head = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(report.dof_formula / 2.0)), 1,
                                                      spectrum.size());
            report.plateau_sv = spectrum.values.head(static_cast<Eigen::Index>(head)).mean();
            if (report.det_eprime > 0.0)
                report.plateau_predicted = plateau_prediction(med, report.det_eprime);
        }
        return report;
    }
}
