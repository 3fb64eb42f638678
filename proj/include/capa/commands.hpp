// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/capacity.hpp"
#include "capa/config.hpp"
#include "capa/landau.hpp"
#include "capa/nystrom.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace capa
{
    struct RunOptions
    {
        int threads = 0;     // matrix assembly threads, <= 0 for the OpenMP default
        bool refine = false; // refine_until_converged starting at numerics.n_per_dim
    };

    struct ScenarioResult
    {
        SingularSpectrum spectrum;
        DofReport report;
    };

    ScenarioResult run_scenario(const ScenarioConfig &cfg, const RunOptions &opts = {});

    nlohmann::json to_json(const DofReport &report);
    nlohmann::json to_json(const WaterfillResult &result);

    // Header `index,sigma,sigma_norm,eps_norm`, 1-based index, 17 significant digits.
    void write_spectrum_csv(std::ostream &os, const Eigen::VectorXd &values);

    // Sigma column of a spectrum CSV. Throws ConfigError naming the offending row.
    std::vector<double> read_spectrum_csv(std::istream &is, const std::string &source = "<csv>");

    // `<out>` with its extension replaced by ".json".
    std::filesystem::path sidecar_path(const std::filesystem::path &csv_path);

    // Writes the spectrum CSV and its DofReport JSON sidecar.
    ScenarioResult cmd_spectrum(const ScenarioConfig &cfg, const std::filesystem::path &out, const RunOptions &opts = {});

    struct SweepRow
    {
        double param_value = 0.0;
        double d_over_lambda = 0.0;
        double det_eprime = 0.0;
        double dof_formula = 0.0;
        std::size_t edof_count = 0;
        std::optional<double> plateau_sv;
    };

    // One row per sweep value, in input order. Points run concurrently when
    // opts.threads allows; the rows do not depend on it.
    std::vector<SweepRow> run_sweep(const SweepSpec &spec, const RunOptions &opts = {});

    // Header `param_value,D_over_lambda,det_eprime,dof_formula,edof_count,plateau_sv`.
    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);

    std::vector<SweepRow> cmd_sweep(const SweepSpec &spec, const std::filesystem::path &out, const RunOptions &opts = {});

    // Gains sigma_i^2 / noise from a spectrum CSV, water-filled with `power`.
    WaterfillResult cmd_waterfill(const std::filesystem::path &spectrum_csv, double noise, double power);

    // 17 significant digits, '.' decimal point, independent of the C locale.
    std::string format_double(double v);
}
