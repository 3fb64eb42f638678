// SPDX-License-Identifier: Apache-2.0
#include "capa/commands.hpp"
#include "capa/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace capa
{
    namespace
    {
        std::ofstream open_output(const std::filesystem::path &path)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot write '" + path.string() + "'");
            return out;
        }

        void finish_output(std::ofstream &out, const std::filesystem::path &path)
        {
            out.flush();
            if (!out)
                throw IoError("write to '" + path.string() + "' failed");
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> fields;
            std::string cur;
            std::istringstream ss(line);
            while (std::getline(ss, cur, ','))
                fields.push_back(cur);
            if (!line.empty() && line.back() == ',')
                fields.emplace_back();
            return fields;
        }
    }

    std::string format_double(double v)
    {
        std::array<char, 40> buf{};
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
        return std::string(buf.data(), res.ptr);
    }

    ScenarioResult run_scenario(const ScenarioConfig &cfg, const RunOptions &opts)
    {
        const LinkGeometry geom = cfg.geometry();
        const NumericsConfig &num = cfg.numerics;

        ScenarioResult res;
        if (opts.refine)
        {
            RefineOptions ro;
            ro.n_start = num.n_per_dim;
            ro.tol = num.tol;
            ro.n_cap = num.n_cap;
            ro.threads = opts.threads;
            const double dof = dof_closed_form(cfg.medium, geom);
            ro.k_track = std::max<std::size_t>(2 * static_cast<std::size_t>(std::llround(dof)), 10);
            res.spectrum = refine_until_converged(cfg.kernel, cfg.medium, geom, ro);
        }
        else
        {
            const auto op = build_operator(cfg.kernel, cfg.medium, geom, gauss_legendre_grid(geom.rx(), num.n_per_dim),
                                           gauss_legendre_grid(geom.tx(), num.n_per_dim), opts.threads);
            res.spectrum = singular_spectrum(op, false);
        }
        res.report = analyze_polarization(res.spectrum, cfg.medium, geom, num.threshold);
        return res;
    }

    nlohmann::json to_json(const DofReport &report)
    {
        nlohmann::json j;
        j["dof_formula"] = report.dof_formula;
        j["det_eprime"] = report.det_eprime;
        j["edof_count"] = report.edof_count;
        j["threshold"] = report.threshold;
        if (report.plateau_sv)
            j["plateau_sv"] = *report.plateau_sv;
        if (report.plateau_predicted)
            j["plateau_predicted"] = *report.plateau_predicted;
        return j;
    }

    nlohmann::json to_json(const WaterfillResult &result)
    {
        nlohmann::json j;
        j["allocations"] = result.allocations;
        j["water_level"] = result.water_level;
        j["capacity_bits"] = result.capacity_bits;
        return j;
    }

    void write_spectrum_csv(std::ostream &os, const Eigen::VectorXd &values)
    {
        os << "index,sigma,sigma_norm,eps_norm\n";
        const double top = values.size() > 0 ? values(0) : 0.0;
        for (Eigen::Index i = 0; i < values.size(); ++i)
        {
            const double norm = top > 0.0 ? values(i) / top : 0.0;
            os << (i + 1) << ',' << format_double(values(i)) << ',' << format_double(norm) << ','
               << format_double(norm * norm) << '\n';
        }
    }

    std::vector<double> read_spectrum_csv(std::istream &is, const std::string &source)
    {
        std::string line;
        if (!std::getline(is, line))
            throw ConfigError(source + ": empty file, expected header 'index,sigma,sigma_norm,eps_norm'");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line != "index,sigma,sigma_norm,eps_norm")
            throw ConfigError(source + ": row 1: expected header 'index,sigma,sigma_norm,eps_norm', got '" + line + "'");

        std::vector<double> sigma;
        std::size_t row = 1;
        while (std::getline(is, line))
        {
            ++row;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            const auto fields = split_csv(line);
            if (fields.size() != 4)
                throw ConfigError(source + ": row " + std::to_string(row) + ": expected 4 fields, got " +
                                  std::to_string(fields.size()));
            const std::string &f = fields[1];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v) || v < 0.0)
                throw ConfigError(source + ": row " + std::to_string(row) + ": invalid sigma '" + f + "'");
            sigma.push_back(v);
        }
        if (sigma.empty())
            throw ConfigError(source + ": no data rows");
        return sigma;
    }

    std::filesystem::path sidecar_path(const std::filesystem::path &csv_path)
    {
        std::filesystem::path p = csv_path;
        p.replace_extension(".json");
        return p;
    }

    ScenarioResult cmd_spectrum(const ScenarioConfig &cfg, const std::filesystem::path &out, const RunOptions &opts)
    {
        ScenarioResult res = run_scenario(cfg, opts);

        auto csv = open_output(out);
        write_spectrum_csv(csv, res.spectrum.values);
        finish_output(csv, out);

        const auto json_path = sidecar_path(out);
        auto js = open_output(json_path);
        js << to_json(res.report).dump(2) << '\n';
        finish_output(js, json_path);
        return res;
    }

    std::vector<SweepRow> run_sweep(const SweepSpec &spec, const RunOptions &opts)
    {
        if (spec.values.empty())
            throw ConfigError("sweep: values list is empty");

        const auto n = static_cast<std::ptrdiff_t>(spec.values.size());
        std::vector<SweepRow> rows(spec.values.size());
        std::vector<std::exception_ptr> errors(spec.values.size());
        const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

        // Points run concurrently; each point's assembly then runs single-threaded.
        RunOptions inner = opts;
        if (threads > 1 && n > 1)
            inner.threads = 1;

#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < n; ++k)
        {
            const auto i = static_cast<std::size_t>(k);
            try
            {
                const ScenarioConfig cfg = spec.scenario_at(i);
                const ScenarioResult res = run_scenario(cfg, inner);
                SweepRow &row = rows[i];
                row.param_value = spec.values[i];
                row.d_over_lambda = cfg.rx_center.norm() / cfg.medium.lambda;
                row.det_eprime = res.report.det_eprime;
                row.dof_formula = res.report.dof_formula;
                row.edof_count = res.report.edof_count;
                row.plateau_sv = res.report.plateau_sv;
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return rows;
    }

    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows)
    {
        os << "param_value,D_over_lambda,det_eprime,dof_formula,edof_count,plateau_sv\n";
        for (const auto &r : rows)
        {
            os << format_double(r.param_value) << ',' << format_double(r.d_over_lambda) << ','
               << format_double(r.det_eprime) << ',' << format_double(r.dof_formula) << ',' << r.edof_count << ',';
            if (r.plateau_sv)
                os << format_double(*r.plateau_sv);
            os << '\n';
        }
    }

    std::vector<SweepRow> cmd_sweep(const SweepSpec &spec, const std::filesystem::path &out, const RunOptions &opts)
    {
        auto rows = run_sweep(spec, opts);
        auto csv = open_output(out);
        write_sweep_csv(csv, rows);
        finish_output(csv, out);
        return rows;
    }

    WaterfillResult cmd_waterfill(const std::filesystem::path &spectrum_csv, double noise, double power)
    {
        if (!std::isfinite(noise) || noise <= 0.0)
            throw ConfigError("waterfill: noise must be positive");
        if (!std::isfinite(power) || power <= 0.0)
            throw ConfigError("waterfill: power must be positive");
        std::ifstream in(spectrum_csv, std::ios::binary);
        if (!in)
            throw IoError("cannot read '" + spectrum_csv.string() + "'");
        const std::vector<double> sigma = read_spectrum_csv(in, spectrum_csv.string());
        std::vector<double> gains;
        gains.reserve(sigma.size());
        for (double s : sigma)
            gains.push_back(s * s / noise);
        return water_fill(gains, power);
    }
}
