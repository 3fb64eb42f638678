// SPDX-License-Identifier: Apache-2.0
//
// capa_dof: singular spectra and degrees of freedom of continuous-aperture LoS links.
//
//   capa_dof spectrum  --config scenario.yaml --out spectrum.csv
//   capa_dof dof       --config scenario.yaml [--out report.json]
//   capa_dof sweep     --config sweep.yaml    --out sweep.csv
//   capa_dof waterfill --spectrum spectrum.csv --noise 1 --power 3 [--out result.json]
//
// Exit codes: 0 ok, 2 config error, 3 numerical error, 4 I/O error.

#include "capa/commands.hpp"
#include "capa/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_config = 2,
        exit_numerical = 3,
        exit_io = 4
    };

    struct ScenarioFlags
    {
        std::string config;
        std::string out;
        std::string kernel;
        std::size_t n = 0;
        std::optional<double> threshold;
        int threads = 0;
        bool refine = false;
        bool verbose = false;
    };

    void add_scenario_flags(CLI::App *cmd, ScenarioFlags &f, bool out_required)
    {
        cmd->add_option("--config", f.config, "Scenario file (YAML); defaults apply when omitted");
        auto *out = cmd->add_option("--out", f.out, "Output path");
        if (out_required)
            out->required();
        cmd->add_option("--kernel", f.kernel, "Kernel override")->check(CLI::IsMember({"exact", "fresnel", "reduced"}));
        cmd->add_option("--n", f.n, "Quadrature nodes per dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--threshold", f.threshold, "EDoF threshold on normalized eigenvalues")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--threads", f.threads, "Assembly threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--refine", f.refine, "Double n until the leading values converge");
        cmd->add_flag("-v,--verbose", f.verbose, "Log unit conversions and warnings");
    }

    void apply_overrides(capa::ScenarioConfig &cfg, const ScenarioFlags &f)
    {
        if (!f.kernel.empty())
            cfg.kernel = capa::kernel_kind_from_string(f.kernel);
        if (f.n > 0)
            cfg.numerics.n_per_dim = f.n;
        if (f.threshold)
        {
            if (!(*f.threshold > 0.0 && *f.threshold < 1.0))
                throw capa::ConfigError("--threshold must lie in (0, 1)");
            cfg.numerics.threshold = *f.threshold;
        }
    }

    void report_scenario(const capa::ScenarioConfig &cfg, bool verbose)
    {
        if (verbose)
            for (const auto &line : cfg.unit_log)
                std::cerr << "info: " << line << '\n';
        const capa::LinkGeometry geom = cfg.geometry();
        if (geom.fresnel_warning())
            std::cerr << "warning: aperture diagonal / distance = " << geom.fresnel_ratio()
                      << " exceeds " << capa::LinkGeometry::fresnel_warning_threshold
                      << "; the Fresnel model may be inaccurate\n";
    }

    capa::ScenarioConfig load_config(const ScenarioFlags &f)
    {
        capa::ScenarioConfig cfg = f.config.empty() ? capa::default_scenario() : capa::load_scenario(f.config);
        apply_overrides(cfg, f);
        report_scenario(cfg, f.verbose);
        return cfg;
    }

    void write_json(const nlohmann::json &j, const std::string &out)
    {
        if (out.empty())
        {
            std::cout << j.dump(2) << '\n';
            return;
        }
        std::ofstream os(out, std::ios::binary | std::ios::trunc);
        if (!os)
            throw capa::IoError("cannot write '" + out + "'");
        os << j.dump(2) << '\n';
        if (!os.flush())
            throw capa::IoError("write to '" + out + "' failed");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Singular spectra and degrees of freedom of continuous-aperture LoS channels"};
    app.require_subcommand(1);

    ScenarioFlags spectrum_flags;
    auto *spectrum = app.add_subcommand("spectrum", "Write the singular spectrum CSV and a DofReport JSON sidecar");
    add_scenario_flags(spectrum, spectrum_flags, true);

    ScenarioFlags dof_flags;
    auto *dof = app.add_subcommand("dof", "Print the DofReport of a scenario as JSON");
    add_scenario_flags(dof, dof_flags, false);

    ScenarioFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write one CSV row per value");
    add_scenario_flags(sweep, sweep_flags, true);
    sweep->get_option("--config")->required();

    std::string wf_in, wf_out;
    double wf_noise = 1.0, wf_power = 1.0;
    auto *waterfill = app.add_subcommand("waterfill", "Water-fill power over a spectrum CSV (gains sigma^2 / noise)");
    waterfill->add_option("--spectrum", wf_in, "Spectrum CSV")->required();
    waterfill->add_option("--noise", wf_noise, "Noise power")->required();
    waterfill->add_option("--power", wf_power, "Total transmit power")->required();
    waterfill->add_option("--out", wf_out, "Output JSON (stdout when omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        if (*spectrum)
        {
            const auto cfg = load_config(spectrum_flags);
            capa::cmd_spectrum(cfg, spectrum_flags.out, {spectrum_flags.threads, spectrum_flags.refine});
        }
        else if (*dof)
        {
            const auto cfg = load_config(dof_flags);
            const auto res = capa::run_scenario(cfg, {dof_flags.threads, dof_flags.refine});
            write_json(capa::to_json(res.report), dof_flags.out);
        }
        else if (*sweep)
        {
            capa::SweepSpec spec = capa::load_sweep(sweep_flags.config);
            apply_overrides(spec.fixed, sweep_flags);
            if (sweep_flags.verbose)
                for (const auto &line : spec.fixed.unit_log)
                    std::cerr << "info: " << line << '\n';
            capa::cmd_sweep(spec, sweep_flags.out, {sweep_flags.threads, sweep_flags.refine});
        }
        else if (*waterfill)
        {
            const auto res = capa::cmd_waterfill(wf_in, wf_noise, wf_power);
            write_json(capa::to_json(res), wf_out);
        }
    }
    catch (const capa::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const capa::IoError &e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const capa::NumericalError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_ok;
}
