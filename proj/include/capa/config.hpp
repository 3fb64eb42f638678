// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capa/geometry.hpp"
#include "capa/kernels.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capa
{
    struct NumericsConfig
    {
        std::size_t n_per_dim = 32;
        double tol = 1e-6;
        std::size_t n_cap = 128;
        double threshold = 0.5;
    };

    // Scenario defaults: fc = 2.4 GHz, all sides 10 lambda, o_r = [0, 50 lambda, 0],
    // parallel orientation, Fresnel kernel.
    struct ScenarioConfig
    {
        Medium medium = Medium::from_frequency(2.4e9);
        ApertureSpec tx;
        ApertureSpec rx;
        Vec3 rx_center = Vec3::Zero();
        EulerAngles rx_euler;
        NumericsConfig numerics;
        KernelKind kernel = KernelKind::Fresnel;

        // "<x>lambda" conversions performed while parsing, one line each.
        std::vector<std::string> unit_log;

        LinkGeometry geometry() const { return LinkGeometry(tx, rx, rx_center, rx_euler); }
    };

    enum class SweepParameter
    {
        Distance,
        SideLength,
        AlphaGamma
    };

    std::string_view to_string(SweepParameter p);

    struct SweepSpec
    {
        SweepParameter parameter = SweepParameter::Distance;
        std::vector<double> values; // meters, or radians for AlphaGamma
        ScenarioConfig fixed;

        // Scenario for values[index].
        ScenarioConfig scenario_at(std::size_t index) const;
    };

    ScenarioConfig default_scenario();

    // "<number>" (meters) or "<number>lambda". Throws ConfigError naming `field`.
    double parse_length(std::string_view text, double wavelength, std::string_view field);

    // Strict YAML parsing: unknown keys, wrong types and invalid values throw
    // ConfigError with the source name, line and field path. A `sweep` section is
    // rejected here; use parse_sweep for sweep files.
    ScenarioConfig parse_scenario(std::string_view text, std::string_view source = "<config>");
    SweepSpec parse_sweep(std::string_view text, std::string_view source = "<config>");

    // Read a file and parse it; IoError if unreadable.
    ScenarioConfig load_scenario(const std::filesystem::path &path);
    SweepSpec load_sweep(const std::filesystem::path &path);
}
