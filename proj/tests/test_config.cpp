// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "capa/config.hpp"
#include "capa/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

using namespace capa;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace
{
    std::string g17(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::string error_of(std::string_view text, bool sweep = false)
    {
        try
        {
            if (sweep)
                parse_sweep(text, "cfg.yaml");
            else
                parse_scenario(text, "cfg.yaml");
        }
        catch (const ConfigError &e)
        {
            return e.what();
        }
        return {};
    }
}

TEST_CASE("default_scenario mirrors the paper setup")
{
    const auto cfg = default_scenario();
    const double lam = 299792458.0 / 2.4e9;
    CHECK(cfg.medium.fc == 2.4e9);
    CHECK_THAT(cfg.tx.lx, WithinRel(10 * lam, 1e-15));
    CHECK(cfg.rx.lz == cfg.tx.lx);
    CHECK(cfg.rx_center.x() == 0.0);
    CHECK_THAT(cfg.rx_center.y(), WithinRel(50 * lam, 1e-15));
    CHECK(cfg.rx_euler.beta == 0.0);
    CHECK(cfg.numerics.n_per_dim == 32);
    CHECK(cfg.numerics.tol == 1e-6);
    CHECK(cfg.numerics.n_cap == 128);
    CHECK(cfg.numerics.threshold == 0.5);
    CHECK(cfg.kernel == KernelKind::Fresnel);
}

TEST_CASE("parse_length - meters and wavelengths")
{
    CHECK(parse_length("0.25", 0.125, "f") == 0.25);
    CHECK(parse_length("10lambda", 0.125, "f") == 1.25);
    CHECK(parse_length("2.5 lambda", 0.125, "f") == 0.3125);
    CHECK_THROWS_AS(parse_length("lambda", 0.125, "f"), ConfigError);
    CHECK_THROWS_AS(parse_length("10mm", 0.125, "f"), ConfigError);
    CHECK_THROWS_AS(parse_length("", 0.125, "f"), ConfigError);
}

TEST_CASE("parse_scenario - full file and unit log")
{
    const auto cfg = parse_scenario(R"(
medium:
  lambda_m: 0.125
tx: {lx: 10lambda, lz: 0.5}
rx:
  lx: 4lambda
  lz: 4lambda
  center: [0.1, 50lambda, -0.2]
  euler_rad: [0.1, 0.2, 0.3]
numerics: {n_per_dim: 20, tol: 1e-7, n_cap: 64, threshold: 0.4}
kernel_kind: exact
)");
    CHECK(cfg.medium.lambda == 0.125);
    CHECK(cfg.tx.lx == 1.25);
    CHECK(cfg.tx.lz == 0.5);
    CHECK(cfg.rx.lx == 0.5);
    CHECK(cfg.rx_center == Vec3(0.1, 6.25, -0.2));
    CHECK(cfg.rx_euler.gamma == 0.3);
    CHECK(cfg.numerics.n_per_dim == 20);
    CHECK(cfg.numerics.threshold == 0.4);
    CHECK(cfg.kernel == KernelKind::Exact);
    REQUIRE(cfg.unit_log.size() == 4);
    CHECK_THAT(cfg.unit_log[0], ContainsSubstring("tx.lx: 10lambda -> 1.25 m"));
}

TEST_CASE("parse_scenario - wavelength and meter inputs resolve identically")
{
    const auto a = parse_scenario("rx: {center: [0, 50lambda, 0]}\ntx: {lx: 10lambda}");
    const double lam = a.medium.lambda;
    const std::string meters = "rx: {center: [0, " + g17(50 * lam) + ", 0]}\ntx: {lx: " + g17(10 * lam) + "}";
    const auto b = parse_scenario(meters);
    CHECK(a.rx_center == b.rx_center);
    CHECK(a.tx.lx == b.tx.lx);
}

TEST_CASE("parse_scenario - strict errors carry line and field")
{
    CHECK_THAT(error_of("tx:\n  lx: 1\n  ly: 2\n"), ContainsSubstring("cfg.yaml:3: tx.ly: unknown key"));
    CHECK_THAT(error_of("bogus: 1\n"), ContainsSubstring("bogus: unknown key"));
    CHECK_THAT(error_of("medium: {fc_hz: 1e9, lambda_m: 0.3}\n"), ContainsSubstring("exactly one"));
    CHECK_THAT(error_of("medium: {}\n"), ContainsSubstring("exactly one"));
    CHECK_THAT(error_of("tx: {lx: -1}\n"), ContainsSubstring("tx.lx: must be positive"));
    CHECK_THAT(error_of("tx: {lx: 3ft}\n"), ContainsSubstring("tx.lx"));
    CHECK_THAT(error_of("rx: {euler_rad: [45deg, 0, 0]}\n"), ContainsSubstring("rx.euler_rad[0]"));
    CHECK_THAT(error_of("rx: {euler_rad: [0, 0]}\n"), ContainsSubstring("three angles"));
    CHECK_THAT(error_of("rx: {center: [0, 0, 0]}\n"), ContainsSubstring("RX center"));
    CHECK_THAT(error_of("numerics: {n_per_dim: 0}\n"), ContainsSubstring("positive integer"));
    CHECK_THAT(error_of("numerics: {n_per_dim: 3.5}\n"), ContainsSubstring("positive integer"));
    CHECK_THAT(error_of("numerics: {threshold: 1.0}\n"), ContainsSubstring("(0, 1)"));
    CHECK_THAT(error_of("kernel_kind: dyadic\n"), ContainsSubstring("kernel_kind"));
    CHECK_THAT(error_of("tx: [1, 2\n"), ContainsSubstring("syntax error"));
    CHECK_THAT(error_of("sweep: {parameter: distance, values: [1]}\n"), ContainsSubstring("sweep: unknown key"));
}

TEST_CASE("parse_sweep - values and validation")
{
    const auto s = parse_sweep("medium: {lambda_m: 0.1}\nsweep: {parameter: distance, values: [25lambda, 50lambda, 100lambda]}");
    CHECK(s.parameter == SweepParameter::Distance);
    REQUIRE(s.values.size() == 3);
    CHECK_THAT(s.values[2], WithinRel(10.0, 1e-15));
    CHECK_THAT(s.scenario_at(0).rx_center.y(), WithinRel(2.5, 1e-15));

    const auto sides = parse_sweep("sweep: {parameter: side_length, values: [0.5, 5lambda]}");
    CHECK(sides.scenario_at(0).rx.lz == 0.5);
    CHECK(sides.scenario_at(0).tx.lx == 0.5);

    const auto ag = parse_sweep("sweep: {parameter: alpha_gamma, values: [0.5, 0]}");
    CHECK(ag.scenario_at(0).rx_euler.alpha == 0.5);
    CHECK(ag.scenario_at(0).rx_euler.gamma == 0.5);
    CHECK(ag.scenario_at(0).rx_euler.beta == 0.0);

    CHECK_THAT(error_of("sweep: {parameter: distance, values: []}", true), ContainsSubstring("nonempty"));
    CHECK_THAT(error_of("sweep: {parameter: distance, values: [2, 1]}", true), ContainsSubstring("strictly increasing"));
    CHECK_THAT(error_of("sweep: {parameter: height, values: [1]}", true), ContainsSubstring("sweep.parameter"));
    CHECK_THAT(error_of("medium: {fc_hz: 1e9}", true), ContainsSubstring("missing sweep"));
}

TEST_CASE("load_scenario - missing file is an I/O error")
{
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), IoError);
}
