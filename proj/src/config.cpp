// SPDX-License-Identifier: Apache-2.0
#include "capa/config.hpp"
#include "capa/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace capa
{
    namespace
    {
        constexpr double default_side_wavelengths = 10.0;
        constexpr double default_distance_wavelengths = 50.0;

        class Parser
        {
        public:
            explicit Parser(std::string_view source) : source_(source) {}

            [[noreturn]] void fail(const YAML::Node &node, std::string_view field, std::string_view msg) const
            {
                std::ostringstream os;
                os << source_;
                if (node.IsDefined() && node.Mark().line >= 0)
                    os << ":" << node.Mark().line + 1;
                os << ": " << field << ": " << msg;
                throw ConfigError(os.str());
            }

            YAML::Node load(std::string_view text) const
            {
                try
                {
                    return YAML::Load(std::string(text));
                }
                catch (const YAML::ParserException &e)
                {
                    std::ostringstream os;
                    os << source_ << ":" << e.mark.line + 1 << ": syntax error: " << e.msg;
                    throw ConfigError(os.str());
                }
            }

            void require_map(const YAML::Node &node, std::string_view field) const
            {
                if (!node.IsMap())
                    fail(node, field, "expected a mapping");
            }

            // Every key of `node` must be in `allowed`.
            void check_keys(const YAML::Node &node, std::string_view field, std::initializer_list<std::string_view> allowed) const
            {
                for (const auto &kv : node)
                {
                    const std::string key = kv.first.as<std::string>();
                    bool ok = false;
                    for (auto a : allowed)
                        ok = ok || key == a;
                    if (!ok)
                    {
                        std::string path = field.empty() ? key : std::string(field) + "." + key;
                        fail(kv.first, path, "unknown key");
                    }
                }
            }

            std::string scalar(const YAML::Node &node, std::string_view field) const
            {
                if (!node.IsScalar())
                    fail(node, field, "expected a scalar value");
                return node.Scalar();
            }

            double number(const YAML::Node &node, std::string_view field) const
            {
                const std::string s = scalar(node, field);
                double v = 0.0;
                const char *end = s.data() + s.size();
                auto [ptr, ec] = std::from_chars(s.data(), end, v);
                if (ec != std::errc() || ptr != end || !std::isfinite(v))
                    fail(node, field, "expected a finite number, got '" + s + "'");
                return v;
            }

            double positive(const YAML::Node &node, std::string_view field) const
            {
                const double v = number(node, field);
                if (!(v > 0.0))
                    fail(node, field, "must be positive");
                return v;
            }

            std::size_t count(const YAML::Node &node, std::string_view field) const
            {
                const std::string s = scalar(node, field);
                std::size_t v = 0;
                const char *end = s.data() + s.size();
                auto [ptr, ec] = std::from_chars(s.data(), end, v);
                if (ec != std::errc() || ptr != end || v == 0)
                    fail(node, field, "expected a positive integer, got '" + s + "'");
                return v;
            }

            double length(const YAML::Node &node, std::string_view field, double wavelength, std::vector<std::string> &log) const
            {
                const std::string s = scalar(node, field);
                try
                {
                    const double v = parse_length(s, wavelength, field);
                    if (s.find("lambda") != std::string::npos)
                    {
                        std::array<char, 32> buf{};
                        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
                        log.push_back(std::string(field) + ": " + s + " -> " + std::string(buf.data(), res.ptr) + " m");
                    }
                    return v;
                }
                catch (const ConfigError &e)
                {
                    fail(node, field, e.what());
                }
            }

            double positive_length(const YAML::Node &node, std::string_view field, double wavelength, std::vector<std::string> &log) const
            {
                const double v = length(node, field, wavelength, log);
                if (!(v > 0.0))
                    fail(node, field, "must be positive");
                return v;
            }

        private:
            std::string source_;
        };

        void parse_scenario_sections(const Parser &p, const YAML::Node &root, ScenarioConfig &cfg)
        {
            if (const auto medium = root["medium"])
            {
                p.require_map(medium, "medium");
                p.check_keys(medium, "medium", {"fc_hz", "lambda_m"});
                const auto fc = medium["fc_hz"];
                const auto lam = medium["lambda_m"];
                if (fc && lam)
                    p.fail(medium, "medium", "give exactly one of fc_hz and lambda_m");
                if (fc)
                    cfg.medium = Medium::from_frequency(p.positive(fc, "medium.fc_hz"));
                else if (lam)
                    cfg.medium = Medium::from_wavelength(p.positive(lam, "medium.lambda_m"));
                else
                    p.fail(medium, "medium", "give exactly one of fc_hz and lambda_m");
            }
            const double wl = cfg.medium.lambda;
            cfg.tx = {default_side_wavelengths * wl, default_side_wavelengths * wl};
            cfg.rx = cfg.tx;
            cfg.rx_center = Vec3(0.0, default_distance_wavelengths * wl, 0.0);

            if (const auto tx = root["tx"])
            {
                p.require_map(tx, "tx");
                p.check_keys(tx, "tx", {"lx", "lz"});
                if (tx["lx"])
                    cfg.tx.lx = p.positive_length(tx["lx"], "tx.lx", wl, cfg.unit_log);
                if (tx["lz"])
                    cfg.tx.lz = p.positive_length(tx["lz"], "tx.lz", wl, cfg.unit_log);
            }
            if (const auto rx = root["rx"])
            {
                p.require_map(rx, "rx");
                p.check_keys(rx, "rx", {"lx", "lz", "center", "euler_rad"});
                if (rx["lx"])
                    cfg.rx.lx = p.positive_length(rx["lx"], "rx.lx", wl, cfg.unit_log);
                if (rx["lz"])
                    cfg.rx.lz = p.positive_length(rx["lz"], "rx.lz", wl, cfg.unit_log);
                if (const auto c = rx["center"])
                {
                    if (!c.IsSequence() || c.size() != 3)
                        p.fail(c, "rx.center", "expected a list of three lengths");
                    for (std::size_t i = 0; i < 3; ++i)
                        cfg.rx_center(static_cast<Eigen::Index>(i)) =
                            p.length(c[i], "rx.center[" + std::to_string(i) + "]", wl, cfg.unit_log);
                    if (!(cfg.rx_center.norm() > 0.0))
                        p.fail(c, "rx.center", "RX center must differ from the TX center");
                }
                if (const auto e = rx["euler_rad"])
                {
                    if (!e.IsSequence() || e.size() != 3)
                        p.fail(e, "rx.euler_rad", "expected a list of three angles in radians");
                    cfg.rx_euler.alpha = p.number(e[0], "rx.euler_rad[0]");
                    cfg.rx_euler.beta = p.number(e[1], "rx.euler_rad[1]");
                    cfg.rx_euler.gamma = p.number(e[2], "rx.euler_rad[2]");
                }
            }
            if (const auto num = root["numerics"])
            {
                p.require_map(num, "numerics");
                p.check_keys(num, "numerics", {"n_per_dim", "tol", "n_cap", "threshold"});
                if (num["n_per_dim"])
                    cfg.numerics.n_per_dim = p.count(num["n_per_dim"], "numerics.n_per_dim");
                if (num["tol"])
                    cfg.numerics.tol = p.positive(num["tol"], "numerics.tol");
                if (num["n_cap"])
                    cfg.numerics.n_cap = p.count(num["n_cap"], "numerics.n_cap");
                if (num["threshold"])
                {
                    const double th = p.number(num["threshold"], "numerics.threshold");
                    if (!(th > 0.0 && th < 1.0))
                        p.fail(num["threshold"], "numerics.threshold", "must lie in (0, 1)");
                    cfg.numerics.threshold = th;
                }
            }
            if (const auto k = root["kernel_kind"])
            {
                try
                {
                    cfg.kernel = kernel_kind_from_string(p.scalar(k, "kernel_kind"));
                }
                catch (const std::invalid_argument &e)
                {
                    p.fail(k, "kernel_kind", e.what());
                }
            }
        }

        YAML::Node load_root(const Parser &p, std::string_view text)
        {
            YAML::Node root = p.load(text);
            if (root.IsNull())
                return YAML::Node(YAML::NodeType::Map);
            p.require_map(root, "<root>");
            return root;
        }

        std::string read_file(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw IoError("cannot read '" + path.string() + "'");
            std::ostringstream os;
            os << in.rdbuf();
            return os.str();
        }
    }

    std::string_view to_string(SweepParameter p)
    {
        switch (p)
        {
        case SweepParameter::Distance:
            return "distance";
        case SweepParameter::SideLength:
            return "side_length";
        case SweepParameter::AlphaGamma:
            return "alpha_gamma";
        }
        return "unknown";
    }

    ScenarioConfig SweepSpec::scenario_at(std::size_t index) const
    {
        ScenarioConfig cfg = fixed;
        const double v = values.at(index);
        switch (parameter)
        {
        case SweepParameter::Distance:
            cfg.rx_center = fixed.rx_center.normalized() * v;
            break;
        case SweepParameter::SideLength:
            cfg.tx = {v, v};
            cfg.rx = {v, v};
            break;
        case SweepParameter::AlphaGamma:
            cfg.rx_euler.alpha = v;
            cfg.rx_euler.gamma = v;
            break;
        }
        return cfg;
    }

    ScenarioConfig default_scenario()
    {
        return parse_scenario("", "<defaults>");
    }

    double parse_length(std::string_view text, double wavelength, std::string_view field)
    {
        std::string_view s = text;
        while (!s.empty() && s.back() == ' ')
            s.remove_suffix(1);
        double scale = 1.0;
        constexpr std::string_view suffix = "lambda";
        if (s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix)
        {
            s.remove_suffix(suffix.size());
            while (!s.empty() && s.back() == ' ')
                s.remove_suffix(1);
            scale = wavelength;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ConfigError(std::string(field) + ": expected a length in meters or '<x>lambda', got '" + std::string(text) + "'");
        return v * scale;
    }

    ScenarioConfig parse_scenario(std::string_view text, std::string_view source)
    {
        const Parser p(source);
        const YAML::Node root = load_root(p, text);
        p.check_keys(root, "", {"medium", "tx", "rx", "numerics", "kernel_kind"});
        ScenarioConfig cfg;
        parse_scenario_sections(p, root, cfg);
        return cfg;
    }

    SweepSpec parse_sweep(std::string_view text, std::string_view source)
    {
        const Parser p(source);
        const YAML::Node root = load_root(p, text);
        p.check_keys(root, "", {"medium", "tx", "rx", "numerics", "kernel_kind", "sweep"});
        SweepSpec spec;
        parse_scenario_sections(p, root, spec.fixed);

        const auto sweep = root["sweep"];
        if (!sweep)
            p.fail(root, "sweep", "missing sweep section");
        p.require_map(sweep, "sweep");
        p.check_keys(sweep, "sweep", {"parameter", "values"});
        if (!sweep["parameter"])
            p.fail(sweep, "sweep.parameter", "missing");
        const std::string param = p.scalar(sweep["parameter"], "sweep.parameter");
        if (param == "distance")
            spec.parameter = SweepParameter::Distance;
        else if (param == "side_length")
            spec.parameter = SweepParameter::SideLength;
        else if (param == "alpha_gamma")
            spec.parameter = SweepParameter::AlphaGamma;
        else
            p.fail(sweep["parameter"], "sweep.parameter", "expected distance|side_length|alpha_gamma, got '" + param + "'");

        const auto values = sweep["values"];
        if (!values || !values.IsSequence() || values.size() == 0)
            p.fail(values ? values : sweep, "sweep.values", "expected a nonempty list");
        const double wl = spec.fixed.medium.lambda;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const std::string field = "sweep.values[" + std::to_string(i) + "]";
            const double v = spec.parameter == SweepParameter::AlphaGamma
                                 ? p.number(values[i], field)
                                 : p.positive_length(values[i], field, wl, spec.fixed.unit_log);
            if (spec.parameter != SweepParameter::AlphaGamma && !spec.values.empty() && !(v > spec.values.back()))
                p.fail(values[i], field, "values must be strictly increasing");
            spec.values.push_back(v);
        }
        return spec;
    }

    ScenarioConfig load_scenario(const std::filesystem::path &path)
    {
        return parse_scenario(read_file(path), path.string());
    }

    SweepSpec load_sweep(const std::filesystem::path &path)
    {
        return parse_sweep(read_file(path), path.string());
    }
}
