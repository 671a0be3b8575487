// SPDX-License-Identifier: Apache-2.0
//
// mfcovert: covert transmission toolkit for movable mixed-field XL-arrays
// Copyright (C) 2026 The mfcovert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end: figure campaigns, single-realization solves, covert regions, self test.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfcovert/acceptance.hpp"
#include "mfcovert/campaign.hpp"
#include "mfcovert/covertness.hpp"
#include "mfcovert/scenario.hpp"
#include "mfcovert/schemes.hpp"

namespace
{
    using namespace mfcovert;

    constexpr int kExitFailure = 1;
    constexpr int kExitConfig = 2;
    constexpr int kExitSolver = 3;

    struct ConfigError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct Common
    {
        std::string config;
        std::uint64_t seed = 0;
        std::size_t trials = 0;
        std::string out = ".";
        std::vector<std::string> schemes;
        unsigned threads = 0;
    };

    Scenario load(const Common &c, const CLI::App &app)
    {
        try
        {
            Scenario s = c.config.empty() ? default_scenario() : load_scenario(c.config);
            if (app.count("--seed") > 0)
                s.seed = c.seed;
            if (app.count("--trials") > 0)
                s.trials = c.trials;
            s.validate();
            return s;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
    }

    std::vector<SchemeId> parse_schemes(const std::vector<std::string> &names)
    {
        std::vector<SchemeId> ids;
        try
        {
            for (const auto &n : names)
                ids.push_back(scheme_from_string(n));
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
        return ids;
    }

    void write_file(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream os(path, std::ios::binary);
        os << text;
        if (!os)
            throw std::runtime_error("cannot write " + path.string());
    }

    int cmd_figure(const Common &c, const CLI::App &app, const std::string &id)
    {
        const Scenario s = load(c, app);
        CampaignOptions opt;
        opt.threads = c.threads;
        opt.schemes = parse_schemes(c.schemes);
        const auto t0 = std::chrono::steady_clock::now();
        CampaignResult res;
        try
        {
            res = run_figure(id, s, opt);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const std::filesystem::path dir(c.out);
        std::filesystem::create_directories(dir);
        const std::string csv = id + ".csv";
        res.table.save((dir / csv).string());
        write_file(dir / (id + ".manifest.json"), run_manifest(id, s, s.trials, wall, csv));
        std::printf("%s: %zu rows -> %s\n", id.c_str(), res.table.rows(), (dir / csv).string().c_str());
        return 0;
    }

    int cmd_solve(const Common &c, const CLI::App &app, std::size_t trial)
    {
        const Scenario s = load(c, app);
        auto ids = parse_schemes(c.schemes);
        if (ids.empty())
            ids = all_schemes();
        const auto r = sample_scenario(s, trial);
        const auto outcomes = run_schemes(ids, s, r);
        bool failed = false;
        for (const auto &o : outcomes)
        {
            std::printf("%-26s weighted_rate %.6f covert %d", to_string(o.scheme).c_str(), o.rates.weighted_sum,
                        o.covert_ok ? 1 : 0);
            for (std::size_t b = 0; b < o.rates.per_bob_rate.size(); ++b)
                std::printf(" rate_b%zu %.6f", b + 1, o.rates.per_bob_rate[b]);
            if (!o.centers.empty())
            {
                std::printf(" centers_m");
                for (double q : o.centers)
                    std::printf(" %.6f", q);
            }
            if (!o.solver_ok)
            {
                std::printf(" solver_failure \"%s\"", o.diagnostic.c_str());
                failed = true;
            }
            std::printf("\n");
        }
        return failed ? kExitSolver : 0;
    }

    struct RegionArgs
    {
        std::string kind;
        double theta = 0.0;
        double range_m = 10.0;
        double epsilon = -1.0;
        double power_w = 1e-5;
    };

    int cmd_region(const Common &c, const CLI::App &app, const RegionArgs &a)
    {
        const Scenario s = load(c, app);
        const PolarLocation willie{a.theta, a.range_m};
        CovertnessSpec spec = s.covertness;
        double g_w = 0.0, delta = 0.0;
        try
        {
            willie.validate();
            if (a.epsilon >= 0.0)
                spec = CovertnessSpec::from_epsilon(spec.nominal_noise_w, spec.rho, a.epsilon);
            spec.validate();
            if (!(a.power_w > 0.0))
                throw std::invalid_argument("--power must be positive");
            g_w = los_amplitude(willie.range_m, s.wavelength(), std::numeric_limits<double>::infinity());
            delta = correlation_threshold(covert_margin(spec, s.num_antennas, g_w), a.power_w);
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
        const auto layout = s.fixed_layout();
        const CovertRegion region = a.kind == "angle"
                                        ? covert_angle_region(layout, willie, delta)
                                        : covert_range_region(willie, delta, s.num_antennas, layout.spacing(),
                                                              s.wavelength());
        std::printf("kind %s\nthreshold %.9g\nempty %d\nexcluded_lo %.9g\nexcluded_hi %.9g\n",
                    to_string(region.kind).c_str(), region.threshold, region.empty ? 1 : 0, region.excluded_lo,
                    region.excluded_hi);
        if (region.kind == RegionKind::Range)
            std::printf("beta %.9g\npi %.9g\n", region.beta, region.pi_value);
        return 0;
    }

    int cmd_selftest(const Common &c, const std::vector<int> &only)
    {
        AcceptanceOptions opt;
        opt.only = only;
        opt.threads = c.threads;
        const auto results = run_acceptance(opt, &std::cout);
        std::size_t failed = 0;
        for (const auto &r : results)
            failed += r.pass ? 0 : 1;
        std::printf("%zu of %zu criteria passed\n", results.size() - failed, results.size());
        return failed == 0 ? 0 : kExitFailure;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"mfcovert: covert transmission with movable mixed-field XL-arrays"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--config", c.config, "Scenario JSON file")->check(CLI::ExistingFile);
    app.add_option("--seed", c.seed, "Master seed");
    app.add_option("--trials", c.trials, "Monte-Carlo realizations")->check(CLI::PositiveNumber);
    app.add_option("--out", c.out, "Output directory for figure CSV and manifest");
    app.add_option("--scheme", c.schemes, "Restrict to these schemes (repeatable)");
    app.add_option("--threads", c.threads, "Worker threads, 0 = all cores");

    std::string figure_id;
    auto *fig = app.add_subcommand("figure", "Run one figure campaign");
    fig->add_option("id", figure_id, "Figure id")->required()->check(CLI::IsMember(figure_ids()));

    std::size_t trial = 0;
    auto *solve = app.add_subcommand("solve", "Solve one realization with every scheme");
    solve->add_option("--trial", trial, "Realization index");

    RegionArgs ra;
    auto *region = app.add_subcommand("region", "Covert angle or range region around a warden");
    region->add_option("kind", ra.kind, "angle or range")->required()->check(CLI::IsMember({"angle", "range"}));
    region->add_option("--theta", ra.theta, "Warden angle (sine)");
    region->add_option("--range", ra.range_m, "Warden range in meters");
    region->add_option("--epsilon", ra.epsilon, "Covertness level (default from the scenario)");
    region->add_option("--power", ra.power_w, "Transmit power towards the served Bob in watts");

    std::vector<int> only;
    auto *selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_option("--only", only, "Criterion ids");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (fig->parsed())
            return cmd_figure(c, app, figure_id);
        if (solve->parsed())
            return cmd_solve(c, app, trial);
        if (region->parsed())
            return cmd_region(c, app, ra);
        return cmd_selftest(c, only);
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    }
}
