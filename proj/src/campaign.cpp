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

#include "mfcovert/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "mfcovert/parallel.hpp"
#include "mfcovert/rng.hpp"

namespace mfcovert
{
    const char *const kVersion = "0.1.0";

    namespace
    {
        constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
        constexpr std::uint64_t kCsiStream = 0x637369;
        constexpr std::size_t kDeRestarts = 4; // independent DE runs per correlation-only placement

        std::size_t trial_count(const Scenario &s, const CampaignOptions &opt)
        {
            return opt.trials ? opt.trials : s.trials;
        }

        std::vector<double> sweep_or(const CampaignOptions &opt, std::vector<double> fallback)
        {
            return opt.sweep.empty() ? fallback : opt.sweep;
        }

        std::vector<double> linspace(double lo, double hi, std::size_t n)
        {
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i)
                out[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
            return out;
        }

        std::vector<std::string> scheme_columns(const std::string &x, const std::vector<SchemeId> &ids)
        {
            std::vector<std::string> cols{x};
            for (auto id : ids)
                cols.push_back(to_string(id));
            return cols;
        }

        /// Mean weighted sum-rate per scheme over trials 0..trials-1.
        std::vector<double> mean_rates(const Scenario &s, const std::vector<SchemeId> &ids, std::size_t trials,
                                       unsigned threads)
        {
            Scenario local = s;
            if ((threads == 0 ? default_threads() : threads) > 1)
                local.de.threads = 1;
            std::vector<std::vector<double>> per_trial(trials);
            parallel_for(
                trials,
                [&](std::size_t t) {
                    const auto r = sample_scenario(local, t);
                    const auto outs = run_schemes(ids, local, r);
                    per_trial[t].reserve(outs.size());
                    for (const auto &o : outs)
                        per_trial[t].push_back(o.rates.weighted_sum);
                },
                threads);
            std::vector<double> mean(ids.size(), 0.0);
            for (const auto &row : per_trial)
                for (std::size_t k = 0; k < ids.size(); ++k)
                    mean[k] += row[k];
            for (auto &m : mean)
                m /= double(trials);
            return mean;
        }

        CampaignResult rate_sweep(const std::string &figure, const std::string &x_name, const Scenario &s,
                                  const CampaignOptions &opt, const std::vector<double> &xs,
                                  const std::function<Scenario(const Scenario &, double)> &apply)
        {
            const auto ids = opt.schemes.empty() ? all_schemes() : opt.schemes;
            CampaignResult res{figure, CsvTable(scheme_columns(x_name, ids))};
            for (double x : xs)
            {
                auto row = mean_rates(apply(s, x), ids, trial_count(s, opt), opt.threads);
                row.insert(row.begin(), x);
                res.table.add_row(row);
            }
            return res;
        }

        CampaignResult fig2(const Scenario &s)
        {
            const auto layout = s.fixed_layout();
            const std::vector<PolarLocation> targets{{0.0, 10.0}, {0.0, 30.0}, {0.5, 15.0}};
            CampaignResult res{"fig2", CsvTable({"theta", "gain_t0_r10", "gain_t0_r30", "gain_t0.5_r15"})};
            const double step = 1e-3;
            const auto grid = angle_grid(step);
            std::vector<std::vector<double>> gains;
            for (const auto &t : targets)
                gains.push_back(beam_gain_scan(layout, t, step));
            for (std::size_t i = 0; i < grid.size(); ++i)
                res.table.add_row({grid[i], gains[0][i], gains[1][i], gains[2][i]});
            return res;
        }

        CampaignResult fig3(const Scenario &s, const CampaignOptions &opt)
        {
            const double lambda = s.wavelength();
            const auto layout = s.fixed_layout();
            const PolarLocation b1{0.0, 10.0};
            const double r2 = 150.0;
            const auto support = energy_spread_support(layout, b1, 10.0);
            const auto xs = sweep_or(opt, linspace(-0.2, 0.2, 81));

            TwoUserInput base;
            base.gain_b1 = los_amplitude(b1.range_m, lambda, std::numeric_limits<double>::infinity());
            base.gain_b2 = los_amplitude(r2, lambda, std::numeric_limits<double>::infinity());
            base.num_antennas = s.num_antennas;
            base.power_w = s.power_w;
            base.bob_noise_w = s.bob_noise_w;
            base.spec = s.covertness;
            base.covert = false;

            struct Row
            {
                double fixed_chi, movable_chi, fixed_rate, movable_rate, bound;
            };
            std::vector<Row> rows(xs.size());
            DEConfig cfg = s.de;
            if ((opt.threads == 0 ? default_threads() : opt.threads) > 1)
                cfg.threads = 1;
            parallel_for(
                xs.size(),
                [&](std::size_t i) {
                    const PolarLocation b2{xs[i], r2};
                    const auto analytic = analytic_positions_for_pair(layout, b1, b2);
                    Row row;
                    row.fixed_chi = correlation(layout, b1, b2);
                    row.movable_chi = row.fixed_chi;
                    for (std::size_t run = 0; run < kDeRestarts; ++run)
                    {
                        DEConfig c = cfg;
                        c.seed = mix64(s.seed ^ mix64(0xf3000 + i * kDeRestarts + run));
                        const auto de = optimize_positions(pair_correlation_objective(layout, b1, b2),
                                                           layout.region(), layout.num_subarrays(),
                                                           layout.antennas_per_subarray(), layout.spacing(), c,
                                                           {layout.centers(), analytic.centers});
                        row.movable_chi = std::min(row.movable_chi, correlation(layout.with_centers(de.best), b1, b2));
                    }
                    TwoUserInput in = base;
                    in.chi_b1b2 = row.fixed_chi;
                    row.fixed_rate = power_allocation_2user(in).sum_rate;
                    in.chi_b1b2 = row.movable_chi;
                    row.movable_rate = power_allocation_2user(in).sum_rate;
                    row.bound = 0.0;
                    const std::size_t grid = 1000;
                    for (std::size_t k = 0; k <= grid; ++k)
                    {
                        const double p1 = s.power_w * double(k) / double(grid);
                        row.bound = std::max(row.bound, two_user_upper_bound(in, p1, s.power_w - p1));
                    }
                    rows[i] = row;
                },
                opt.threads);

            CampaignResult res{"fig3", CsvTable({"theta_b2", "in_support", "fixed_chi", "movable_chi", "FIXED",
                                                 "MOVABLE_PROPOSED", "UPPER_BOUND"})};
            for (std::size_t i = 0; i < xs.size(); ++i)
                res.table.add_row({xs[i], support.contains(xs[i]) ? 1.0 : 0.0, rows[i].fixed_chi,
                                   rows[i].movable_chi, rows[i].fixed_rate, rows[i].movable_rate, rows[i].bound});
            return res;
        }

        CampaignResult fig4(const Scenario &s, const CampaignOptions &opt)
        {
            const auto layout = s.fixed_layout();
            const PolarLocation willie{0.0, 10.0};
            const double p_b2 = 1e-5;
            const double g_w = los_amplitude(willie.range_m, s.wavelength(), std::numeric_limits<double>::infinity());
            CampaignResult res{"fig4", CsvTable({"epsilon", "delta", "xi_left", "xi_right"})};
            for (double eps : sweep_or(opt, {0.8, 0.9, 0.95}))
            {
                const auto spec = CovertnessSpec::from_epsilon(s.covertness.nominal_noise_w, s.covertness.rho, eps);
                const double delta = correlation_threshold(covert_margin(spec, s.num_antennas, g_w), p_b2);
                const auto region = covert_angle_region(layout, willie, delta);
                res.table.add_row({eps, delta, region.empty ? kNaN : region.excluded_lo,
                                   region.empty ? kNaN : region.excluded_hi});
            }
            return res;
        }

        CampaignResult fig5(const Scenario &s, const CampaignOptions &opt)
        {
            const auto layout = s.fixed_layout();
            const PolarLocation w{0.0, 25.0};
            const PolarLocation b2{0.0, 150.0};
            const double p_b = 0.5;
            const auto xs = sweep_or(opt, linspace(5.0, 50.0, 46));
            std::vector<std::pair<double, double>> vals(xs.size());
            DEConfig cfg = s.de;
            if ((opt.threads == 0 ? default_threads() : opt.threads) > 1)
                cfg.threads = 1;
            parallel_for(
                xs.size(),
                [&](std::size_t i) {
                    const PolarLocation b1{0.0, xs[i]};
                    const auto obj = weighted_correlation_objective(layout, {{w, b1, p_b}, {w, b2, p_b}});
                    DEConfig c = cfg;
                    c.seed = mix64(s.seed ^ mix64(0xf5000 + i));
                    const auto de = optimize_positions(obj, layout.region(), layout.num_subarrays(),
                                                       layout.antennas_per_subarray(), layout.spacing(), c,
                                                       {layout.centers()});
                    vals[i] = {-obj(layout.centers()), -obj(de.best)};
                },
                opt.threads);
            CampaignResult res{"fig5", CsvTable({"r_b1", "FIXED", "MOVABLE_PROPOSED"})};
            for (std::size_t i = 0; i < xs.size(); ++i)
                res.table.add_row({xs[i], vals[i].first, vals[i].second});
            return res;
        }

        CampaignResult fig7(const Scenario &s)
        {
            const auto r = sample_scenario(s, 0);
            const auto o = run_scheme(SchemeId::MovableProposed, s, r);
            CampaignResult res{"fig7", CsvTable({"iteration", "sca_surrogate", "sca_true_rate", "sca_max_violation",
                                                 "de_best_fitness", "de_mean_fitness", "de_penalty_count"})};
            const std::size_t n = std::max(o.sca_trace.size(), o.de_trace.size());
            for (std::size_t i = 0; i < n; ++i)
            {
                std::vector<double> row{double(i), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
                if (i < o.sca_trace.size())
                {
                    row[1] = o.sca_trace[i].surrogate;
                    row[2] = o.sca_trace[i].true_rate;
                    row[3] = o.sca_trace[i].max_violation;
                }
                if (i < o.de_trace.size())
                {
                    row[4] = o.de_trace[i].best_fitness;
                    row[5] = o.de_trace[i].mean_fitness;
                    row[6] = double(o.de_trace[i].penalty_count);
                }
                res.table.add_row(row);
            }
            return res;
        }

        CampaignResult fig10(const Scenario &s, const CampaignOptions &opt)
        {
            std::vector<SchemeId> ids = opt.schemes;
            if (ids.empty())
                for (auto id : all_schemes())
                    if (id != SchemeId::UpperBound)
                        ids.push_back(id);
            const auto eps = sweep_or(opt, linspace(0.0, 0.01, 11));
            const std::size_t trials = trial_count(s, opt);
            const std::size_t draws =
                opt.draws_per_trial ? opt.draws_per_trial : std::max<std::size_t>(1, (100 + trials - 1) / trials);
            const auto rows = covert_probability_sweep(s, ids, eps, trials, draws, opt.threads);
            CampaignResult res{"fig10", CsvTable(scheme_columns("epsilon", ids))};
            for (const auto &row : rows)
            {
                auto v = row.probability;
                v.insert(v.begin(), row.epsilon);
                res.table.add_row(v);
            }
            return res;
        }
    }

    const std::vector<std::string> &figure_ids()
    {
        static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig6",
                                                  "fig7", "fig8", "fig9", "fig10"};
        return ids;
    }

    CampaignResult run_figure(const std::string &id, const Scenario &scenario, const CampaignOptions &opt)
    {
        scenario.validate();
        if (id == "fig2")
            return fig2(scenario);
        if (id == "fig3")
            return fig3(scenario, opt);
        if (id == "fig4")
            return fig4(scenario, opt);
        if (id == "fig5")
            return fig5(scenario, opt);
        if (id == "fig6")
            return rate_sweep("fig6", "varsigma", scenario, opt, sweep_or(opt, {0.05, 0.1, 0.2, 0.3, 0.4}),
                              [](const Scenario &s, double x) {
                                  Scenario out = s;
                                  out.covertness.varsigma = x;
                                  return out;
                              });
        if (id == "fig7")
            return fig7(scenario);
        if (id == "fig8")
            return rate_sweep("fig8", "power_dbm", scenario, opt, sweep_or(opt, {20.0, 25.0, 30.0, 35.0, 40.0}),
                              [](const Scenario &s, double x) {
                                  Scenario out = s;
                                  out.power_w = dbm_to_watt(x);
                                  return out;
                              });
        if (id == "fig9")
            return rate_sweep("fig9", "num_antennas", scenario, opt, sweep_or(opt, {64.0, 128.0, 256.0, 512.0}),
                              [](const Scenario &s, double x) {
                                  Scenario out = s;
                                  out.num_antennas = std::size_t(std::llround(x));
                                  out.region_m.reset();
                                  out.validate();
                                  return out;
                              });
        if (id == "fig10")
            return fig10(scenario, opt);
        throw std::invalid_argument("unknown figure id '" + id + "'");
    }

    std::vector<CovertProbabilityRow> covert_probability_sweep(const Scenario &scenario,
                                                               const std::vector<SchemeId> &schemes,
                                                               const std::vector<double> &epsilons,
                                                               std::size_t realizations, std::size_t draws,
                                                               unsigned threads)
    {
        if (realizations * draws < 100)
            throw std::invalid_argument("covert_probability_sweep: need at least 100 trials in total");
        for (auto id : schemes)
            if (id == SchemeId::UpperBound)
                throw std::invalid_argument("covert_probability_sweep: UPPER_BOUND has no beamformer");
        Scenario s = scenario;
        if ((threads == 0 ? default_threads() : threads) > 1)
            s.de.threads = 1;
        const double lambda = s.wavelength();
        const double threshold = covert_power_threshold(s.covertness);

        // passes[t][e][k]: covert draws of scheme k at epsilon e in realization t
        std::vector<std::vector<std::vector<std::size_t>>> passes(realizations);
        parallel_for(
            realizations,
            [&](std::size_t t) {
                const auto r = sample_scenario(s, t);
                const auto outs = run_schemes(schemes, s, r);
                passes[t].assign(epsilons.size(), std::vector<std::size_t>(schemes.size(), 0));
                for (std::size_t k = 0; k < outs.size(); ++k)
                {
                    if (!outs[k].solver_ok)
                        continue;
                    const auto layout = s.fixed_layout().with_centers(outs[k].centers);
                    const auto estimated = r.willie_channels(antenna_positions(layout), lambda);
                    for (std::size_t e = 0; e < epsilons.size(); ++e)
                        for (std::size_t d = 0; d < draws; ++d)
                        {
                            // same error draws for every epsilon and scheme
                            auto rng = substream(s.seed ^ kCsiStream, t, d);
                            std::vector<ChannelVector> actual;
                            for (const auto &h : estimated)
                                actual.push_back(perturb_csi(h, epsilons[e], rng));
                            const auto power = willie_received_powers(actual, outs[k].beamformer);
                            const bool ok = std::all_of(power.begin(), power.end(),
                                                        [&](double p) { return p <= threshold * (1.0 + 1e-9); });
                            passes[t][e][k] += ok ? 1 : 0;
                        }
                }
            },
            threads);

        std::vector<CovertProbabilityRow> rows;
        for (std::size_t e = 0; e < epsilons.size(); ++e)
        {
            CovertProbabilityRow row{epsilons[e], std::vector<double>(schemes.size(), 0.0)};
            for (std::size_t k = 0; k < schemes.size(); ++k)
            {
                std::size_t total = 0;
                for (std::size_t t = 0; t < realizations; ++t)
                    total += passes[t][e][k];
                row.probability[k] = double(total) / double(realizations * draws);
            }
            rows.push_back(std::move(row));
        }
        return rows;
    }

    std::uint64_t fnv1a64(const std::string &text)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string run_manifest(const std::string &figure, const Scenario &scenario, std::size_t trials,
                             double wall_time_s, const std::string &csv_file)
    {
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(scenario_to_json(scenario))));
        nlohmann::json j{{"figure", figure},
                         {"config_hash", std::string("fnv1a64:") + hash},
                         {"seed", scenario.seed},
                         {"trials", trials},
                         {"version", kVersion},
                         {"wall_time_s", wall_time_s},
                         {"csv", csv_file}};
        return j.dump(2) + "\n";
    }
}
