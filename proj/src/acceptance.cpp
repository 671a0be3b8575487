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

#include "mfcovert/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "mfcovert/beamforming.hpp"
#include "mfcovert/campaign.hpp"
#include "mfcovert/channel.hpp"
#include "mfcovert/covertness.hpp"
#include "mfcovert/fresnel.hpp"
#include "mfcovert/placement.hpp"
#include "mfcovert/rng.hpp"
#include "mfcovert/scenario.hpp"

namespace mfcovert
{
    namespace
    {
        constexpr std::size_t kN = 256;
        constexpr std::size_t kM = 8;
        constexpr double kLambda = 0.01;
        constexpr double kInf = std::numeric_limits<double>::infinity();

        std::string fmt(const char *f, auto... args)
        {
            char buf[512];
            std::snprintf(buf, sizeof buf, f, args...);
            return buf;
        }

        double percentile(std::vector<double> v, double p)
        {
            std::sort(v.begin(), v.end());
            const double pos = p * double(v.size() - 1);
            const auto i = std::size_t(std::floor(pos));
            const double t = pos - double(i);
            return i + 1 < v.size() ? v[i] * (1.0 - t) + v[i + 1] * t : v[i];
        }

        CovertnessSpec reference_spec() { return {dbm_to_watt(-90.0), db_to_linear(3.0), 0.1}; }

        CriterionResult c1_rayleigh()
        {
            const double aperture = double(kN) * kLambda / 2.0;
            const double classic = classic_rayleigh_distance(aperture, kLambda);
            const double eff = effective_rayleigh_distance(aperture, 0.0, kLambda);
            const double e1 = std::abs(classic - 327.7) / 327.7, e2 = std::abs(eff - 121.2) / 121.2;
            return {1, "rayleigh_distances", e1 < 0.015 && e2 < 0.015,
                    fmt("classic %.2f m (err %.2f%%), effective %.2f m (err %.2f%%), tol 1.5%%", classic, 100 * e1,
                        eff, 100 * e2)};
        }

        std::vector<double> random_feasible_centers(std::mt19937_64 &rng, const ArrayLayout &base)
        {
            std::vector<double> q(base.num_subarrays());
            for (auto &x : q)
                x = uniform(rng, base.region().lo, base.region().hi);
            return repair_spacing(q, base.min_center_gap(), base.region());
        }

        CriterionResult c2_modular_approx()
        {
            const auto base = uniform_layout(kN, kM, kLambda);
            const double r_min = modular_validity_range(base);
            const double r_max = classic_rayleigh_distance(base.nominal_aperture(), kLambda);
            auto rng = substream(2, 0xacc);
            std::vector<double> rel, abs_err;
            for (int i = 0; i < 1000; ++i)
            {
                const auto layout = base.with_centers(random_feasible_centers(rng, base));
                const PolarLocation a{uniform(rng, -1.0, 1.0), uniform(rng, r_min, r_max)};
                const PolarLocation b{uniform(rng, -1.0, 1.0), uniform(rng, r_min, r_max)};
                const double exact = correlation(layout, a, b);
                const double approx = correlation_modular_approx(layout, a, b).value;
                abs_err.push_back(std::abs(approx - exact));
                rel.push_back(std::abs(approx - exact) / exact);
            }
            const double p99 = percentile(rel, 0.99);
            return {2, "modular_correlation_approx", p99 < 0.02,
                    fmt("p99 relative error %.4f (tol 0.02), median %.2e, p99 absolute error %.2e over 1000 pairs",
                        p99, percentile(rel, 0.5), percentile(abs_err, 0.99))};
        }

        /// Near-field point close to the array and a far point at a nearby angle.
        std::pair<PolarLocation, PolarLocation> pair_instance(std::mt19937_64 &rng, double r_min)
        {
            return {{0.0, uniform(rng, 1.2 * r_min, 30.0)}, {uniform(rng, -0.05, 0.05), uniform(rng, 100.0, 300.0)}};
        }

        CriterionResult c3_analytic_positions()
        {
            const auto base = uniform_layout(kN, kM, kLambda);
            const double r_min = modular_validity_range(base);
            auto rng = substream(3, 0xacc);
            double worst_modular = 0.0, worst_exact = 0.0;
            for (int i = 0; i < 20; ++i)
            {
                const auto [a, b] = pair_instance(rng, r_min);
                const auto an = analytic_positions_for_pair(base, a, b);
                const ArrayLayout layout(kLambda, kN, kM, an.centers, {an.centers.front(), an.centers.back()});
                worst_modular = std::max(worst_modular, correlation_modular_approx(layout, a, b).value);
                worst_exact = std::max(worst_exact, correlation(layout, a, b));
            }
            return {3, "analytic_positions", worst_modular < 1e-10 && worst_exact < 0.05,
                    fmt("max approximate correlation %.2e (tol 1e-10), max exact correlation %.4f (tol 0.05)",
                        worst_modular, worst_exact)};
        }

        CriterionResult c4_dep()
        {
            const auto spec = reference_spec();
            const double s = spec.nominal_noise_w, rho = spec.rho;
            const double f_max = s * (rho - 1.0 / rho);
            const bool ends = min_dep(0.0, spec) == 1.0 && min_dep(f_max, spec) == 0.0;
            const std::size_t n = 100000;
            double worst_z = 0.0;
            for (int k = 1; k <= 5; ++k)
            {
                const double f = f_max * double(k) / 6.0;
                const double cf = min_dep(f, spec);
                const auto mc = dep_monte_carlo(f, spec, n, std::uint64_t(40 + k));
                const double sd = std::sqrt(cf * (1.0 - cf) / double(n));
                worst_z = std::max(worst_z, std::abs(mc.dep - cf) / sd);
            }
            return {4, "dep_closed_form", ends && worst_z <= 3.0,
                    fmt("endpoints exact: %s, worst Monte-Carlo deviation %.2f sigma at 1e5 trials (tol 3)",
                        ends ? "yes" : "no", worst_z)};
        }

        CriterionResult c5_angle_region()
        {
            const auto layout = uniform_layout(kN, kM, kLambda);
            const PolarLocation willie{0.0, 10.0};
            const double g_w = los_amplitude(willie.range_m, kLambda, kInf);
            const auto base = reference_spec();
            const auto gains = beam_gain_scan(layout, willie, kDefaultAngleStep);
            const auto grid = angle_grid(kDefaultAngleStep);
            bool ok = true;
            double worst_excess = -kInf, prev_lo = kInf, prev_hi = -kInf;
            std::string bands;
            for (double eps : {0.8, 0.9, 0.95})
            {
                const auto spec = CovertnessSpec::from_epsilon(base.nominal_noise_w, base.rho, eps);
                const double delta = correlation_threshold(covert_margin(spec, kN, g_w), 1e-5);
                const auto region = covert_angle_region(layout, willie, delta);
                for (std::size_t i = 0; i < grid.size(); ++i)
                    if (region.is_covert(grid[i]))
                        worst_excess = std::max(worst_excess, gains[i] - delta);
                ok = ok && !region.empty && region.excluded_lo < 0.0 && region.excluded_hi > 0.0 &&
                     region.excluded_lo < prev_lo && region.excluded_hi > prev_hi;
                prev_lo = region.excluded_lo;
                prev_hi = region.excluded_hi;
                bands += fmt(" eps=%.2f:(%.4f,%.4f)", eps, region.excluded_lo, region.excluded_hi);
            }
            ok = ok && worst_excess <= 1e-3;
            return {5, "covert_angle_region", ok,
                    fmt("max gain excess outside band %.2e (tol 1e-3); bands", worst_excess) + bands};
        }

        CriterionResult c6_range_region()
        {
            const double d = kLambda / 2.0;
            const auto base = reference_spec();
            double worst = 0.0;
            bool inside = true;
            std::size_t checked = 0;
            for (double r_w : {10.0, 15.0, 20.0, 25.0})
                for (double eps : {0.8, 0.9, 0.95})
                    for (double p : {1e-5, 1e-3})
                    {
                        const PolarLocation willie{0.0, r_w};
                        const auto spec = CovertnessSpec::from_epsilon(base.nominal_noise_w, base.rho, eps);
                        const double delta =
                            correlation_threshold(covert_margin(spec, kN, los_amplitude(r_w, kLambda, kInf)), p);
                        const auto region = covert_range_region(willie, delta, kN, d, kLambda);
                        inside = inside && !region.empty && region.excluded_lo < r_w && region.excluded_hi > r_w;
                        for (double r : {region.excluded_lo, region.excluded_hi})
                        {
                            if (!std::isfinite(r))
                                continue;
                            const double g = fresnel_g_magnitude(fixed_range_beta(kN, d, kLambda, 0.0, r_w, r));
                            worst = std::max(worst, std::abs(g - delta) / delta);
                            ++checked;
                        }
                    }
            return {6, "covert_range_region", inside && worst <= 0.02,
                    fmt("worst |G(beta)| vs threshold mismatch %.3f%% over %zu boundaries (tol 2%%), willie inside "
                        "band: %s",
                        100 * worst, checked, inside ? "always" : "no")};
        }

        struct SCAInstance
        {
            DigitalProblem problem;
        };

        DigitalProblem random_sca_problem(std::mt19937_64 &rng, const ArrayLayout &layout, bool with_willie)
        {
            const auto pos = antenna_positions(layout);
            const std::vector<PolarLocation> bobs{{0.0, uniform(rng, 8.0, 30.0)},
                                                  {uniform(rng, -0.1, 0.1), uniform(rng, 100.0, 200.0)}};
            std::vector<ChannelVector> hs;
            for (const auto &b : bobs)
                hs.push_back(synth_channel(pos, kLambda,
                                           {std::polar(los_amplitude(b.range_m, kLambda, kInf), uniform(rng, 0, 2 * kPi)),
                                            b},
                                           {}));
            DigitalProblem pr;
            pr.analog = analog_mrt(pos, kLambda, bobs);
            pr.bob_effective = effective_channels(pr.analog, hs);
            pr.power_w = 1.0;
            pr.bob_noise_w = dbm_to_watt(-90.0);
            pr.weights = {1.0, 1.0};
            if (with_willie)
            {
                const PolarLocation w{uniform(rng, -0.1, 0.1), uniform(rng, 15.0, 25.0)};
                const std::vector<ChannelVector> ws{
                    synth_channel(pos, kLambda, {std::polar(los_amplitude(w.range_m, kLambda, kInf), 0.3), w}, {})};
                pr.willie_effective = effective_channels(pr.analog, ws);
                pr.covert_threshold_w = covert_power_threshold(reference_spec());
            }
            return pr;
        }

        /// Best MRT power split on a 1000-point grid, evaluated in the same rate model as the SCA.
        double power_split_oracle(const DigitalProblem &pr)
        {
            const double n = double(pr.analog.rows());
            double best = 0.0;
            for (std::size_t i = 0; i <= 1000; ++i)
            {
                const double p1 = pr.power_w * double(i) / 1000.0;
                CMatrix fd = CMatrix::Zero(2, 2);
                fd(0, 0) = std::sqrt(p1 / n);
                fd(1, 1) = std::sqrt((pr.power_w - p1) / n);
                const double tx = (pr.analog * fd).squaredNorm();
                if (tx > pr.power_w)
                    fd *= std::sqrt(pr.power_w / tx);
                bool covert = true;
                for (const auto &e : pr.willie_effective)
                    covert = covert && (e.adjoint() * fd).squaredNorm() <= pr.covert_threshold_w;
                if (covert)
                    best = std::max(best, achievable_rate(pr.bob_effective, fd, pr.bob_noise_w, pr.weights).weighted_sum);
            }
            return best;
        }

        CriterionResult c7_sca()
        {
            const auto layout = uniform_layout(kN, kM, kLambda);
            auto rng = substream(7, 0xacc);
            std::size_t drops = 0, not_converged = 0, max_iter = 0;
            double worst_drop = 0.0, worst_gap = kInf;
            for (int i = 0; i < 50; ++i)
            {
                const auto pr = random_sca_problem(rng, layout, i % 2 == 0);
                const auto res = solve_digital_sca(pr);
                for (std::size_t k = 1; k < res.trace.size(); ++k)
                    if (res.trace[k].surrogate < res.trace[k - 1].surrogate)
                    {
                        ++drops;
                        worst_drop = std::max(worst_drop, res.trace[k - 1].surrogate - res.trace[k].surrogate);
                    }
                if (!res.converged || !res.ok)
                    ++not_converged;
                max_iter = std::max(max_iter, res.iterations);
                worst_gap = std::min(worst_gap, res.rates.weighted_sum - power_split_oracle(pr));
            }

            // single Bob without wardens: log2(1 + P |e|^2 / (||F_A||^2 sigma^2))
            const auto pos = antenna_positions(layout);
            const std::vector<PolarLocation> bob{{0.1, 30.0}};
            const std::vector<PathComponent> nlos{{cd(1e-6, 2e-6), {0.5, 10.0}}};
            const std::vector<ChannelVector> h{synth_channel(pos, kLambda, {std::polar(2e-5, 0.5), bob[0]}, nlos)};
            DigitalProblem one;
            one.analog = analog_mrt(pos, kLambda, bob);
            one.bob_effective = effective_channels(one.analog, h);
            one.bob_noise_w = dbm_to_watt(-90.0);
            const double closed = std::log2(1.0 + one.power_w * std::norm(one.bob_effective[0][0]) /
                                                      (one.analog.squaredNorm() * one.bob_noise_w));
            const double single_err = std::abs(solve_digital_sca(one).rates.weighted_sum - closed);

            const bool ok = drops == 0 && single_err <= 1e-6 && worst_gap >= -1e-3 && not_converged == 0 &&
                            max_iter <= 50;
            return {7, "sca_solver", ok,
                    fmt("surrogate decreases %zu (worst %.1e), single-user error %.1e (tol 1e-6), min margin over "
                        "power-split oracle %.4f (tol -1e-3), unconverged %zu, max iterations %zu (cap 50)",
                        drops, worst_drop, single_err, worst_gap, not_converged, max_iter)};
        }

        CriterionResult c8_de(unsigned threads)
        {
            const auto uniform_base = uniform_layout(kN, kM, kLambda);
            const double r_min = modular_validity_range(uniform_base);
            auto rng = substream(8, 0xacc);
            double worst_ratio = 0.0;
            std::size_t decreases = 0, generations = 0, settle_max = 0;
            for (int i = 0; i < 20; ++i)
            {
                const auto [a, b] = pair_instance(rng, r_min);
                const auto an = analytic_positions_for_pair(uniform_base, a, b);
                const double gap = uniform_base.min_center_gap();
                const Interval region{an.centers.front() - gap, an.centers.back() + gap};
                const ArrayLayout base(kLambda, kN, kM, an.centers, region);
                const double chi_analytic = correlation(base, a, b);
                DEConfig cfg;
                cfg.seed = std::uint64_t(i + 1);
                cfg.threads = threads;
                const auto res = optimize_positions(pair_correlation_objective(base, a, b), region, kM,
                                                    base.antennas_per_subarray(), base.spacing(), cfg);
                for (std::size_t k = 1; k < res.trace.size(); ++k)
                    decreases += res.trace[k].best_fitness < res.trace[k - 1].best_fitness ? 1 : 0;
                generations = std::max(generations, res.trace.size() - 1);
                // first generation within 1% of the run's total improvement
                const auto &t = res.trace;
                const double total = t.back().best_fitness - t.front().best_fitness;
                std::size_t settle = 0;
                while (t.back().best_fitness - t[settle].best_fitness > 0.01 * total)
                    ++settle;
                settle_max = std::max(settle_max, settle);
                const double chi = correlation(base.with_centers(res.best), a, b);
                worst_ratio = std::max(worst_ratio, res.best_fitness.penalty > 0 ? kInf : chi / chi_analytic);
            }
            return {8, "differential_evolution", decreases == 0 && worst_ratio <= 1.05 && generations <= 50,
                    fmt("best-fitness decreases %zu, worst correlation ratio to analytic %.3f (tol 1.05) after %zu "
                        "generations (cap 50), latest generation within 1%% of final improvement %zu",
                        decreases, worst_ratio, generations, settle_max)};
        }

        bool non_increasing(const std::vector<double> &p, double tol)
        {
            for (std::size_t i = 1; i < p.size(); ++i)
                if (p[i] > p[i - 1] + tol)
                    return false;
            return true;
        }

        CriterionResult c9_trends(const AcceptanceOptions &opt)
        {
            const auto s = default_scenario();
            CampaignOptions co;
            co.threads = opt.threads;
            std::string detail;
            bool ok = true;

            {
                const auto t = run_figure("fig3", s, co).table;
                const auto in = t.column("in_support"), fixed = t.column("FIXED"),
                           movable = t.column("MOVABLE_PROPOSED"), bound = t.column("UPPER_BOUND");
                double min_fixed = kInf, min_movable = kInf;
                for (std::size_t i = 0; i < in.size(); ++i)
                    if (in[i] > 0.5)
                    {
                        min_fixed = std::min(min_fixed, fixed[i] / bound[i]);
                        min_movable = std::min(min_movable, movable[i] / bound[i]);
                    }
                const bool a = min_fixed <= 0.8 && min_movable >= 0.95;
                ok = ok && a;
                detail += fmt("(a) %s fixed/bound min %.3f, movable/bound min %.3f in support; ", a ? "ok" : "FAIL",
                              min_fixed, min_movable);
            }
            {
                const auto t = run_figure("fig5", s, co).table;
                const auto r = t.column("r_b1"), fixed = t.column("FIXED"), movable = t.column("MOVABLE_PROPOSED");
                double worst = 0.0;
                for (std::size_t i = 0; i < r.size(); ++i)
                    if (r[i] < 20.0 || r[i] > 30.0)
                        worst = std::max(worst, movable[i] / fixed[i]);
                const bool b = worst < 0.1;
                ok = ok && b;
                detail += fmt("(b) %s worst movable/fixed outside band %.4f; ", b ? "ok" : "FAIL", worst);
            }
            {
                CampaignOptions c8 = co;
                c8.trials = opt.rate_sweep_trials;
                c8.schemes = {SchemeId::MovableProposed, SchemeId::Fixed};
                const auto t = run_figure("fig8", s, c8).table;
                const auto movable = t.column("MOVABLE_PROPOSED"), fixed = t.column("FIXED");
                bool increasing = true;
                for (std::size_t i = 1; i < movable.size(); ++i)
                    increasing = increasing && movable[i] > movable[i - 1];
                const auto [lo, hi] = std::minmax_element(fixed.begin(), fixed.end());
                const double change = (*hi - *lo) / *hi;
                const bool c = increasing && change < 0.05;
                ok = ok && c;
                detail += fmt("(c) %s movable increasing: %s, fixed relative change %.4f; ", c ? "ok" : "FAIL",
                              increasing ? "yes" : "no", change);
            }
            {
                CampaignOptions c10 = co;
                c10.trials = opt.csi_realizations;
                c10.draws_per_trial = opt.csi_draws;
                const auto t = run_figure("fig10", s, c10).table;
                const double tol = 2.0 / std::sqrt(double(opt.csi_realizations * opt.csi_draws));
                bool d = true;
                double worst_free = 0.0;
                for (const auto &name : t.columns())
                {
                    if (name == "epsilon")
                        continue;
                    const auto p = t.column(name);
                    if (is_covert_constrained(scheme_from_string(name)))
                        d = d && p.front() == 1.0 && non_increasing(p, tol);
                    else
                        worst_free = std::max(worst_free, *std::max_element(p.begin(), p.end()));
                }
                d = d && worst_free < 0.05;
                ok = ok && d;
                detail += fmt("(d) %s unconstrained max probability %.3f, constrained start at 1 and non-increasing",
                              d ? "ok" : "FAIL", worst_free);
            }
            return {9, "figure_trends", ok, detail};
        }

        CriterionResult c10_determinism(unsigned threads)
        {
            const auto s = default_scenario();
            CampaignOptions co;
            co.threads = threads;
            const auto first = run_figure("fig5", s, co).table.str();
            const auto second = run_figure("fig5", s, co).table.str();
            return {10, "determinism", first == second,
                    fmt("two fig5 runs with seed %llu: %s (%zu bytes)", static_cast<unsigned long long>(s.seed),
                        first == second ? "identical" : "different", first.size())};
        }
    }

    std::string format_result(const CriterionResult &r)
    {
        return fmt("criterion %d %s %s: ", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str()) + r.detail +
               fmt(" (%.1f s)", r.seconds);
    }

    std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opt, std::ostream *log)
    {
        const std::vector<std::function<CriterionResult()>> criteria{
            c1_rayleigh,
            c2_modular_approx,
            c3_analytic_positions,
            c4_dep,
            c5_angle_region,
            c6_range_region,
            c7_sca,
            [&] { return c8_de(opt.threads); },
            [&] { return c9_trends(opt); },
            [&] { return c10_determinism(opt.threads); },
        };
        std::vector<CriterionResult> out;
        for (std::size_t i = 0; i < criteria.size(); ++i)
        {
            const int id = int(i) + 1;
            if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end())
                continue;
            const auto t0 = std::chrono::steady_clock::now();
            auto r = criteria[i]();
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (log)
                *log << format_result(r) << std::endl;
            out.push_back(std::move(r));
        }
        return out;
    }
}
