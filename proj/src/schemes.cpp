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

#include "mfcovert/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mfcovert/rng.hpp"

namespace mfcovert
{
    namespace
    {
        const std::vector<std::pair<SchemeId, std::string>> kNames = {
            {SchemeId::MovableProposed, "MOVABLE_PROPOSED"},
            {SchemeId::MovableNoCovert, "MOVABLE_NO_COVERT"},
            {SchemeId::Fixed, "FIXED"},
            {SchemeId::FixedNoCovert, "FIXED_NO_COVERT"},
            {SchemeId::RandomMovable, "RANDOM_MOVABLE"},
            {SchemeId::RandomMovableNoCovert, "RANDOM_MOVABLE_NO_COVERT"},
            {SchemeId::UpperBound, "UPPER_BOUND"},
        };

        // 1 + 1e-9 relative slack absorbs rounding in the post-hoc check
        constexpr double kCovertSlack = 1.0 + 1e-9;

        const SchemeOutcome &better(const SchemeOutcome &a, const SchemeOutcome &b)
        {
            return b.rates.weighted_sum > a.rates.weighted_sum ? b : a;
        }

        std::uint64_t de_seed(const Scenario &s, const Realization &r, SchemeId id)
        {
            return mix64(s.seed ^ mix64(r.trial * 16 + std::uint64_t(id)));
        }

        std::vector<std::vector<double>> random_layouts(const Scenario &s, const Realization &r)
        {
            const auto base = s.fixed_layout();
            const auto region = base.region();
            std::vector<std::vector<double>> out(s.de.population);
            for (std::size_t g = 0; g < out.size(); ++g)
            {
                auto rng = substream(de_seed(s, r, SchemeId::RandomMovable), 0xa11, g);
                std::vector<double> q(base.num_subarrays());
                for (auto &x : q)
                    x = uniform(rng, region.lo, region.hi);
                out[g] = repair_spacing(q, base.min_center_gap(), region);
            }
            return out;
        }

        struct Runner
        {
            const Scenario &s;
            const Realization &r;
            std::map<SchemeId, SchemeOutcome> done;

            SchemeOutcome layout_design(const std::vector<double> &q, bool covert, const CMatrix &warm = CMatrix())
            {
                return design_for_layout(s, r, s.fixed_layout().with_centers(q), covert, warm);
            }

            SchemeOutcome movable(bool covert, const std::vector<std::vector<double>> &seeds, SchemeId id)
            {
                const auto base = s.fixed_layout();
                DEConfig cfg = s.de;
                cfg.seed = de_seed(s, r, id);
                PositionObjective obj = [&](std::span<const double> q) {
                    const auto o = design_for_layout(s, r, base.with_centers({q.begin(), q.end()}), covert);
                    return o.rates.weighted_sum;
                };
                const auto de = optimize_positions(obj, base.region(), base.num_subarrays(),
                                                   base.antennas_per_subarray(), base.spacing(), cfg, seeds);
                auto out = layout_design(de.best, covert);
                out.de_trace = de.trace;
                return out;
            }

            const SchemeOutcome &get(SchemeId id)
            {
                if (auto it = done.find(id); it != done.end())
                    return it->second;
                SchemeOutcome o;
                const auto uniform = s.fixed_layout().centers();
                switch (id)
                {
                case SchemeId::Fixed:
                    o = layout_design(uniform, true);
                    break;
                case SchemeId::FixedNoCovert:
                {
                    const auto &c = get(SchemeId::Fixed);
                    o = better(layout_design(uniform, false), layout_design(uniform, false, c.beamformer.digital));
                    break;
                }
                case SchemeId::MovableProposed:
                    o = movable(true, {uniform}, id);
                    break;
                case SchemeId::MovableNoCovert:
                {
                    const auto &c = get(SchemeId::MovableProposed);
                    auto relaxed = movable(false, {uniform, c.centers}, id);
                    auto warm = layout_design(c.centers, false, c.beamformer.digital);
                    warm.de_trace = relaxed.de_trace;
                    o = better(relaxed, warm);
                    break;
                }
                case SchemeId::RandomMovable:
                {
                    for (const auto &q : random_layouts(s, r))
                    {
                        auto cand = layout_design(q, true);
                        if (o.centers.empty() || cand.rates.weighted_sum > o.rates.weighted_sum)
                            o = std::move(cand);
                    }
                    break;
                }
                case SchemeId::RandomMovableNoCovert:
                {
                    const auto &c = get(SchemeId::RandomMovable);
                    o = layout_design(c.centers, false, c.beamformer.digital);
                    for (const auto &q : random_layouts(s, r))
                    {
                        auto cand = layout_design(q, false);
                        if (cand.rates.weighted_sum > o.rates.weighted_sum)
                            o = std::move(cand);
                    }
                    break;
                }
                case SchemeId::UpperBound:
                {
                    const double n = double(s.num_antennas);
                    std::vector<double> a;
                    for (const auto &b : r.bobs)
                    {
                        // ||h|| <= sqrt(N)|g| + sqrt(N/L) sum |g_l| for every layout
                        double amp = std::sqrt(n) * std::abs(b.los.gain);
                        for (const auto &p : b.nlos)
                            amp += std::sqrt(n / double(b.nlos.size())) * std::abs(p.gain);
                        a.push_back(amp * amp / s.bob_noise_w);
                    }
                    o.rates.weights = r.weights;
                    o.rates.weighted_sum = weighted_waterfilling_bound(a, r.weights, s.power_w);
                    o.covert_ok = false;
                    o.diagnostic = "bound";
                    break;
                }
                }
                o.scheme = id;
                return done.emplace(id, std::move(o)).first->second;
            }
        };
    }

    std::string to_string(SchemeId id)
    {
        for (const auto &[k, v] : kNames)
            if (k == id)
                return v;
        return "UNKNOWN";
    }

    SchemeId scheme_from_string(const std::string &name)
    {
        for (const auto &[k, v] : kNames)
            if (v == name)
                return k;
        throw std::invalid_argument("unknown scheme '" + name + "'");
    }

    const std::vector<SchemeId> &all_schemes()
    {
        static const std::vector<SchemeId> ids = [] {
            std::vector<SchemeId> v;
            for (const auto &p : kNames)
                v.push_back(p.first);
            return v;
        }();
        return ids;
    }

    bool is_covert_constrained(SchemeId id)
    {
        return id == SchemeId::MovableProposed || id == SchemeId::Fixed || id == SchemeId::RandomMovable;
    }

    std::vector<double> willie_received_powers(const std::vector<ChannelVector> &willies, const HybridBeamformer &bf)
    {
        std::vector<double> out;
        for (const auto &w : willies)
            out.push_back(received_covert_power(w.coefficients, bf));
        return out;
    }

    SchemeOutcome design_for_layout(const Scenario &s, const Realization &r, const ArrayLayout &layout, bool covert,
                                    const CMatrix &warm_digital)
    {
        const auto pos = antenna_positions(layout);
        const double lambda = layout.wavelength();
        const auto bobs = r.bob_locations();
        const auto hb = r.bob_channels(pos, lambda);
        const auto hw = r.willie_channels(pos, lambda);

        DigitalProblem pr;
        pr.analog = analog_mrt(pos, lambda, bobs);
        pr.bob_effective = effective_channels(pr.analog, hb);
        pr.willie_effective = effective_channels(pr.analog, hw);
        const double threshold = covert_power_threshold(s.covertness);
        pr.covert_threshold_w = covert ? threshold : std::numeric_limits<double>::infinity();
        pr.power_w = s.power_w;
        pr.bob_noise_w = s.bob_noise_w;
        pr.weights = r.weights;
        pr.initial_digital = warm_digital;

        const auto sol = solve_digital_sca(pr, s.sca);
        SchemeOutcome o;
        o.centers = layout.centers();
        o.beamformer = {pr.analog, sol.digital, s.power_w};
        o.sca_trace = sol.trace;
        o.covert_threshold_w = threshold;
        o.solver_ok = sol.ok;
        o.diagnostic = sol.diagnostic;
        if (sol.ok)
            o.rates = sol.rates;
        else
        {
            o.beamformer.digital.setZero();
            o.rates = achievable_rate(pr.bob_effective, o.beamformer.digital, s.bob_noise_w, r.weights);
        }
        o.willie_power_w = willie_received_powers(hw, o.beamformer);
        o.covert_ok = std::all_of(o.willie_power_w.begin(), o.willie_power_w.end(),
                                  [&](double p) { return p <= threshold * kCovertSlack; });
        return o;
    }

    std::vector<SchemeOutcome> run_schemes(const std::vector<SchemeId> &ids, const Scenario &s, const Realization &r)
    {
        Runner run{s, r, {}};
        std::vector<SchemeOutcome> out;
        for (auto id : ids)
            out.push_back(run.get(id));
        return out;
    }

    SchemeOutcome run_scheme(SchemeId id, const Scenario &s, const Realization &r)
    {
        return run_schemes({id}, s, r).front();
    }

    ChannelVector perturb_csi(const ChannelVector &channel, double epsilon, std::mt19937_64 &rng)
    {
        if (!(epsilon >= 0.0 && epsilon <= 1.0))
            throw std::invalid_argument("perturb_csi: epsilon must lie in [0, 1]");
        ChannelVector out = channel;
        if (epsilon == 0.0)
            return out;
        const double sd = epsilon * channel.coefficients.norm() / std::sqrt(2.0);
        for (Eigen::Index n = 0; n < out.coefficients.size(); ++n)
        {
            const double re = standard_normal(rng), im = standard_normal(rng);
            out.coefficients[n] += cd(re, im) * sd;
        }
        return out;
    }
}
