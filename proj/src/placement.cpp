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

#include "mfcovert/placement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mfcovert/parallel.hpp"
#include "mfcovert/rng.hpp"

namespace mfcovert
{
    void DEConfig::validate() const
    {
        if (population < 4)
            throw std::invalid_argument("DEConfig: population must be at least 4");
        if (!(mutation_factor > 0.0 && mutation_factor <= 2.0))
            throw std::invalid_argument("DEConfig: mutation factor must lie in (0, 2]");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
            throw std::invalid_argument("DEConfig: crossover rate must lie in [0, 1]");
        if (!(penalty_scale > 0.0))
            throw std::invalid_argument("DEConfig: penalty scale must be positive");
    }

    AnalyticPositions analytic_null_positions(double omega_theta, double omega_r, std::size_t n_sub, double spacing_m,
                                            std::size_t m, Interval region)
    {
        if (omega_r == 0.0 || !std::isfinite(omega_r))
            throw std::invalid_argument("analytic_null_positions: needs a nonzero range difference term");
        if (n_sub == 0 || m == 0)
            throw std::invalid_argument("analytic_null_positions: empty array");
        const double nt = double(n_sub);
        const double gap = nt * spacing_m;
        auto center_of = [&](long long k) { return (2.0 * double(k) - nt * omega_theta) / (2.0 * nt * omega_r); };
        const double k0 = nt * omega_r * region.center() + nt * omega_theta / 2.0;
        const auto base = static_cast<long long>(std::llround(k0));

        // walk outward from k0: base, base+1, base-1, base+2, ...; ties go to the smaller |k - k0|
        std::vector<std::pair<long long, double>> picked;
        for (long long step = 0; picked.size() < m; ++step)
        {
            if (step > 100000000LL)
                throw std::runtime_error("analytic_null_positions: could not place all subarrays");
            long long cands[2] = {base + step, base - step};
            if (std::abs(double(cands[1]) - k0) < std::abs(double(cands[0]) - k0))
                std::swap(cands[0], cands[1]);
            for (int c = 0; c < (step == 0 ? 1 : 2) && picked.size() < m; ++c)
            {
                const long long k = cands[c];
                if (k % static_cast<long long>(n_sub) == 0)
                    continue;
                const double q = center_of(k);
                bool ok = true;
                for (const auto &p : picked)
                    if (std::abs(p.second - q) < gap * (1.0 - 1e-12))
                        ok = false;
                if (ok)
                    picked.emplace_back(k, q);
            }
        }
        std::sort(picked.begin(), picked.end(), [](auto &a, auto &b) { return a.second < b.second; });
        AnalyticPositions out;
        for (std::size_t i = 0; i < picked.size(); ++i)
        {
            out.k.push_back(picked[i].first);
            out.centers.push_back(picked[i].second);
            if (!region.contains(picked[i].second))
                out.outside_region.push_back(i);
        }
        return out;
    }

    AnalyticPositions analytic_positions_for_pair(const ArrayLayout &layout, const PolarLocation &loc_i,
                                                  const PolarLocation &loc_j)
    {
        const double omega_theta = loc_j.theta - loc_i.theta;
        const double omega_r = (1.0 - loc_i.theta * loc_i.theta) / (2.0 * loc_i.range_m) -
                               (1.0 - loc_j.theta * loc_j.theta) / (2.0 * loc_j.range_m);
        return analytic_null_positions(omega_theta, omega_r, layout.antennas_per_subarray(), layout.spacing(),
                                     layout.num_subarrays(), layout.region());
    }

    FitnessBreakdown spacing_penalty(std::span<const double> q, double min_gap, double penalty_scale)
    {
        FitnessBreakdown fb;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j)
            {
                const double dist = std::abs(q[i] - q[j]);
                if (dist < min_gap * (1.0 - 1e-12))
                {
                    fb.violation_pairs.emplace_back(i, j);
                    fb.violation_extent += min_gap - dist;
                }
            }
        fb.penalty = penalty_scale * fb.violation_extent * double(fb.violation_pairs.size());
        return fb;
    }

    FitnessBreakdown fitness(std::span<const double> candidate, const PositionObjective &objective, double min_gap,
                             double penalty_scale)
    {
        auto fb = spacing_penalty(candidate, min_gap, penalty_scale);
        fb.objective = objective(candidate);
        fb.fitness = fb.objective - fb.penalty;
        return fb;
    }

    std::vector<double> de_mutate(std::span<const double> best, std::span<const double> r1,
                                  std::span<const double> r2, double f)
    {
        if (best.size() != r1.size() || best.size() != r2.size())
            throw std::invalid_argument("de_mutate: candidate sizes differ");
        std::vector<double> v(best.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = best[j] + f * (r1[j] - r2[j]);
        return v;
    }

    std::vector<double> de_crossover(std::span<const double> mutant, std::span<const double> current, double cr,
                                     std::size_t forced_index, std::mt19937_64 &rng, Interval region)
    {
        if (mutant.size() != current.size() || forced_index >= mutant.size())
            throw std::invalid_argument("de_crossover: bad sizes or forced index");
        std::vector<double> t(mutant.size());
        for (std::size_t j = 0; j < t.size(); ++j)
        {
            const double u = uniform01(rng);
            t[j] = (u < cr || j == forced_index) ? mutant[j] : current[j];
        }
        return clamp_to_region(t, region);
    }

    std::vector<double> repair_spacing(std::span<const double> candidate, double min_gap, Interval region)
    {
        std::vector<double> q = clamp_to_region(candidate, region);
        std::sort(q.begin(), q.end());
        for (std::size_t i = 1; i < q.size(); ++i)
            q[i] = std::max(q[i], q[i - 1] + min_gap);
        if (!q.empty() && q.back() > region.hi)
        {
            q.back() = region.hi;
            for (std::size_t i = q.size() - 1; i-- > 0;)
                q[i] = std::min(q[i], q[i + 1] - min_gap);
        }
        return clamp_to_region(q, region);
    }

    namespace
    {
        using CacheKey = std::vector<long long>;

        CacheKey cache_key(std::span<const double> q)
        {
            CacheKey k(q.size());
            for (std::size_t i = 0; i < q.size(); ++i)
                k[i] = std::llround(q[i] * 1e6);
            std::sort(k.begin(), k.end());
            return k;
        }

        struct Evaluator
        {
            const PositionObjective &objective;
            double min_gap;
            double eta;
            unsigned threads;
            // value: fitness and the vector it was computed for; hits are replaced by that vector so
            // the population only ever holds evaluated candidates
            std::map<CacheKey, std::pair<FitnessBreakdown, std::vector<double>>> cache;
            std::size_t evaluations = 0;
            std::size_t hits = 0;

            std::vector<FitnessBreakdown> run(std::vector<std::vector<double>> &cands)
            {
                std::vector<FitnessBreakdown> out(cands.size());
                std::vector<CacheKey> keys(cands.size());
                std::map<CacheKey, std::size_t> todo; // first index of each uncached key
                for (std::size_t i = 0; i < cands.size(); ++i)
                {
                    keys[i] = cache_key(cands[i]);
                    if (cache.count(keys[i]) || todo.count(keys[i]))
                        ++hits;
                    else
                        todo.emplace(keys[i], i);
                }
                std::vector<std::size_t> idx;
                for (const auto &t : todo)
                    idx.push_back(t.second);
                std::sort(idx.begin(), idx.end());
                std::vector<FitnessBreakdown> fresh(idx.size());
                parallel_for(
                    idx.size(), [&](std::size_t i) { fresh[i] = fitness(cands[idx[i]], objective, min_gap, eta); },
                    threads);
                evaluations += idx.size();
                for (std::size_t i = 0; i < idx.size(); ++i)
                    cache.emplace(keys[idx[i]], std::make_pair(fresh[i], cands[idx[i]]));
                for (std::size_t i = 0; i < cands.size(); ++i)
                {
                    const auto &hit = cache.at(keys[i]);
                    out[i] = hit.first;
                    cands[i] = hit.second;
                }
                return out;
            }
        };

        std::size_t best_index(const std::vector<FitnessBreakdown> &f)
        {
            std::size_t b = 0;
            for (std::size_t i = 1; i < f.size(); ++i)
                if (f[i].fitness > f[b].fitness)
                    b = i;
            return b;
        }

        DETraceRow trace_row(std::size_t it, const std::vector<FitnessBreakdown> &f)
        {
            DETraceRow r;
            r.iteration = it;
            r.best_fitness = f[best_index(f)].fitness;
            double sum = 0.0;
            for (const auto &x : f)
            {
                sum += x.fitness;
                if (x.penalty > 0.0)
                    ++r.penalty_count;
            }
            r.mean_fitness = sum / double(f.size());
            return r;
        }
    }

    DEResult optimize_positions(const PositionObjective &objective, Interval region, std::size_t m,
                                std::size_t n_sub, double spacing_m, const DEConfig &cfg,
                                const std::vector<std::vector<double>> &seeds)
    {
        cfg.validate();
        if (m == 0 || n_sub == 0 || !(spacing_m > 0.0))
            throw std::invalid_argument("optimize_positions: empty array");
        if (region.lo > region.hi)
            throw std::invalid_argument("optimize_positions: empty region");
        const double gap = double(n_sub) * spacing_m;
        const std::size_t g_count = cfg.population;

        std::vector<std::vector<double>> pop(g_count);
        for (std::size_t g = 0; g < g_count; ++g)
        {
            if (g < seeds.size())
            {
                if (seeds[g].size() != m)
                    throw std::invalid_argument("optimize_positions: seed candidate has the wrong size");
                pop[g] = clamp_to_region(seeds[g], region);
                continue;
            }
            auto rng = substream(cfg.seed, 0, g);
            std::vector<double> q(m);
            for (auto &x : q)
                x = uniform(rng, region.lo, region.hi);
            pop[g] = repair_spacing(q, gap, region);
        }

        Evaluator ev{objective, gap, cfg.penalty_scale, cfg.threads, {}, 0, 0};
        auto fit = ev.run(pop);
        DEResult res;
        res.trace.push_back(trace_row(0, fit));

        for (std::size_t it = 1; it <= cfg.iterations; ++it)
        {
            const auto &best = pop[best_index(fit)];
            std::vector<std::vector<double>> trials(g_count);
            for (std::size_t g = 0; g < g_count; ++g)
            {
                auto rng = substream(cfg.seed, it, g);
                std::size_t r1, r2;
                do
                    r1 = std::size_t(rng() % g_count);
                while (r1 == g);
                do
                    r2 = std::size_t(rng() % g_count);
                while (r2 == g || r2 == r1);
                const auto v = de_mutate(best, pop[r1], pop[r2], cfg.mutation_factor);
                const std::size_t forced = std::size_t(rng() % m);
                trials[g] = de_crossover(v, pop[g], cfg.crossover_rate, forced, rng, region);
            }
            const auto tfit = ev.run(trials);
            for (std::size_t g = 0; g < g_count; ++g)
                if (de_select(tfit[g].fitness, fit[g].fitness))
                {
                    pop[g] = std::move(trials[g]);
                    fit[g] = tfit[g];
                }
            res.trace.push_back(trace_row(it, fit));
        }

        const std::size_t b = best_index(fit);
        res.best = pop[b];
        std::sort(res.best.begin(), res.best.end());
        res.best_fitness = spacing_penalty(res.best, gap, cfg.penalty_scale);
        res.best_fitness.objective = fit[b].objective;
        res.best_fitness.fitness = fit[b].fitness;
        res.evaluations = ev.evaluations;
        res.cache_hits = ev.hits;
        return res;
    }

    PositionObjective pair_correlation_objective(const ArrayLayout &base, PolarLocation loc_i, PolarLocation loc_j)
    {
        return [base, loc_i, loc_j](std::span<const double> q) {
            const auto layout = base.with_centers({q.begin(), q.end()});
            return -correlation(layout, loc_i, loc_j);
        };
    }

    PositionObjective weighted_correlation_objective(const ArrayLayout &base, std::vector<WeightedPair> pairs)
    {
        return [base, pairs = std::move(pairs)](std::span<const double> q) {
            const auto layout = base.with_centers({q.begin(), q.end()});
            const auto pos = antenna_positions(layout);
            double s = 0.0;
            for (const auto &p : pairs)
            {
                const double c = correlation(pos, layout.wavelength(), p.a, p.b);
                s += p.weight * c * c;
            }
            return -s;
        };
    }
}
