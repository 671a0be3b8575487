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

#ifndef MFCOVERT_PLACEMENT_HPP
#define MFCOVERT_PLACEMENT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "mfcovert/channel.hpp"
#include "mfcovert/geometry.hpp"

namespace mfcovert
{
    struct DEConfig
    {
        std::size_t population = 50;
        std::size_t iterations = 50;
        double mutation_factor = 0.3;
        double crossover_rate = 0.9;
        double penalty_scale = 1000.0;
        std::uint64_t seed = 1;
        unsigned threads = 0; // 0 = hardware concurrency

        void validate() const; // throws std::invalid_argument
    };

    struct FitnessBreakdown
    {
        double objective = 0.0;
        std::vector<std::pair<std::size_t, std::size_t>> violation_pairs; // T1, i < j
        double violation_extent = 0.0;                                     // T2
        double penalty = 0.0;                                              // eta * T2 * |T1|
        double fitness = 0.0;
    };

    struct DETraceRow
    {
        std::size_t iteration = 0;
        double best_fitness = 0.0;
        double mean_fitness = 0.0;
        std::size_t penalty_count = 0; // candidates with nonzero penalty
    };

    struct DEResult
    {
        std::vector<double> best;
        FitnessBreakdown best_fitness;
        std::vector<DETraceRow> trace;
        std::size_t evaluations = 0; // objective calls actually made
        std::size_t cache_hits = 0;
    };

    /// Objective to maximize. Must be safe to call concurrently.
    using PositionObjective = std::function<double(std::span<const double>)>;

    struct AnalyticPositions
    {
        std::vector<double> centers; // ascending
        std::vector<long long> k;    // integer index of each center
        std::vector<std::size_t> outside_region;
    };

    /// Centers q = (2k - Ntilde W_theta) / (2 Ntilde W_r), k not a multiple of Ntilde, that null
    /// the subarray-level correlation. The M indices nearest the region center are used, skipping
    /// any that would violate the minimum spacing. Throws if omega_r == 0.
    AnalyticPositions analytic_null_positions(double omega_theta, double omega_r, std::size_t n_sub, double spacing_m,
                                            std::size_t m, Interval region);

    /// analytic_null_positions() for two locations seen by `layout`, inside its region.
    AnalyticPositions analytic_positions_for_pair(const ArrayLayout &layout, const PolarLocation &loc_i,
                                                  const PolarLocation &loc_j);

    /// Sum of pairwise spacing deficits and the offending pairs.
    FitnessBreakdown spacing_penalty(std::span<const double> candidate, double min_gap, double penalty_scale);

    FitnessBreakdown fitness(std::span<const double> candidate, const PositionObjective &objective, double min_gap,
                             double penalty_scale);

    std::vector<double> de_mutate(std::span<const double> best, std::span<const double> r1,
                                  std::span<const double> r2, double f);

    /// Binomial crossover: coordinate j comes from the mutant if U_j < cr or j == forced_index,
    /// then the result is clamped to the region.
    std::vector<double> de_crossover(std::span<const double> mutant, std::span<const double> current, double cr,
                                     std::size_t forced_index, std::mt19937_64 &rng, Interval region);

    /// True if the trial replaces the current candidate (strictly better fitness).
    inline bool de_select(double trial_fitness, double current_fitness) { return trial_fitness > current_fitness; }

    /// Sort, push neighbours apart to min_gap left to right, pull back from the right edge, clamp.
    std::vector<double> repair_spacing(std::span<const double> candidate, double min_gap, Interval region);

    /// Differential evolution over M centers. `seeds` are placed at the start of the initial
    /// population (clamped, not repaired); the rest is drawn uniformly and repaired.
    DEResult optimize_positions(const PositionObjective &objective, Interval region, std::size_t m,
                                std::size_t n_sub, double spacing_m, const DEConfig &config,
                                const std::vector<std::vector<double>> &seeds = {});

    /// Negative exact correlation between two locations for the layout with the given centers.
    PositionObjective pair_correlation_objective(const ArrayLayout &base, PolarLocation loc_i, PolarLocation loc_j);

    struct WeightedPair
    {
        PolarLocation a;
        PolarLocation b;
        double weight = 1.0;
    };

    /// -sum_k weight_k chi_k^2 over the given pairs.
    PositionObjective weighted_correlation_objective(const ArrayLayout &base, std::vector<WeightedPair> pairs);
}

#endif
