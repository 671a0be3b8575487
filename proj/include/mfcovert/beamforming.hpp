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

#ifndef MFCOVERT_BEAMFORMING_HPP
#define MFCOVERT_BEAMFORMING_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mfcovert/beamformer.hpp"
#include "mfcovert/channel.hpp"
#include "mfcovert/covertness.hpp"

namespace mfcovert
{
    struct RateReport
    {
        std::vector<double> per_bob_rate; // bps/Hz
        std::vector<double> weights;
        double weighted_sum = 0.0;
    };

    struct SCAConfig
    {
        std::size_t max_iters = 50;
        double objective_tol = 1e-4;  // relative change of the surrogate objective
        double subproblem_tol = 1e-10; // duality gap of the convex subproblem
        double init_scale = 1.0;      // fraction of the power budget used by the starting point
    };

    struct SCATraceRow
    {
        std::size_t iteration = 0;
        double surrogate = 0.0;
        double true_rate = 0.0;
        double max_violation = 0.0; // max over constraints of (lhs - rhs) / rhs, <= 0 when feasible
    };

    /// One digital beamforming instance. Willie thresholds are usually covert_power_threshold(spec);
    /// an empty willie list (or an infinite threshold) drops the covertness constraint.
    struct DigitalProblem
    {
        CMatrix analog;                      // N x B
        std::vector<CVector> bob_effective; // e_B,b = F_A^H h_B,b
        std::vector<CVector> willie_effective;
        double covert_threshold_w = std::numeric_limits<double>::infinity();
        double power_w = 1.0;
        double bob_noise_w = 1e-12;
        std::vector<double> weights; // empty -> equal weights 1/B
        CMatrix initial_digital;     // empty -> equal-power MRT start; otherwise scaled to feasibility
    };

    struct SCAResult
    {
        CMatrix digital;
        RateReport rates;
        std::vector<SCATraceRow> trace;
        std::size_t iterations = 0;
        bool converged = false;
        bool ok = true; // false if a subproblem could not be certified
        std::string diagnostic;
    };

    /// Column b is sqrt(N) a(q, theta_b, r_b).
    CMatrix analog_mrt(const ArrayLayout &layout, std::span<const PolarLocation> bobs);
    CMatrix analog_mrt(std::span<const double> positions, double wavelength_m, std::span<const PolarLocation> bobs);

    std::vector<CVector> effective_channels(const CMatrix &analog, std::span<const ChannelVector> channels);

    /// Equal weights 1/B when weights is empty; otherwise weights are used as given.
    RateReport achievable_rate(std::span<const CVector> bob_effective, const CMatrix &digital, double noise_w,
                               std::span<const double> weights = {});

    /// Concave minorant of each Bob's rate around digital_prev, evaluated at digital_var.
    std::vector<double> sca_surrogate(std::span<const CVector> bob_effective, const CMatrix &digital_prev,
                                      const CMatrix &digital_var, double noise_w);

    SCAResult solve_digital_sca(const DigitalProblem &problem, const SCAConfig &config = {});

    /// Largest per-Willie value of (leakage / threshold) - 1 and relative power excess.
    double max_constraint_violation(const DigitalProblem &problem, const CMatrix &digital);

    struct TwoUserInput
    {
        double chi_b1b2 = 0.0;
        double chi_w_b1 = 0.0;
        double chi_w_b2 = 0.0;
        double gain_b1 = 0.0; // LoS amplitudes |g|
        double gain_b2 = 0.0;
        double gain_w = 0.0;
        std::size_t num_antennas = 256;
        double power_w = 1.0;
        double bob_noise_w = 1e-12;
        CovertnessSpec spec;
        bool covert = true;
    };

    struct TwoUserAllocation
    {
        double p1_w = 0.0;
        double p2_w = 0.0;
        double rate1 = 0.0;
        double rate2 = 0.0;
        double sum_rate = 0.0;
        bool feasible = false;
    };

    /// LoS two-Bob rates with MRT beams and powers (p1, p2).
    TwoUserAllocation two_user_rates(const TwoUserInput &in, double p1_w, double p2_w);

    /// Exhaustive search over P1 in {0, P/grid, ..., P}, P2 = P - P1.
    TwoUserAllocation power_allocation_2user(const TwoUserInput &in, std::size_t grid = 1000);

    /// Interference-free bound log2(1 + P1 N g1^2 / sigma^2) + log2(1 + P2 N g2^2 / sigma^2).
    double two_user_upper_bound(const TwoUserInput &in, double p1_w, double p2_w);

    /// max sum_b w_b log2(1 + P_b a_b) over P_b >= 0, sum P_b = P, by water-filling.
    /// a_b = ||h_b||^2 / sigma^2.
    double weighted_waterfilling_bound(std::span<const double> snr_per_watt, std::span<const double> weights,
                                       double power_w);
}

#endif
