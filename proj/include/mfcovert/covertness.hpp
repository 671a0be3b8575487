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

#ifndef MFCOVERT_COVERTNESS_HPP
#define MFCOVERT_COVERTNESS_HPP

#include <cstdint>
#include <span>
#include <string>

#include "mfcovert/beamformer.hpp"
#include "mfcovert/channel.hpp"

namespace mfcovert
{
    /// Warden noise model: sigma_w^2 log-uniform on [nominal / rho, rho * nominal].
    struct CovertnessSpec
    {
        double nominal_noise_w = 1e-12;
        double rho = 1.9952623149688795; // 3 dB
        double varsigma = 0.1;

        double epsilon() const { return 1.0 - varsigma; }
        void validate() const; // throws std::invalid_argument
        static CovertnessSpec from_epsilon(double nominal_noise_w, double rho, double epsilon);
    };

    /// Largest received signal power at a warden that keeps its minimum DEP >= epsilon.
    double covert_power_threshold(const CovertnessSpec &spec);

    /// sum_b |h_W^H F_A f_b|^2.
    double received_covert_power(const CVector &willie_channel, const HybridBeamformer &bf);

    double optimal_threshold(double f_co, const CovertnessSpec &spec);

    /// Minimum detection error probability at the optimal threshold. Throws for rho == 1.
    double min_dep(double f_co, const CovertnessSpec &spec);

    struct DepEstimate
    {
        double dep = 0.0;
        double false_alarm = 0.0;
        double miss = 0.0;
        std::size_t trials = 0;
    };

    /// Energy detector at the optimal threshold with the noise power drawn per trial. FA and MD
    /// are estimated on the same noise draws.
    DepEstimate dep_monte_carlo(double f_co, const CovertnessSpec &spec, std::size_t trials, std::uint64_t seed);

    /// Gamma_W(eps) = sigma~^2 (rho^(2(1-eps)) - 1) / (rho N g_W^2).
    double covert_margin(const CovertnessSpec &spec, std::size_t num_antennas, double willie_gain);

    struct CovertCheck
    {
        bool pass = false;
        double leakage = 0.0; // sum_b P_b chi_b^2
        double margin = 0.0;  // Gamma_W(eps)
    };

    CovertCheck covert_leakage_check(std::span<const double> chis, std::span<const double> powers_w,
                                        double willie_gain, std::size_t num_antennas, const CovertnessSpec &spec);

    /// sqrt(Gamma / P).
    double correlation_threshold(double margin, double power_w);

    /// sqrt((Gamma - P1 chi_w1^2) / P2), clipped at 0 when the first Bob alone breaks the margin.
    double correlation_threshold_residual(double margin, double p1_w, double chi_w1, double p2_w);

    enum class RegionKind
    {
        Angle,
        Range
    };

    /// Covert set = complement of the open band (excluded_lo, excluded_hi). An empty band means
    /// every location is covert.
    struct CovertRegion
    {
        RegionKind kind = RegionKind::Angle;
        double excluded_lo = 0.0;
        double excluded_hi = 0.0;
        double threshold = 0.0;
        bool empty = false;
        double pi_value = 0.0; // range regions only
        double beta = 0.0;     // range regions only

        bool is_covert(double x) const { return empty || x <= excluded_lo || x >= excluded_hi; }
    };

    std::string to_string(RegionKind kind);

    /// Far-field beam directions whose gain towards the warden stays below delta. Crossings are
    /// located on the grid of beam_gain_scan() and refined by linear interpolation; only the
    /// outermost two are kept.
    CovertRegion covert_angle_region(const ArrayLayout &layout, const PolarLocation &willie, double delta,
                                     double grid_step = kDefaultAngleStep);

    /// Smallest beta where the right-running maximum of |G| drops to delta.
    double invert_fresnel_envelope(double delta, double grid_step = 1e-3);

    /// Ranges along the warden's direction whose fixed-array correlation stays below delta.
    CovertRegion covert_range_region(const PolarLocation &willie, double delta, std::size_t num_antennas,
                                     double spacing_m, double wavelength_m);

    enum class CovertCase
    {
        NoLeakage = 1,
        LeakageFarBob = 2,
        LeakageNearBob = 3,
        LeakageBoth = 4
    };

    /// Angle tolerance for "same direction" tests, half a beamwidth.
    inline double same_angle_tolerance(std::size_t num_antennas) { return 0.5 / double(num_antennas); }

    CovertCase classify_case(const PolarLocation &bob1, const PolarLocation &bob2, const PolarLocation &willie,
                             const AngularSupport &support, std::size_t num_antennas);
}

#endif
