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

#ifndef MFCOVERT_SCENARIO_HPP
#define MFCOVERT_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfcovert/beamforming.hpp"
#include "mfcovert/channel.hpp"
#include "mfcovert/covertness.hpp"
#include "mfcovert/geometry.hpp"
#include "mfcovert/placement.hpp"

namespace mfcovert
{
    /// Uniform draw on [lo, hi]; lo == hi is a fixed value.
    struct UniformRange
    {
        double lo = 0.0;
        double hi = 0.0;
    };

    struct NodeSpec
    {
        UniformRange theta;
        UniformRange range_m;
        std::size_t nlos_paths = 4;
    };

    struct Scenario
    {
        std::size_t num_antennas = 256;
        std::size_t num_subarrays = 8;
        double frequency_hz = 30e9;
        std::optional<Interval> region_m; // default [-(N-1)d, (N-1)d]

        std::vector<NodeSpec> bobs;
        std::vector<NodeSpec> willies;

        double power_w = 1.0;
        double bob_noise_w = 1e-12;
        CovertnessSpec covertness;
        double rician_kappa = 10.0; // linear; +inf gives LoS-only channels
        double nlos_min_range_m = 5.0;

        std::size_t trials = 100;
        std::uint64_t seed = 1;
        DEConfig de;
        SCAConfig sca;

        double wavelength() const { return wavelength_from_frequency(frequency_hz); }
        Interval movement_region() const;
        ArrayLayout fixed_layout() const;
        void validate() const; // throws std::invalid_argument
    };

    /// Default two-Bob, two-Willie setup of the reference simulations.
    Scenario default_scenario();

    /// Strict JSON reader: unknown keys and wrong types throw std::invalid_argument.
    Scenario scenario_from_json(const std::string &text);
    Scenario load_scenario(const std::string &path);
    std::string scenario_to_json(const Scenario &s);

    struct NodeRealization
    {
        PathComponent los;
        std::vector<PathComponent> nlos;
    };

    /// One random draw of user locations and path gains. Channels are rebuilt for any layout.
    struct Realization
    {
        std::size_t trial = 0;
        std::vector<NodeRealization> bobs;
        std::vector<NodeRealization> willies;
        std::vector<double> weights; // range-proportional, sum 1

        std::vector<PolarLocation> bob_locations() const;
        std::vector<PolarLocation> willie_locations() const;
        std::vector<ChannelVector> bob_channels(std::span<const double> positions, double wavelength_m) const;
        std::vector<ChannelVector> willie_channels(std::span<const double> positions, double wavelength_m) const;
    };

    /// Deterministic in (scenario.seed, trial).
    Realization sample_scenario(const Scenario &s, std::size_t trial);

    /// LoS amplitude sqrt(kappa / (kappa + 1)) sqrt(hbar) / r with hbar = (lambda / 4 pi)^2.
    double los_amplitude(double range_m, double wavelength_m, double kappa);
}

#endif
