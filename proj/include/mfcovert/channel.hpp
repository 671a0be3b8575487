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

#ifndef MFCOVERT_CHANNEL_HPP
#define MFCOVERT_CHANNEL_HPP

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "mfcovert/common.hpp"
#include "mfcovert/geometry.hpp"

namespace mfcovert
{
    /// Receiver or scatterer location as seen from the array center.
    /// theta is the sine of the physical angle; range_m may be +inf for a far-field direction.
    struct PolarLocation
    {
        double theta = 0.0;
        double range_m = std::numeric_limits<double>::infinity();

        /// Throws std::invalid_argument unless theta in [-1, 1] and range > 0.
        void validate() const;
    };

    inline PolarLocation far_field(double theta) { return {theta, std::numeric_limits<double>::infinity()}; }

    struct PathComponent
    {
        cd gain{0.0, 0.0};
        PolarLocation location;
    };

    enum class Receiver
    {
        Bob,
        Willie
    };

    /// Column vector h such that the received baseband sample is h^H x.
    struct ChannelVector
    {
        CVector coefficients;
        Receiver owner = Receiver::Bob;
        std::size_t index = 0;
    };

    struct AngularSupport
    {
        double theta_lo = 0.0;
        double theta_hi = 0.0;
        double mu_db = 0.0;
        double grid_step = 0.0;
        double peak_gain = 0.0;
        double peak_theta = 0.0;
        std::size_t fragments = 0; // number of disjoint grid runs above the level

        bool contains(double theta) const { return theta >= theta_lo && theta <= theta_hi; }
    };

    inline constexpr double kEffectiveRayleighFactor = 0.37;
    inline constexpr double kDefaultAngleStep = 1e-4;

    CVector steering_vector(const ArrayLayout &layout, const PolarLocation &loc);
    CVector steering_vector(std::span<const double> positions, double wavelength_m, const PolarLocation &loc);
    CVector far_field_steering(const ArrayLayout &layout, double theta);

    double classic_rayleigh_distance(double aperture_m, double wavelength_m);
    double effective_rayleigh_distance(double aperture_m, double theta, double wavelength_m);

    /// LoS path plus L NLoS paths with the sqrt(N/L) scattering weight (no NLoS term when L = 0).
    ChannelVector synth_channel(const ArrayLayout &layout, const PathComponent &los,
                                std::span<const PathComponent> nlos, Receiver owner = Receiver::Bob,
                                std::size_t index = 0);
    ChannelVector synth_channel(std::span<const double> positions, double wavelength_m, const PathComponent &los,
                                std::span<const PathComponent> nlos, Receiver owner = Receiver::Bob,
                                std::size_t index = 0);

    /// |a^H(loc_i) a(loc_j)| by summation over every antenna.
    double correlation(const ArrayLayout &layout, const PolarLocation &loc_i, const PolarLocation &loc_j);
    double correlation(std::span<const double> positions, double wavelength_m, const PolarLocation &loc_i,
                       const PolarLocation &loc_j);

    struct ModularCorrelation
    {
        double value = 0.0;
        bool within_validity = true; // both ranges exceed 2 (Ntilde d)^2 / lambda
    };

    /// Range beyond which the per-subarray quadratic phase can be dropped, 2 (Ntilde d)^2 / lambda.
    double modular_validity_range(const ArrayLayout &layout);

    /// Subarray-level (Dirichlet kernel) approximation of correlation(); O(M) instead of O(N).
    ModularCorrelation correlation_modular_approx(const ArrayLayout &layout, const PolarLocation &loc_i,
                                                  const PolarLocation &loc_j);

    /// Dirichlet ratio sin(Ntilde pi x / 2) / sin(pi x / 2) with its limit at x in 2Z.
    double dirichlet_ratio(std::size_t n_sub, double x);

    /// Fresnel argument for two equal-angle locations seen by the contiguous array.
    double fixed_range_beta(std::size_t num_antennas, double spacing_m, double wavelength_m, double theta,
                            double r_i, double r_j);

    /// |G(beta)| approximation of the equal-angle correlation for the contiguous array.
    /// Throws std::invalid_argument for non-uniform layouts.
    double correlation_fixed_range_approx(const ArrayLayout &layout, double theta, double r_i, double r_j);

    /// Normalized gain |a^H(target) w(theta)| of the far-field beam w(theta).
    double beam_gain(const ArrayLayout &layout, double beam_theta, const PolarLocation &target);

    /// Grid theta_k = -1 + k * step over [-1, 1]; the last point is clipped to 1.
    std::vector<double> angle_grid(double step);

    /// beam_gain() over angle_grid(step), using per-antenna phase rotation between grid points.
    std::vector<double> beam_gain_scan(const ArrayLayout &layout, const PolarLocation &target, double step);

    AngularSupport energy_spread_support(const ArrayLayout &layout, const PolarLocation &source, double mu_db,
                                         double grid_step = kDefaultAngleStep);

    /// Debug dump: antenna index, real, imag.
    void write_channel_csv(std::ostream &os, const ChannelVector &channel);
}

#endif
